use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::numerics::{find_root, log_gamma_unchecked, RootBracket};
use crate::scalar::Real;

/// Power Lindley distribution `PL(α, β)`: the law of `X^{1/α}` for `X` Lindley(β).
///
/// Density `αβ²/(β+1) (1 + x^α) x^{α-1} e^{-βx^α}` on `x > 0`. With `α = 1` this is
/// the Lindley distribution itself.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLindley<T> {
    alpha: T,
    beta: T,
}

impl<T: Real> PowerLindley<T> {
    pub fn new(alpha: T, beta: T) -> Result<Self> {
        if !(alpha > T::zero() && alpha.is_finite()) {
            return domain("alpha must be positive and finite", alpha.as_f64());
        }
        if !(beta > T::zero() && beta.is_finite()) {
            return domain("beta must be positive and finite", beta.as_f64());
        }
        Ok(Self { alpha, beta })
    }

    /// The Lindley distribution, `PL(1, β)`.
    pub fn lindley(beta: T) -> Result<Self> {
        Self::new(T::one(), beta)
    }

    /// Shape `α`.
    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// Rate `β`.
    pub fn beta(&self) -> T {
        self.beta
    }

    /// Weight of the exponential component in the Lindley mixture, `β/(β+1)`.
    pub fn mixing_proportion(&self) -> T {
        self.beta / (self.beta + T::one())
    }

    fn log_norm(&self) -> T {
        self.alpha.ln() + T::lit(2.0) * self.beta.ln() - self.beta.ln_1p()
    }

    /// Log-density as a function of `ln x`; valid for every finite `ln x`.
    pub(crate) fn log_pdf_at_log(&self, log_x: T) -> T {
        let y = (self.alpha * log_x).exp();
        self.log_norm() + y.ln_1p() + (self.alpha - T::one()) * log_x - self.beta * y
    }

    pub fn pdf(&self, x: T) -> T {
        if !(x > T::zero()) {
            return T::zero();
        }
        if x.is_infinite() {
            return T::zero();
        }
        self.log_pdf_at_log(x.ln()).exp()
    }

    /// `ln pdf(x)`; stays finite where the density itself underflows.
    pub fn log_pdf(&self, x: T) -> Result<T> {
        if !(x > T::zero()) {
            return domain("log_pdf requires x > 0", x.as_f64());
        }
        Ok(self.log_pdf_at_log(x.ln()))
    }

    /// `ln S(x) = ln(1 + βx^α/(β+1)) - βx^α` for `x > 0`.
    pub(crate) fn log_survival_at_log(&self, log_x: T) -> T {
        let y = (self.alpha * log_x).exp();
        (self.mixing_proportion() * y).ln_1p() - self.beta * y
    }

    /// Survival function `S(x) = (1 + βx^α/(β+1)) e^{-βx^α}`; 1 for `x <= 0`.
    pub fn survival(&self, x: T) -> T {
        if !(x > T::zero()) {
            return T::one();
        }
        self.log_survival_at_log(x.ln()).exp()
    }

    /// `1 - S(x)`, evaluated without cancellation for small `x`.
    pub fn cdf(&self, x: T) -> T {
        if !(x > T::zero()) {
            return T::zero();
        }
        let y = x.powf(self.alpha);
        let by = self.beta * y;
        // 1 - (1 + cy)e^{-by} = -expm1(-by) - cy e^{-by}
        let v = -(-by).exp_m1() - self.mixing_proportion() * y * (-by).exp();
        v.max(T::zero()).min(T::one())
    }

    /// Hazard rate `pdf / S`, computed from the log forms.
    pub fn hazard(&self, x: T) -> Result<T> {
        if !(x > T::zero()) {
            return domain("hazard requires x > 0", x.as_f64());
        }
        let lx = x.ln();
        Ok((self.log_pdf_at_log(lx) - self.log_survival_at_log(lx)).exp())
    }

    /// Quantile function by bracketed inversion of the survival function.
    ///
    /// The bracket is grown geometrically until it straddles the root, then
    /// narrowed to a width of at most `1e-12` in absolute terms and relative to
    /// the root.
    pub fn quantile(&self, u: T) -> Result<T> {
        if !(u > T::zero() && u < T::one()) {
            return domain("quantile requires 0 < u < 1", u.as_f64());
        }
        let target_survival = T::one() - u;
        // Increasing in x; the cdf form keeps the lower tail accurate.
        let g = |x: T| {
            if u <= T::lit(0.5) {
                self.cdf(x) - u
            } else {
                target_survival - self.survival(x)
            }
        };
        let two = T::lit(2.0);
        let mut hi = T::one();
        while g(hi) < T::zero() {
            hi = hi * two;
            if !hi.is_finite() {
                return domain("quantile bracket overflowed", u.as_f64());
            }
        }
        let mut lo = hi / two;
        while g(lo) > T::zero() {
            hi = lo;
            lo = lo / two;
            if lo == T::zero() {
                return Ok(T::min_positive_value());
            }
        }
        let tol = T::attainable(1e-12, 4.0) * lo.min(T::one());
        let tol = tol.max(T::min_positive_value());
        find_root(g, RootBracket::new(lo, hi).with_tol(tol))
    }

    pub fn median(&self) -> T {
        self.quantile(T::lit(0.5)).expect("0.5 is inside (0, 1)")
    }

    /// `ln m_k` with `m_k = k Γ(k/α) [α(β+1) + k] / (α² β^{k/α} (β+1))`; `ln m_0 = 0`.
    pub fn log_moment(&self, k: u32) -> T {
        if k == 0 {
            return T::zero();
        }
        let kf = T::from_u32(k).expect("u32 representable");
        let ratio = kf / self.alpha;
        kf.ln() + log_gamma_unchecked(ratio) + (self.alpha * (self.beta + T::one()) + kf).ln()
            - T::lit(2.0) * self.alpha.ln()
            - ratio * self.beta.ln()
            - self.beta.ln_1p()
    }

    /// Raw moment `E[X^k]`; `m_0 = 1`.
    pub fn moment(&self, k: u32) -> Result<T> {
        let log_m = self.log_moment(k);
        let m = log_m.exp();
        if m.is_finite() {
            Ok(m)
        } else {
            Err(Error::MomentOverflow {
                k,
                log_moment: log_m.as_f64(),
            })
        }
    }

    pub fn mean(&self) -> T {
        self.log_moment(1).exp()
    }

    pub fn variance(&self) -> Result<T> {
        let m1 = self.moment(1)?;
        let m2 = self.moment(2)?;
        Ok(m2 - m1 * m1)
    }
}
