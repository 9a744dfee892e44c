//! Analyticity of the characteristic function and moment (in)determinacy of
//! `PL(α, β)`, plus the quantities used to certify the verdicts: the growth rate
//! of the moment sequence, the moment-ratio bound and Lin's function.

use std::fmt;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::distribution::PowerLindley;
use crate::error::{domain, Result};
use crate::numerics::{find_root, RootBracket};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CfClass {
    /// Entire function (α > 1).
    Entire,
    /// Analytic on a strip around the real axis (α = 1).
    AnalyticOnInterval,
    /// Not analytic at the origin (α < 1).
    NotAnalyticAtZero,
}

/// Interval of real `t` on which `E[e^{tX}]` is finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MgfInterval<T> {
    /// Only `t <= 0`, i.e. no open neighbourhood of zero.
    Empty,
    /// `(-radius, radius)`.
    Symmetric(T),
    WholeLine,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalyticityReport<T> {
    pub cf_class: CfClass,
    /// Order `ρ` of the entire characteristic function.
    pub order: Option<T>,
    /// Type `σ` of the entire characteristic function.
    #[serde(rename = "type")]
    pub cf_type: Option<T>,
    pub mgf_interval: MgfInterval<T>,
    pub determinate: bool,
    pub heavy_tailed: bool,
}

/// Classifies `PL(α, β)`:
///
/// | α          | characteristic function                     | MGF        | moments       |
/// |------------|---------------------------------------------|------------|---------------|
/// | α > 1      | entire, ρ = α/(α−1), σ = ((α−1)/α)(αβ)^{−1/(α−1)} | ℝ    | determinate   |
/// | α = 1      | analytic for \|t\| < β                       | (−β, β)    | determinate   |
/// | ½ ≤ α < 1  | not analytic at 0                           | none       | determinate   |
/// | α < ½      | not analytic at 0                           | none       | indeterminate |
pub fn analyze<T: Real>(p: &PowerLindley<T>) -> AnalyticityReport<T> {
    let a = p.alpha();
    let b = p.beta();
    let one = T::one();
    let determinate = a >= T::lit(0.5);
    if a > one {
        let excess = a - one;
        AnalyticityReport {
            cf_class: CfClass::Entire,
            order: Some(a / excess),
            cf_type: Some(excess / a * (a * b).powf(-excess.recip())),
            mgf_interval: MgfInterval::WholeLine,
            determinate,
            heavy_tailed: false,
        }
    } else if a == one {
        AnalyticityReport {
            cf_class: CfClass::AnalyticOnInterval,
            order: None,
            cf_type: None,
            mgf_interval: MgfInterval::Symmetric(b),
            determinate,
            heavy_tailed: false,
        }
    } else {
        AnalyticityReport {
            cf_class: CfClass::NotAnalyticAtZero,
            order: None,
            cf_type: None,
            mgf_interval: MgfInterval::Empty,
            determinate,
            heavy_tailed: true,
        }
    }
}

impl<T: Real> fmt::Display for AnalyticityReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.cf_class {
            CfClass::Entire => {
                write!(f, "entire")?;
                if let Some(rho) = self.order {
                    write!(f, ", order {}", fmt_num(rho))?;
                }
                if let Some(sigma) = self.cf_type {
                    write!(f, ", type {}", fmt_num(sigma))?;
                }
            }
            CfClass::AnalyticOnInterval => match self.mgf_interval {
                MgfInterval::Symmetric(r) => write!(f, "analytic on (-{0}, {0})", fmt_num(r))?,
                _ => write!(f, "analytic on an interval")?,
            },
            CfClass::NotAnalyticAtZero => write!(f, "not analytic at 0")?,
        }
        let verdict = if self.determinate {
            "moment-determinate"
        } else {
            "moment-indeterminate"
        };
        write!(f, ", {verdict}")
    }
}

impl<T: Real> fmt::Display for MgfInterval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MgfInterval::Empty => write!(f, "empty"),
            MgfInterval::Symmetric(r) => write!(f, "(-{0}, {0})", fmt_num(*r)),
            MgfInterval::WholeLine => write!(f, "(-inf, inf)"),
        }
    }
}

fn fmt_num<T: Real>(x: T) -> String {
    let v = x.as_f64();
    let s = format!("{:.10}", v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    s.to_string()
}

/// Characteristic function of Lindley(β): `β²(β+1−it) / ((β+1)(β−it)²)`.
pub fn lindley_cf<T: Real>(beta: T, t: T) -> Result<Complex<T>> {
    if !(beta > T::zero()) {
        return domain("beta must be positive", beta.as_f64());
    }
    let b = Complex::new(beta, T::zero());
    let it = Complex::new(T::zero(), t);
    let one = Complex::new(T::one(), T::zero());
    let denom = (b + one) * (b - it) * (b - it);
    Ok(b * b * (b + one - it) / denom)
}

/// Lin's function `L(x) = −x f′(x)/f(x) = −(α−1) − αx^α/(1+x^α) + αβx^α`.
pub fn lin_function<T: Real>(p: &PowerLindley<T>, x: T) -> Result<T> {
    if !(x > T::zero()) {
        return domain("lin_function requires x > 0", x.as_f64());
    }
    let a = p.alpha();
    let y = x.powf(a);
    Ok(-(a - T::one()) - a * y / (T::one() + y) + a * p.beta() * y)
}

/// `L′(x) = α² x^{α−1} (β − (1+x^α)^{−2})`.
pub fn lin_derivative<T: Real>(p: &PowerLindley<T>, x: T) -> Result<T> {
    if !(x > T::zero()) {
        return domain("lin_derivative requires x > 0", x.as_f64());
    }
    let a = p.alpha();
    let y = x.powf(a);
    let s = T::one() + y;
    Ok(a * a * x.powf(a - T::one()) * (p.beta() - (s * s).recip()))
}

/// Smallest `x` beyond which `L(x) > level`, assuming `L` is eventually increasing.
///
/// Searches upward in powers of two from 1 and then bisects.
pub fn lin_threshold<T: Real>(p: &PowerLindley<T>, level: T) -> Result<T> {
    let g = |x: T| lin_function(p, x).map(|l| l - level).unwrap_or(T::nan());
    let two = T::lit(2.0);
    let mut hi = T::one();
    while g(hi) <= T::zero() {
        hi = hi * two;
        if !hi.is_finite() {
            return domain("lin function never exceeds the level", level.as_f64());
        }
    }
    let lo = if hi > T::one() { hi / two } else { T::min_positive_value() };
    if g(lo) > T::zero() {
        return Ok(lo);
    }
    find_root(g, RootBracket::new(lo, hi).with_tol(hi * T::attainable(1e-12, 8.0)))
}

/// Least-squares coefficient of `k ln k` in the fit
/// `ln m_k ≈ c0 + c1 k + c2 k ln k` over `k ∈ [K/2, K]`.
///
/// Stirling's formula gives `ln m_k = (1/α) k ln k + O(k)`, so `c2 → 1/α`;
/// the linear regressor absorbs the `O(k)` term, which otherwise biases the
/// slope by roughly `ln(1/(αβ)) − 1` over `ln K`.
pub fn moment_growth_exponent<T: Real>(p: &PowerLindley<T>, k_max: u32) -> Result<T> {
    if k_max < 10 {
        return domain("moment_growth_exponent requires K >= 10", k_max as f64);
    }
    let rows: Vec<[f64; 3]> = (k_max / 2..=k_max)
        .map(|k| {
            let kf = k as f64;
            [kf, kf * kf.ln(), p.log_moment(k).as_f64()]
        })
        .collect();
    let coef = least_squares_3(&rows);
    Ok(T::lit(coef[2]))
}

// Ordinary least squares for y ≈ c0 + c1 u + c2 v, via centred normal equations.
fn least_squares_3(rows: &[[f64; 3]]) -> [f64; 3] {
    let n = rows.len() as f64;
    let mean = |i: usize| rows.iter().map(|r| r[i]).sum::<f64>() / n;
    let (mu, mv, my) = (mean(0), mean(1), mean(2));
    let (mut suu, mut svv, mut suv, mut suy, mut svy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for r in rows {
        let (u, v, y) = (r[0] - mu, r[1] - mv, r[2] - my);
        suu += u * u;
        svv += v * v;
        suv += u * v;
        suy += u * y;
        svy += v * y;
    }
    let det = suu * svv - suv * suv;
    let c1 = (suy * svv - svy * suv) / det;
    let c2 = (svy * suu - suy * suv) / det;
    [my - c1 * mu - c2 * mv, c1, c2]
}

/// `m_{k+1} / (m_k k²)` for `k = 1..=k_max`, from the log moments.
///
/// Boundedness of this sequence is the moment-ratio sufficient condition for
/// determinacy on the half line.
pub fn moment_ratio_scan<T: Real>(p: &PowerLindley<T>, k_max: u32) -> Vec<(u32, T)> {
    (1..=k_max)
        .map(|k| {
            let kf = T::from_u32(k).expect("u32 representable");
            let log_ratio = p.log_moment(k + 1) - p.log_moment(k) - T::lit(2.0) * kf.ln();
            (k, log_ratio.exp())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn pl(a: f64, b: f64) -> PowerLindley<f64> {
        PowerLindley::new(a, b).unwrap()
    }

    #[test]
    fn entire_regime() {
        let r = analyze(&pl(2.0, 1.0));
        assert_eq!(r.cf_class, CfClass::Entire);
        assert_relative_eq!(r.order.unwrap(), 2.0);
        assert_relative_eq!(r.cf_type.unwrap(), 0.25);
        assert_eq!(r.mgf_interval, MgfInterval::WholeLine);
        assert!(r.determinate && !r.heavy_tailed);
        assert_eq!(r.to_string(), "entire, order 2, type 0.25, moment-determinate");
    }

    #[test]
    fn lindley_regime() {
        let r = analyze(&pl(1.0, 3.0));
        assert_eq!(r.cf_class, CfClass::AnalyticOnInterval);
        assert_eq!(r.mgf_interval, MgfInterval::Symmetric(3.0));
        assert!(r.determinate && r.order.is_none());
        assert_eq!(r.to_string(), "analytic on (-3, 3), moment-determinate");
    }

    #[test]
    fn heavy_tailed_regimes() {
        let boundary = analyze(&pl(0.5, 1.0));
        assert!(boundary.determinate && boundary.heavy_tailed);
        assert_eq!(boundary.mgf_interval, MgfInterval::Empty);
        let r = analyze(&pl(0.3, 1.0));
        assert!(!r.determinate);
        assert_eq!(r.to_string(), "not analytic at 0, moment-indeterminate");
    }

    #[test]
    fn lindley_cf_values() {
        assert_eq!(lindley_cf(1.0, 0.0).unwrap(), Complex::new(1.0, 0.0));
        // (2 - i) / (2 (1 - i)^2) = (2 - i)/(-4i) = 0.25 + 0.5i
        let v = lindley_cf(1.0, 1.0).unwrap();
        assert_relative_eq!(v.re, 0.25, max_relative = 1e-15);
        assert_relative_eq!(v.im, 0.5, max_relative = 1e-15);
        assert!(v.norm() <= 1.0);
        let (a, b) = (lindley_cf(1.7, 0.7).unwrap(), lindley_cf(1.7, -0.7).unwrap());
        assert_relative_eq!(a.conj().re, b.re, max_relative = 1e-15);
        assert_relative_eq!(a.conj().im, b.im, max_relative = 1e-15);
        assert!(lindley_cf(0.0, 1.0).is_err());
    }

    #[test]
    fn lin_function_limits() {
        assert!(lin_function(&pl(1.0, 1.0), 1e-12).unwrap().abs() < 1e-10);
        let p = pl(0.3, 1.0);
        let x = 1e40_f64;
        let dominant = 0.3 * x.powf(0.3);
        assert!((lin_function(&p, x).unwrap() - dominant).abs() <= 1e-9 * dominant);
        assert!(lin_function(&p, 0.0).is_err());
        assert!(lin_derivative(&p, -1.0).is_err());
    }

    #[test]
    fn lin_threshold_crossing() {
        let p = pl(0.3, 1.0);
        let x = lin_threshold(&p, 1000.0).unwrap();
        assert!(lin_function(&p, x * 1.000_001).unwrap() > 1000.0);
        assert!(lin_function(&p, x * 0.999_999).unwrap() < 1000.0);
    }

    #[test]
    fn growth_exponent_rejects_small_k() {
        assert!(moment_growth_exponent(&pl(0.5, 1.0), 9).is_err());
    }

    #[test]
    fn least_squares_recovers_exact_plane() {
        let rows: Vec<[f64; 3]> = (1..20)
            .map(|k| {
                let k = k as f64;
                [k, k * k.ln(), 1.5 - 0.3 * k + 2.5 * k * k.ln()]
            })
            .collect();
        let c = least_squares_3(&rows);
        assert_relative_eq!(c[0], 1.5, max_relative = 1e-8);
        assert_relative_eq!(c[1], -0.3, max_relative = 1e-8);
        assert_relative_eq!(c[2], 2.5, max_relative = 1e-10);
    }
}
