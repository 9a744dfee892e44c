use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::numerics::log_gamma_unchecked;
use crate::scalar::Real;

/// Two-parameter Weibull law in the shape–scale convention:
/// density `(k/λ)(x/λ)^{k-1} e^{-(x/λ)^k}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Weibull<T> {
    shape: T,
    scale: T,
}

impl<T: Real> Weibull<T> {
    pub fn new(shape: T, scale: T) -> Result<Self> {
        if !(shape > T::zero() && shape.is_finite()) {
            return domain("weibull shape must be positive and finite", shape.as_f64());
        }
        if !(scale > T::zero() && scale.is_finite()) {
            return domain("weibull scale must be positive and finite", scale.as_f64());
        }
        Ok(Self { shape, scale })
    }

    pub fn shape(&self) -> T {
        self.shape
    }

    pub fn scale(&self) -> T {
        self.scale
    }

    pub fn pdf(&self, x: T) -> T {
        if !(x > T::zero()) || x.is_infinite() {
            return T::zero();
        }
        let z = x / self.scale;
        let log = (self.shape / self.scale).ln() + (self.shape - T::one()) * z.ln() - z.powf(self.shape);
        log.exp()
    }

    pub fn cdf(&self, x: T) -> T {
        if !(x > T::zero()) {
            return T::zero();
        }
        -(-(x / self.scale).powf(self.shape)).exp_m1()
    }

    pub fn survival(&self, x: T) -> T {
        if !(x > T::zero()) {
            return T::one();
        }
        (-(x / self.scale).powf(self.shape)).exp()
    }

    /// `λ Γ(1 + 1/k)`
    pub fn mean(&self) -> T {
        self.scale * log_gamma_unchecked(T::one() + self.shape.recip()).exp()
    }

    /// `λ (ln 2)^{1/k}`
    pub fn median(&self) -> T {
        self.scale * T::LN_2().powf(self.shape.recip())
    }
}
