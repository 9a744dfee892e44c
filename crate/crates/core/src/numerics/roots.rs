use crate::error::{domain, Error, Result};
use crate::scalar::Real;

const MAX_ITERATIONS: usize = 4000;

/// Interval known to contain a sign change of the target function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBracket<T> {
    pub lo: T,
    pub hi: T,
    /// Terminal bracket width.
    pub tol: T,
}

impl<T: Real> RootBracket<T> {
    pub fn new(lo: T, hi: T) -> Self {
        Self {
            lo,
            hi,
            tol: T::attainable(1e-12, 4.0),
        }
    }

    pub fn with_tol(mut self, tol: T) -> Self {
        self.tol = tol;
        self
    }
}

/// Root of `f` inside `bracket`, narrowed until the bracket is no wider than `tol`.
///
/// Regula falsi with the Illinois weighting, falling back to bisection whenever
/// two consecutive steps fail to halve the bracket.
pub fn find_root<T: Real, F: Fn(T) -> T>(f: F, bracket: RootBracket<T>) -> Result<T> {
    let RootBracket { mut lo, mut hi, tol } = bracket;
    if !(lo < hi) {
        return domain("bracket requires lo < hi", (hi - lo).as_f64());
    }
    if !(tol > T::zero()) {
        return domain("bracket tolerance must be positive", tol.as_f64());
    }
    let mut f_lo = f(lo);
    let mut f_hi = f(hi);
    if f_lo == T::zero() {
        return Ok(lo);
    }
    if f_hi == T::zero() {
        return Ok(hi);
    }
    if !(f_lo.is_finite() && f_hi.is_finite()) || f_lo.signum() == f_hi.signum() {
        return Err(Error::Bracket {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
            f_lo: f_lo.as_f64(),
            f_hi: f_hi.as_f64(),
        });
    }

    let half = T::lit(0.5);
    let mut width = hi - lo;
    let mut stale = 0usize;
    // Which end was retained by the previous step: -1 lo, +1 hi.
    let mut retained = 0i8;
    for _ in 0..MAX_ITERATIONS {
        if hi - lo <= tol {
            break;
        }
        let mid = half * (lo + hi);
        let x = if stale >= 2 {
            stale = 0;
            mid
        } else {
            let s = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
            if s > lo && s < hi {
                s
            } else {
                mid
            }
        };
        if !(x > lo && x < hi) {
            // Bracket endpoints are adjacent floats.
            break;
        }
        let fx = f(x);
        if fx == T::zero() {
            return Ok(x);
        }
        if fx.signum() == f_lo.signum() {
            lo = x;
            f_lo = fx;
            if retained == 1 {
                f_hi = f_hi * half;
            }
            retained = 1;
        } else {
            hi = x;
            f_hi = fx;
            if retained == -1 {
                f_lo = f_lo * half;
            }
            retained = -1;
        }
        let new_width = hi - lo;
        if new_width > width * half {
            stale += 1;
        } else {
            stale = 0;
        }
        width = new_width;
    }
    Ok(half * (lo + hi))
}
