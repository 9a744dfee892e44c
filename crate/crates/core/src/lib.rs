//! The power Lindley distribution `PL(α, β)`: evaluation, sampling, closed-form
//! moments, moment-determinacy analysis, Stieltjes classes of equal-moment
//! densities, and least-squares fitting of frequency tables against a Weibull
//! baseline.
//!
//! Everything is generic over the scalar type ([`Real`], implemented for `f32`
//! and `f64`); the aliases below fix it to `f64`.

// `!(x > 0)` is used deliberately so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod distribution;
pub mod error;
pub mod fitting;
pub mod moment_analysis;
pub mod numerics;
pub mod scalar;
pub mod stieltjes;

pub use distribution::{PowerLindley, RandomSource, Weibull};
pub use error::{Error, Result};
pub use scalar::Real;

pub type PowerLindleyF64 = PowerLindley<f64>;
pub type PowerLindleyF32 = PowerLindley<f32>;
pub type WeibullF64 = Weibull<f64>;
pub type WeibullF32 = Weibull<f32>;
pub type FrequencyTableF64 = fitting::FrequencyTable<f64>;
pub type FitReportF64 = fitting::FitReport<f64>;
pub type AnalyticityReportF64 = moment_analysis::AnalyticityReport<f64>;
pub type PerturbationSpecF64 = stieltjes::PerturbationSpec<f64>;
pub type StieltjesMemberF64 = stieltjes::StieltjesMember<f64>;
