//! Numerical kernels shared by the rest of the crate.

mod gamma;
pub mod quadrature;
mod roots;
mod simplex;

pub use gamma::log_gamma;
pub(crate) use gamma::log_gamma_unchecked;
pub use quadrature::{
    damping_cutoff, integrate, integrate_semi_infinite, Integral, Oscillation, QuadratureSpec,
};
pub use roots::{find_root, RootBracket};
pub use simplex::{minimize_2d, Minimum, SimplexOptions, Termination};
