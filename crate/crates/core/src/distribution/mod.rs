//! The power Lindley distribution and the Weibull baseline it is compared against.

mod power_lindley;
mod sampling;
mod weibull;

pub use power_lindley::PowerLindley;
pub use sampling::RandomSource;
pub use weibull::Weibull;
