use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {what} (got {value})")]
    Domain { what: &'static str, value: f64 },

    /// The supplied interval does not bracket a sign change.
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    Bracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    /// Quadrature failed to meet its tolerance within the subdivision budget.
    #[error("quadrature did not converge: estimate {estimate}, error bound {error_bound}")]
    Accuracy { estimate: f64, error_bound: f64 },

    /// The derivative-free minimizer could not make progress.
    #[error("optimization failed: {0}")]
    Optimization(String),

    /// `m_k` overflows the scalar type; use the logarithmic moment instead.
    #[error("moment of order {k} overflows (ln m_k = {log_moment}); use log_moment")]
    MomentOverflow { k: u32, log_moment: f64 },

    /// The perturbation could not be normalized to unit supremum.
    #[error("normalization failed: {0}")]
    Normalization(String),

    /// A frequency table violates its invariants.
    #[error("invalid frequency table: {0}")]
    Table(String),

    /// Every start of a fit failed.
    #[error("fit failed from every start: {0}")]
    Fit(String),
}

pub type Result<V> = std::result::Result<V, Error>;

pub(crate) fn domain<R>(what: &'static str, value: f64) -> Result<R> {
    Err(Error::Domain {
        what,
        value,
    })
}
