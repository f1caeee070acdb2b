use thiserror::Error;

/// Errors produced by the elliptic kernels, the mean families and the
/// verification machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("modulus must lie in [0, 1], got {0}")]
    InvalidModulus(f64),

    #[error("mean arguments must be positive and finite, got ({a}, {b})")]
    InvalidPair { a: f64, b: f64 },

    #[error("complete elliptic integral of the first kind diverges at r = 1")]
    Divergent,

    #[error("AGM iteration did not converge for r = {0}")]
    AgmNotConverged(f64),

    #[error("quadrature did not reach tolerance {tolerance:e} (estimate {estimate:e} after {intervals} intervals)")]
    QuadratureNotConverged {
        tolerance: f64,
        estimate: f64,
        intervals: usize,
    },

    #[error("{name} = {value} is outside its domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("degenerate input: {0}")]
    Degenerate(&'static str),

    #[error("no root of {function} in the search bracket: {reason}")]
    NoRoot {
        function: &'static str,
        reason: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown inequality id `{0}`")]
    UnknownInequality(String),

    #[error("cannot parse mean kind `{0}`")]
    UnknownMean(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Rejects `value` unless it lies in the closed interval `[lo, hi]`.
pub(crate) fn check_closed(
    name: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
    domain: &'static str,
) -> Result<()> {
    if value >= lo && value <= hi {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value,
            domain,
        })
    }
}
