use thiserror::Error;

/// Failures reported by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the requested representation.
    #[error("{0}")]
    Domain(String),

    /// The parameters are valid but no closed form exists for them.
    #[error("closed form unavailable: {0}")]
    ClosedFormUnavailable(String),

    /// A truncated series hit its term cap before meeting the stopping rule.
    #[error("series did not converge after {terms} terms (last partial sum {partial:e})")]
    NonConvergence { terms: usize, partial: f64 },

    /// Adaptive quadrature ran out of subdivisions.
    #[error(
        "quadrature tolerance not met after {subdivisions} subdivisions: \
         value {value:e}, error estimate {error_estimate:e}"
    )]
    ToleranceNotMet {
        value: f64,
        error_estimate: f64,
        subdivisions: usize,
    },

    /// The ceiling-snapped bound came out above the floor-snapped one.
    #[error(
        "bounds inverted: value at the ceiling-snapped order ({lower:e}) exceeds the value \
         at the floor-snapped order ({upper:e}); the function is not decreasing in n here"
    )]
    BoundsInverted { lower: f64, upper: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors caused by the arguments rather than by numerics.
    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::ClosedFormUnavailable(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
