use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes shared by the numerical modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    #[error("no roots found in [{lo}, {hi}]")]
    NoRootsFound { lo: f64, hi: f64 },

    /// Two consecutive roots were closer than twice the scan step, so a pair
    /// of sign changes may have fallen inside a single step.
    #[error("possibly missed roots near x = {near}: spacing {spacing} < 2 x step {step}")]
    PossiblyMissedRoots { near: f64, spacing: f64, step: f64 },

    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },

    #[error("invalid geometry: {0}")]
    Geometry(String),

    #[error("singular matching system in {stage} (condition estimate {condition:e})")]
    SingularMatching { stage: &'static str, condition: f64 },

    #[error("quadrature tolerance not met: achieved {achieved:e}, requested {requested:e}")]
    Quadrature { achieved: f64, requested: f64 },

    #[error("field profile does not decay beyond its last source; overlap integral undefined")]
    NonDecaying,

    #[error("l_range too narrow: minimizing l = {l} sits on the boundary [{lo}, {hi}] at F = {flux}")]
    LRangeTooNarrow { l: i64, lo: i64, hi: i64, flux: f64 },

    #[error("invalid parameter {name}: {detail}")]
    Parameter { name: &'static str, detail: String },
}

impl Error {
    pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain { func, detail: detail.into() }
    }

    pub(crate) fn param(name: &'static str, detail: impl Into<String>) -> Self {
        Error::Parameter { name, detail: detail.into() }
    }
}
