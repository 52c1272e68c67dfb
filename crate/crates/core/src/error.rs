use thiserror::Error;

/// Errors raised by every evaluator and checker in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the supported (positive) domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter tuple violates its invariants.
    #[error("invalid parameters: {0}")]
    Parameter(String),

    /// A theorem's hypothesis chain does not hold for the supplied parameters.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// The result magnitude does not fit in an `f64`.
    #[error("overflow: {0}")]
    Overflow(String),

    /// A series did not meet its tolerance within the term budget.
    #[error("series did not converge within {max_terms} terms (last tail bound {tail_bound:e})")]
    NonConvergence { max_terms: usize, tail_bound: f64 },

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error("quadrature did not reach tolerance {tol:e} within {max_intervals} intervals (estimate {estimate:e}, error {error:e})")]
    Quadrature {
        tol: f64,
        max_intervals: usize,
        estimate: f64,
        error: f64,
    },

    /// `pFq` with `p > q + 1` and `z != 0`.
    #[error("pFq diverges for p = {p} > q + 1 = {} with z != 0", .q + 1)]
    Divergent { p: usize, q: usize },

    /// `pFq` with `p = q + 1` outside the unit disc.
    #[error("pFq with p = q + 1 requires |z| < 1, got z = {z}")]
    Radius { z: f64 },

    /// Wright function weights violate `sum(beta) - sum(alpha) > -1`.
    #[error("Wright convergence condition fails: sum(beta) - sum(alpha) = {0} <= -1")]
    ConvergenceCondition(f64),

    /// A gamma argument hits a nonpositive integer.
    #[error("pole: gamma argument {argument} at index {index} is a nonpositive integer")]
    Pole { argument: f64, index: usize },
}

impl Error {
    /// True for failures caused by numerics rather than by the caller's input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. } | Error::Quadrature { .. } | Error::Overflow(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
