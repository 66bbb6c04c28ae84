//! Error types shared across the crate.

use std::path::PathBuf;
use thiserror::Error;

/// Errors produced by gshape operations.
#[derive(Debug, Error)]
pub enum Error {
    /// A quantity that must be strictly positive was not.
    #[error("{name} must be strictly positive and finite (got {value})")]
    NonPositive { name: &'static str, value: f64 },

    /// Dimension outside the supported `1..=64` range of the `gamma` table.
    #[error("dimension n = {n} is outside the supported range 1..=64")]
    DimensionOutOfRange { n: u32 },

    /// Two points that must share a dimension do not.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A configuration violates one of the feasibility caps of the theory.
    /// The message names the violated bound, e.g. `delta exceeds delta_n = 0.25`.
    #[error("{quantity} = {value} exceeds {bound_name} = {bound}")]
    Infeasible {
        quantity: &'static str,
        value: f64,
        bound_name: &'static str,
        bound: f64,
    },

    /// An error-bound hypothesis `delta <= delta_0` does not hold. The cap is
    /// reported in log domain because `delta_0` underflows for moderate n.
    #[error("hypothesis violated: {quantity} = {value} exceeds {bound_name} (ln {bound_name} = {log_bound})")]
    HypothesisViolation {
        quantity: &'static str,
        value: f64,
        bound_name: &'static str,
        log_bound: f64,
    },

    /// Interpolation centers must be pairwise distinct.
    #[error("duplicate interpolation centers at indices {first} and {second}")]
    DuplicateCenters { first: usize, second: usize },

    /// At least one interpolation center is required.
    #[error("interpolation requires at least one center")]
    EmptyCenters,

    /// Simplex vertices are affinely dependent.
    #[error("degenerate simplex: vertices are affinely dependent")]
    DegenerateSimplex,

    /// Minimization bracket is empty or inverted.
    #[error("invalid bracket: requires 0 < {lo} < {hi}")]
    InvalidBracket { lo: f64, hi: f64 },

    /// The objective is not finite at a bracket endpoint.
    #[error("objective is not finite at beta = {beta}")]
    NonFiniteObjective { beta: f64 },

    /// A report with no rows cannot be emitted.
    #[error("experiment report has no rows")]
    EmptyReport,

    /// Catch-all for arguments outside an operation's domain.
    #[error("{0}")]
    Domain(String),

    /// I/O failure, carrying the path involved.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True for errors caused by an invalid problem description (as opposed
    /// to runtime failures such as I/O); used by callers mapping errors to
    /// exit codes.
    pub fn is_invalid_configuration(&self) -> bool {
        !matches!(self, Error::Io { .. } | Error::NonFiniteObjective { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositive { name, value })
    }
}
