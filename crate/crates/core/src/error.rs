use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the tracking pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch for {what}: expected {expected}, got {got}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("outside the declared domain: {reason} (at {state:?})")]
    Domain { state: Vec<f64>, reason: String },

    #[error("integration failed at step {step} (t = {t}): {source}")]
    Integration {
        step: usize,
        t: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("state violates the constraint: residual {residual:e} exceeds tolerance {tolerance:e}")]
    ConstraintViolation { residual: f64, tolerance: f64 },

    #[error("structure constants are not antisymmetric in the lower indices at (c={c}, a={a}, b={b})")]
    NotAntisymmetric { c: usize, a: usize, b: usize },

    #[error("epsilon = {epsilon} makes the optimal control problem singular; epsilon must be > 0")]
    SingularProblem { epsilon: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("shooting residual could not be evaluated at alpha = {alpha:?}: {source}")]
    Shooting {
        alpha: Vec<f64>,
        #[source]
        source: Box<Error>,
    },

    #[error("non-finite residual while probing Jacobian column {column}")]
    NonFiniteJacobian { column: usize },

    #[error("singular Jacobian (pivot {pivot:e} in row {row}) at iterate {iterate:?}")]
    SingularJacobian {
        iterate: Vec<f64>,
        row: usize,
        pivot: f64,
    },

    #[error("degenerate convergence fit: error is zero at N = {steps}")]
    DegenerateFit { steps: usize },

    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(what: &'static str, expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch {
            what,
            expected,
            got,
        });
    }
    Ok(())
}
