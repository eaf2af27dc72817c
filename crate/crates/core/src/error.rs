//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{context}: dimension mismatch ({left} vs {right})")]
    DimensionMismatch {
        context: &'static str,
        left: usize,
        right: usize,
    },

    #[error("variable index {index} out of range for {vars} variables")]
    VariableOutOfRange { index: usize, vars: usize },

    #[error("expected a homogeneous polynomial of degree {expected}")]
    InhomogeneousInput { expected: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("at least one non-trivial graded piece is required")]
    TrivialPieces,

    #[error("identity matrix is not in the span: input is not the symmetry algebra of a cone")]
    IdentityNotInSpan,

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("no general choice found after {attempts} attempts (seeds {seeds:?})")]
    NonGeneralSeed { attempts: u32, seeds: Vec<u64> },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal check failed: {0}")]
    CheckFailed(String),
}
