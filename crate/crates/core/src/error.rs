use thiserror::Error;

use crate::algebra::Form;

/// Errors raised by the algebraic routines.
///
/// Mathematical refutations (a map that fails to commute, a form that is not
/// decomposable) are *not* errors; they are returned as witness values.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("forms live over different generator sets ({left} vs {right} generators)")]
    DomainMismatch { left: usize, right: usize },

    #[error("at most {cap} generators are supported, got {got}")]
    DimensionCap { cap: usize, got: usize },

    #[error("d^2 does not vanish on {} generator(s)", .0.len())]
    DSquaredNonzero(Vec<(usize, Form)>),

    #[error("Lie algebra is not nilpotent: lower central series stabilizes at dimension {stable_dim}")]
    NotNilpotent { stable_dim: usize },

    #[error("differential is not triangular: d({generator}) has a term of weight >= its own")]
    NotTriangular { generator: String },

    #[error("differential is not Carnot-homogeneous on generator {generator}")]
    NotHomogeneous { generator: String },

    #[error("form is not closed")]
    NotClosed { differential: Form },

    #[error("model is not of the expected family shape: {0}")]
    FamilyShape(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
