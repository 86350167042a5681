//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field contexts do not match")]
    ContextMismatch,
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("zero polynomial has no lead term")]
    ZeroPolynomial,
    #[error("term {monomial} is not divisible by {divisor}")]
    NotDivisible { monomial: String, divisor: String },
    #[error("exponent overflow: {0}")]
    Overflow(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid minor index {0:?}")]
    BadIndex(Vec<usize>),
    #[error("unsatisfiable sampling request: {0}")]
    Unsatisfiable(String),
    #[error("lemma {lemma} violated: {detail}")]
    LemmaViolation { lemma: String, detail: String },
    #[error("subduction step cap {cap} exceeded")]
    StepCap { cap: usize, steps: usize },
    #[error("lead monomial shape not supported: {0}")]
    Shape(String),
    #[error("completion cap exceeded: {0}")]
    CompletionCap(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Short machine-readable kind used in structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidField(_) => "invalid_field",
            Error::ContextMismatch => "context_mismatch",
            Error::ZeroInverse => "zero_inverse",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::NotDivisible { .. } => "not_divisible",
            Error::Overflow(_) => "overflow",
            Error::Parse(_) => "parse",
            Error::Precondition(_) => "precondition",
            Error::BadIndex(_) => "bad_index",
            Error::Unsatisfiable(_) => "unsatisfiable",
            Error::LemmaViolation { .. } => "lemma_violation",
            Error::StepCap { .. } => "step_cap",
            Error::Shape(_) => "shape",
            Error::CompletionCap(_) => "completion_cap",
        }
    }
}
