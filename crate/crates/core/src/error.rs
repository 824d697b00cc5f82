use thiserror::Error;

use crate::laurent::Var;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable mismatch: {0} vs {1}")]
    VariableMismatch(Var, Var),

    #[error("exact division left a nonzero remainder")]
    NonzeroRemainder,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("exponent {0} of A is not divisible by 4, no t-form exists")]
    NotDivisible(i64),

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    /// A parameter violates the range of the requested knot or family.
    #[error("constraint violated: {0}")]
    Constraint(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("nested one-crossing diagrams are not supported")]
    NestedUnsupported,

    #[error("invalid planar diagram: {0}")]
    InvalidDiagram(String),

    #[error("diagram has {components} components, a knot is required")]
    NotAKnot { components: usize },

    #[error("state budget exceeded: {crossings} crossings (limit {limit})")]
    StateBudgetExceeded { crossings: usize, limit: usize },

    /// An inequality that the gap calculus relies on failed for the given input.
    #[error("lemma check failed: {0}")]
    LemmaViolation(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub(crate) fn constraint(msg: impl Into<String>) -> Self {
        Error::Constraint(msg.into())
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
