use thiserror::Error;

/// Errors raised by the verification library.
///
/// Law violations found while *validating* user data are report content
/// (see [`crate::report::ValidationReport`]), not errors. The variants below
/// are reserved for malformed input, unmet preconditions, and for
/// constructions whose re-verification fails.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("{n} is not invertible in characteristic {characteristic}")]
    NotInvertible { n: u64, characteristic: u32 },

    #[error("object mismatch: {0}")]
    ObjectMismatch(String),

    #[error("category mismatch: {0}")]
    CategoryMismatch(String),

    #[error("morphism is not idempotent")]
    NotIdempotent,

    #[error("morphism is not absorbed by its objects' idempotents")]
    NotAbsorbed,

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("law violation: {0}")]
    LawViolation(String),

    #[error("comparison functor not fully faithful: {0}")]
    NotFullyFaithful(String),

    #[error("component {0} is not invertible")]
    NonInvertibleComponent(String),

    #[error("monad is not separable: no section of the multiplication exists")]
    MonadNotSeparable,

    #[error("morphism does not lie in the hom space: {0}")]
    NotInHomSpace(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unresolved reference: {0}")]
    Unresolved(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
