use thiserror::Error;

/// Errors surfaced by the library. Mathematical outcomes that are expected
/// (a module failing to be tilting, a phi value that is only a lower bound)
/// are not errors; they are encoded in the respective result types.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("modules live over different algebras")]
    AlgebraMismatch,

    #[error("algebras have different primes")]
    PrimeMismatch,

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("quiver has no vertices")]
    EmptyQuiver,

    #[error("ideal not certified admissible within length bound {bound}: {detail}")]
    NotAdmissibleWithinBound { bound: usize, detail: String },

    #[error("relation violated: {0}")]
    RelationViolated(String),

    #[error("operation requires a nonzero module: {0}")]
    ZeroModule(String),

    #[error("decomposition retry budget exhausted")]
    RetryExhausted,

    #[error("division predicted by class arithmetic failed module-level verification: {0}")]
    VerificationMismatch(String),

    #[error("supplied list contains duplicate isomorphism classes: {0}")]
    DuplicateClass(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
