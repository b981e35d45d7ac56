use thiserror::Error;

/// Errors shared across the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A homomorphism matrix does not respect the orders of the domain
    /// generators.
    #[error("ill-formed homomorphism: {0}")]
    IllFormedHom(String),

    /// An argument is outside the documented domain of an operation.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A bifunctor value on the requested pair of atoms is not a finite
    /// direct sum of the module atoms this engine can represent.
    #[error("not representable: {kind}({lhs}, {rhs}) has no value in the supported module class")]
    NotRepresentable {
        kind: String,
        lhs: String,
        rhs: String,
    },

    /// An extension enumeration would exceed the configured order bound.
    #[error("enumeration bound exceeded: middle group order {order} > bound {bound}")]
    BoundExceeded { order: String, bound: u64 },

    /// A witness search ran out of candidates below its bound.
    #[error("search bound exceeded: {0}")]
    SearchBoundExceeded(String),

    /// No resolution policy produced a certified exact assignment.
    #[error("undetermined: {0}")]
    Undetermined(String),

    /// A literal failed to parse.
    #[error("parse error at byte {position}: expected {expected}")]
    Parse { position: usize, expected: String },
}

pub type Result<T> = std::result::Result<T, Error>;
