use thiserror::Error;

/// Errors raised on malformed input or ill-posed requests.
///
/// Failed morphism or class checks are not errors; they are reported as
/// [`crate::structures::Violation`] values.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("element {value} out of range for a chain of size {size}")]
    OutOfRange { value: usize, size: usize },

    #[error("tuple must be nonempty")]
    EmptyTuple,

    #[error("tuple {0:?} is not strictly increasing")]
    NotIncreasing(Vec<usize>),

    #[error("arity mismatch: expected {expected}, got {actual}")]
    ArityMismatch { expected: usize, actual: usize },

    #[error("chain size must be at least 1")]
    EmptyChain,

    #[error("invalid total quasiorder: {0}")]
    InvalidQuasiorder(String),

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("invalid object: {0}")]
    InvalidObject(String),

    #[error("morphism kind `{kind}` does not apply to {detail}")]
    KindMismatch { kind: String, detail: String },

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("ill-posed instance: {0}")]
    IllPosed(String),

    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error("composition left the hom-set: {0}")]
    NotClosed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
