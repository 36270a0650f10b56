use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero rational function")]
    DivisionByZero,

    #[error("evaluation at a pole (u = {0})")]
    EvaluationAtPole(String),

    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("constant term is not an invertible scalar")]
    NotInvertible,

    #[error("invalid signature: n = {n}, l = {l} (need 0 <= l <= n/2 and n >= 1)")]
    InvalidSignature { n: usize, l: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("evaluation module needs alpha - beta to be a nonnegative integer, got {0}")]
    NotDominant(String),

    #[error("one-dimensional modules V(gamma) exist only for l > 0")]
    OneDimRequiresPositiveL,

    #[error("module kind mismatch: {0}")]
    WrongModuleKind(&'static str),

    #[error("no highest vector: joint kernel is zero")]
    NoHighestVector,

    #[error("highest vector is not a joint eigenvector of b_{0}{0}(u)")]
    NotAnEigenvector(usize),

    #[error("invalid twisted-map pairing: sign {sign} requires l = {expected_l}, got l = {l}")]
    InvalidTwistPairing { sign: char, expected_l: usize, l: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
