use thiserror::Error;

/// Errors reported by the exact engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected n = {expected}, got n = {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is not unitary (U·U* != I)")]
    NotUnitary,

    #[error("point is not exactly on the unit sphere (sum of |z_j|^2 != 1)")]
    NotOnSphere,

    #[error("linear system is inconsistent")]
    InconsistentSystem,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("variable index {index} out of range 1..={n}")]
    VariableOutOfRange { index: usize, n: usize },

    #[error("pattern box violates the combine-closure precondition: {0}")]
    NotAPattern(String),

    #[error("no catalog family matches the pattern box: {0}")]
    NoFamilyMatches(String),

    #[error("Mobius parameter must lie in the open unit ball (|a| < 1)")]
    ParameterOutsideBall,

    #[error("Mobius denominator is numerically singular (|1 - <z,a>| < 1e-14)")]
    SingularDenominator,
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
