use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("ring configuration mismatch: {left} vs {right}")]
    ConfigMismatch { left: String, right: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("complex is not exact at position {position}: {detail}")]
    NotExact { position: usize, detail: String },

    #[error("module axiom violated: {0}")]
    AxiomViolation(String),

    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),

    #[error("no canonical inclusion between levels: {0}")]
    NoInclusion(String),

    #[error("resolution length cap of {cap} exceeded")]
    LengthCap { cap: usize },

    #[error("coresolution too short: degree {degree} needs {needed} terms, have {have}")]
    TooShort {
        degree: usize,
        needed: usize,
        have: usize,
    },

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("decode error: {0}")]
    Decode(String),

    #[error("job too large: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Decode(e.to_string())
    }
}
