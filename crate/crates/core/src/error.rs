use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state is not normalized: squared norm {0}")]
    NotNormalized(f64),

    #[error("vector is not on the unit sphere: norm {0}")]
    NotUnit(f64),

    #[error("bit value must be 0 or 1, got {0}")]
    InvalidBit(u8),

    #[error("number of trials must be at least 1")]
    ZeroTrials,

    #[error("angle grid is empty")]
    EmptyGrid,

    #[error("unknown experiment `{0}`")]
    UnknownExperiment(String),
}
