use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("invalid physical parameters: {0}")]
    InvalidParams(String),

    #[error("time samples must be strictly increasing (index {0})")]
    UnorderedTimes(usize),

    #[error("series length mismatch: {times} times, {values} values")]
    LengthMismatch { times: usize, values: usize },

    #[error("ultrarelativistic approximation requires p != 0")]
    ZeroMomentum,

    #[error("invalid mode pair: {0}")]
    InvalidPair(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("aliasing guard: {0}")]
    Aliasing(String),

    #[error("packets have different physical parameters or grids")]
    Mismatch,

    #[error("finite-difference step must be positive, got {0}")]
    NonPositiveStep(f64),

    #[error("integrator config: {0}")]
    InvalidConfig(String),

    #[error("integration needs {needed} steps, limit is {limit}")]
    StepOverflow { needed: u64, limit: u64 },

    #[error("shot count must be at least 1")]
    NoShots,

    #[error("self-check failed: {what} deviates by {deviation:e} (tolerance {tolerance:e})")]
    SelfCheck {
        what: String,
        deviation: f64,
        tolerance: f64,
    },

    #[error("csv export failed: {0}")]
    Csv(String),
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Csv(e.to_string())
    }
}
