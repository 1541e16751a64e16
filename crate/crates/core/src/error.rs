use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("non-positive density {0}")]
    NonPositiveDensity(f64),
    #[error("non-positive pressure {0}")]
    NonPositivePressure(f64),
    #[error("non-positive lambda {0}")]
    NonPositiveLambda(f64),
    #[error("stencil window has {got} cells, level needs {expected}")]
    WindowSizeMismatch { expected: usize, got: usize },
    #[error("periodic boundary on one side must be paired with periodic on the opposite side")]
    UnpairedPeriodic,
    #[error("invalid state at step {step}, stage {stage}, cell ({i}, {j}): {reason}")]
    StateInvalid { step: usize, stage: usize, i: isize, j: isize, reason: String },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o failure: {0}")]
    Io(String),
}

impl From<std::io::Error> for SolverError {
    fn from(e: std::io::Error) -> Self {
        SolverError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, SolverError>;
