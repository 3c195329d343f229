use crate::algebra::AlgebraError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
