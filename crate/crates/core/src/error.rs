use thiserror::Error;

use crate::states::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is not Hermitian (‖h − h†‖ = {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidState(#[from] ValidationReport),

    #[error("malformed density-matrix JSON: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
