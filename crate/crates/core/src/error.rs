use thiserror::Error;

/// Errors produced anywhere in the laboratory.
#[derive(Debug, Error)]
pub enum EfnError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The template spectrum falls below the non-vanishing floor.
    #[error("template rejected for alignment: {0}")]
    RejectedTemplate(String),

    /// Frequency bin without a usable template phase.
    #[error("frequency bin {k} is excluded from phase statistics")]
    ExcludedBin { k: usize },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("correlation is undefined for a constant input")]
    UndefinedCorrelation,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, EfnError>;

pub(crate) fn invalid(msg: impl Into<String>) -> EfnError {
    EfnError::InvalidArgument(msg.into())
}
