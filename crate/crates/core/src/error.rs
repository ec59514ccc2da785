use thiserror::Error;

/// Errors raised by the analysis library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("number of variables {0} is outside the supported range 0..=24")]
    VariableCount(u32),

    #[error("table index {index} out of range for n = {n}")]
    IndexOutOfRange { index: u64, n: u32 },

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("variable x{index} exceeds the declared number of variables {declared}")]
    VariableOutOfRange { index: u32, declared: u32 },

    #[error("basis rows are linearly dependent")]
    DependentBasis,

    #[error("mask {mask:#x} does not fit in {n} variables")]
    MaskOutOfRange { mask: u64, n: u32 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: u32, actual: u32 },

    #[error("enumeration of {required} items exceeds the budget of {budget}")]
    BudgetExceeded { required: String, budget: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("resource error: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
