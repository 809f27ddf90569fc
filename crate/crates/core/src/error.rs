use thiserror::Error;

pub type Result<T, E = QavError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum QavError {
    #[error("{what} expects a nonnegative argument, got {value}")]
    NegativeArgument { what: &'static str, value: i64 },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("operands live over different alphabets")]
    AlphabetMismatch,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("morphism has no image for generator `{0}`")]
    MissingImage(String),

    #[error("cannot compose: target of the inner map ({inner}) differs from source of the outer map ({outer})")]
    ChainMismatch { inner: String, outer: String },

    #[error("completion budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("no solution of the inverse-braid ansatz for {generator}; residual {residual}")]
    NoAnsatzSolution { generator: String, residual: String },

    #[error("mode window too small: {0}")]
    WindowTooSmall(String),

    #[error("rational prefactor without a declared expansion direction: {0}")]
    UndeclaredExpansion(String),

    #[error("unknown check id `{0}`")]
    UnknownCheck(String),

    #[error("basis file hash mismatch: stored {stored}, recomputed {computed}")]
    HashMismatch { stored: String, computed: String },

    #[error("unsupported basis file version {0}")]
    Version(u32),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
