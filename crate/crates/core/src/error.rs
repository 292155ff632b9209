use thiserror::Error;

/// Errors raised by the arithmetic, reduction and enumeration routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("field mismatch between operands")]
    FieldMismatch,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("singular input: {0}")]
    SingularInput(String),

    /// A coefficient below the known precision floor was needed.
    #[error("insufficient precision in {context}: need coefficients down to x^{needed}, known only to x^{available}")]
    InsufficientPrecision {
        context: String,
        needed: i64,
        available: i64,
    },

    /// The vector is N-rational; `witness` is a nonzero Q of degree <= N with Q*alpha in the lattice.
    #[error("alpha is N-rational with respect to the lattice (witness Q = {witness})")]
    NRational { witness: String },

    #[error("invalid coset representatives: {0}")]
    InvalidReps(String),

    #[error("enumeration cap exceeded: {what} needs {needed} items, cap is {cap}")]
    CapExceeded { what: String, needed: u128, cap: u128 },

    #[error("oracle budget exceeded: {what} needs {needed} candidates, budget is {budget}")]
    BudgetExceeded {
        what: String,
        needed: u128,
        budget: u128,
    },

    #[error("oracle grid depth {depth} too coarse to certify the covering radius (need depth {needed})")]
    PrecisionTooCoarse { depth: i64, needed: i64 },

    #[error("undefined: {0}")]
    Undefined(String),

    #[error("operation requires {0}")]
    Unsupported(String),

    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error("parse error in {field}: {message}")]
    Parse { field: String, message: String },
}

impl Error {
    pub(crate) fn precision(context: impl Into<String>, needed: i64, available: i64) -> Self {
        Error::InsufficientPrecision {
            context: context.into(),
            needed,
            available,
        }
    }

    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }

    /// True for the precision-related failures (CLI exit code 3).
    pub fn is_precision(&self) -> bool {
        matches!(
            self,
            Error::InsufficientPrecision { .. } | Error::PrecisionTooCoarse { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
