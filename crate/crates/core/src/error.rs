use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Errors raised by the algebraic core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A configuration value violates its invariant.
    InvalidConfig(String),
    /// A field or matrix would exceed the configured size budget.
    Budget(String),
    /// An operation was called outside its precondition.
    Usage(String),
    /// Two operands live in different rings or levels.
    ContextMismatch { expected: String, found: String },
    /// The element has no inverse in the ring it lives in.
    NotAUnit,
    /// Division by zero in a field, fraction or Laurent ring.
    DivisionByZero,
    /// No materialized level separates two support points.
    IncreaseKMax {
        k_max: usize,
        blocking: (Vec<i64>, Vec<i64>),
    },
    /// The exponents admit a small integer relation at every level tried.
    NotCertified { bound: u64, max_level: usize },
    /// A computation contradicted a structural invariant.
    InternalConsistency(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::Budget(msg) => write!(f, "size budget exceeded: {msg}"),
            Error::Usage(msg) => write!(f, "usage error: {msg}"),
            Error::ContextMismatch { expected, found } => {
                write!(f, "context mismatch: expected {expected}, found {found}")
            }
            Error::NotAUnit => write!(f, "element is not a unit"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::IncreaseKMax { k_max, blocking } => write!(
                f,
                "no level up to k_max = {k_max} separates {:?} and {:?}; increase k_max",
                blocking.0, blocking.1
            ),
            Error::NotCertified { bound, max_level } => write!(
                f,
                "exponents not certified independent for coefficient bound {bound} at any level <= {max_level}"
            ),
            Error::InternalConsistency(msg) => write!(f, "internal consistency fault: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
