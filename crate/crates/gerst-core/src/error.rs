use alloc::string::String;
use core::fmt;

/// Errors raised by fallible operations in this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two operands live over different algebras.
    MismatchedAlgebras,
    /// An index argument is outside its valid range.
    OutOfRange { what: &'static str, index: usize, bound: usize },
    /// A dense table would exceed the configured entry cap.
    SizeCap { entries: u128, cap: usize },
    /// Text did not match the formula grammar.
    Parse { offset: usize, message: String },
    /// Unknown builtin algebra or monoid name.
    UnknownName(String),
    /// The request is well-formed but not supported (e.g. composite modulus).
    Unsupported(String),
    /// Malformed input data.
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MismatchedAlgebras => write!(f, "operands belong to different algebras"),
            Error::OutOfRange { what, index, bound } => {
                write!(f, "{what} index {index} out of range (bound {bound})")
            }
            Error::SizeCap { entries, cap } => {
                write!(f, "table of {entries} entries exceeds size cap {cap}")
            }
            Error::Parse { offset, message } => write!(f, "parse error at byte {offset}: {message}"),
            Error::UnknownName(name) => write!(f, "unknown name `{name}`"),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
            Error::Invalid(msg) => write!(f, "invalid input: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
