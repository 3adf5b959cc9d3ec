use std::fmt;

/// Errors produced by parsing and by the checked algebra entry points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input text; `offset` is a byte offset into the source.
    Syntax { offset: usize, msg: String },
    /// A generator name that is not part of the alphabet.
    UnknownGenerator { offset: usize, name: String },
    /// An exponent too large to handle safely.
    ExponentOverflow { offset: usize },
    /// Two operands live over different alphabets.
    AlphabetMismatch,
    /// Two operands live over different coefficient rings.
    RingMismatch,
    /// A free-group operation was applied in the abelian regime, or vice versa.
    RegimeMismatch { expected: &'static str },
    /// A derivation of the wrong side was supplied.
    SideMismatch,
    /// The operation needs a field (Q or F2) but got Z.
    FieldRequired,
    /// Surface presentations need genus >= 1.
    GenusOutOfRange(usize),
    /// Tuple length does not match the declared dimension.
    DimensionMismatch { expected: usize, got: usize },
    /// No solution within the allowed support bounds.
    NoSolution(String),
    /// Pairing file violations; `line` is 1-based.
    FileFormat { line: usize, msg: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Syntax { offset, msg } => write!(f, "syntax error at byte {offset}: {msg}"),
            Error::UnknownGenerator { offset, name } => {
                write!(f, "unknown generator `{name}` at byte {offset}")
            }
            Error::ExponentOverflow { offset } => write!(f, "exponent overflow at byte {offset}"),
            Error::AlphabetMismatch => write!(f, "alphabet mismatch"),
            Error::RingMismatch => write!(f, "coefficient ring mismatch"),
            Error::RegimeMismatch { expected } => {
                write!(f, "operation requires the {expected} regime")
            }
            Error::SideMismatch => write!(f, "derivation side mismatch"),
            Error::FieldRequired => write!(f, "a field coefficient ring (Q or F2) is required"),
            Error::GenusOutOfRange(g) => {
                write!(f, "genus {g} is outside the supported range (>= 1)")
            }
            Error::DimensionMismatch { expected, got } => {
                write!(
                    f,
                    "dimension mismatch: expected {expected} entries, got {got}"
                )
            }
            Error::NoSolution(msg) => write!(f, "no solution: {msg}"),
            Error::FileFormat { line, msg } => write!(f, "line {line}: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
