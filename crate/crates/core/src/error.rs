use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Rows or columns equal to zero, or data length not equal to rows × cols.
    InvalidShape {
        rows: usize,
        cols: usize,
        len: usize,
    },
    /// A NaN or infinite entry was supplied at construction.
    NonFinite {
        index: usize,
    },
    /// Operand shapes are incompatible for the requested operation.
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    NotSquare {
        rows: usize,
        cols: usize,
    },
    /// An order/parameter outside its admissible range (k of a compound,
    /// p of a Schläflian, index pairs, step counts, ...).
    OutOfRange {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },
    /// Requested construction would exceed the dimension cap.
    TooLarge {
        what: &'static str,
        dim: usize,
        cap: usize,
    },
    Singular,
    /// Shifted QR failed to deflate within its iteration budget.
    NoConvergence {
        iterations: usize,
    },
    /// Input violates a structural requirement (symmetry, skew-symmetry, ...).
    Structure {
        what: &'static str,
        deviation: f64,
    },
    /// A bracket [lo, hi] did not straddle a sign change.
    SameSignBracket {
        lo: f64,
        hi: f64,
    },
    InvalidInterval {
        lo: f64,
        hi: f64,
    },
    NonFiniteEvaluation {
        theta: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidShape { rows, cols, len } => write!(
                f,
                "invalid matrix shape {}x{} with {} entries",
                rows, cols, len
            ),
            Error::NonFinite { index } => write!(f, "non-finite entry at flat index {}", index),
            Error::DimensionMismatch { op, left, right } => write!(
                f,
                "{}: incompatible shapes {}x{} and {}x{}",
                op, left.0, left.1, right.0, right.1
            ),
            Error::NotSquare { rows, cols } => {
                write!(f, "expected a square matrix, got {}x{}", rows, cols)
            }
            Error::OutOfRange {
                what,
                value,
                min,
                max,
            } if *max == i64::MAX => write!(f, "{} = {} is below the minimum {}", what, value, min),
            Error::OutOfRange {
                what,
                value,
                min,
                max,
            } => write!(f, "{} = {} outside [{}, {}]", what, value, min, max),
            Error::TooLarge { what, dim, cap } => {
                write!(f, "{} dimension {} exceeds cap {}", what, dim, cap)
            }
            Error::Singular => write!(f, "matrix is singular"),
            Error::NoConvergence { iterations } => write!(
                f,
                "eigenvalue iteration did not converge after {} iterations",
                iterations
            ),
            Error::Structure { what, deviation } => {
                write!(f, "input is not {} (deviation {:e})", what, deviation)
            }
            Error::SameSignBracket { lo, hi } => write!(
                f,
                "guardian value has the same sign at both ends of [{}, {}]",
                lo, hi
            ),
            Error::InvalidInterval { lo, hi } => write!(f, "degenerate interval [{}, {}]", lo, hi),
            Error::NonFiniteEvaluation { theta } => {
                write!(f, "non-finite evaluation at theta = {}", theta)
            }
        }
    }
}

impl core::error::Error for Error {}
