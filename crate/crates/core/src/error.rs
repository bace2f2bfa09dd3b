use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Rank must be at least 2.
    InvalidRank(usize),
    LengthMismatch {
        left: usize,
        right: usize,
    },
    /// A translation vector must have zero coordinate sum.
    NotInRootLattice,
    IndexOutOfRange {
        index: usize,
        rank: usize,
    },
    /// Rectangles need `1 <= rows < n` and `cols >= 1`.
    InvalidShape {
        rows: usize,
        cols: usize,
        rank: usize,
    },
    InvalidTableau(String),
    Parse(String),
    NotDominant(String),
    /// A factor `B^{k,l_j}` with `l_j` above the level.
    LevelViolation {
        cols: usize,
        level: i64,
    },
    /// Two classical components with the same highest weight.
    AmbiguousComponents,
    /// No element (or several) of `B_0` with `phi(b_0) = Lambda`.
    GroundState(String),
    InconsistentEnergy(String),
    Overflow,
    NonTermination,
    Involution(String),
    /// Input outside the setting an identity is stated for.
    Unsupported(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidRank(n) => write!(f, "rank n = {n} is invalid, need n >= 2"),
            Error::LengthMismatch { left, right } => {
                write!(f, "weight length mismatch: {left} vs {right}")
            }
            Error::NotInRootLattice => write!(f, "translation must have zero coordinate sum"),
            Error::IndexOutOfRange { index, rank } => {
                write!(f, "index {index} out of range for rank {rank}")
            }
            Error::InvalidShape { rows, cols, rank } => write!(
                f,
                "shape {rows}x{cols} invalid for n = {rank}: need 1 <= k < n and l >= 1"
            ),
            Error::InvalidTableau(msg) => write!(f, "invalid tableau: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::NotDominant(msg) => write!(f, "weight is not dominant: {msg}"),
            Error::LevelViolation { cols, level } => write!(
                f,
                "factor with {cols} columns exceeds level {level} (need l_j <= l)"
            ),
            Error::AmbiguousComponents => {
                write!(
                    f,
                    "tensor product is not multiplicity free; R-matrix ambiguous"
                )
            }
            Error::GroundState(msg) => write!(f, "ground state: {msg}"),
            Error::InconsistentEnergy(msg) => write!(f, "inconsistent local energy: {msg}"),
            Error::Overflow => write!(f, "integer overflow"),
            Error::NonTermination => write!(f, "straightening did not terminate"),
            Error::Involution(msg) => write!(f, "involution check failed: {msg}"),
            Error::Unsupported(msg) => write!(f, "unsupported input: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
