use alloc::string::String;
use core::fmt;

/// Failures reported by the invariant engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Row/column counts do not match what an operation needs.
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    /// A matrix that must be skew-symmetric is not; `(row, col)` is the first offending entry.
    NotSkew { row: usize, col: usize },
    /// A diagonal entry of a skew matrix is nonzero.
    NonzeroDiagonal { index: usize },
    /// Lattices live in different ambient ranks.
    AmbientMismatch { left: usize, right: usize },
    /// `sub` is not contained in `super`.
    NotContained,
    /// A lattice index was requested for a lattice that is not full rank.
    InfiniteIndex { rank: usize, ambient: usize },
    /// A face mentions a vertex outside `0..n`.
    FaceOutOfRange { vertex: usize, n: usize },
    /// Subset enumeration over `n` vertices was refused.
    EnumerationBound { n: usize, max: usize },
    /// A brute-force enumeration would exceed its size guard.
    GuardExceeded {
        what: &'static str,
        size: u128,
        limit: u128,
    },
    /// Integers that must be coprime are not.
    NotCoprime,
    /// Denominators that must agree do not.
    DenominatorMismatch,
    /// A face argument that must be proper was the full vertex set.
    FullFace,
    /// A value that must be a positive integer is not.
    NotPositive(&'static str),
    /// `ell * theta|_F` is not an integer matrix.
    NotIntegral,
    /// A quantity that must be a perfect square is not (indicates a bug upstream).
    NotSquare(String),
    /// A structural invariant failed to hold after construction.
    InvariantViolated(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => write!(
                f,
                "dimension mismatch: expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Error::NotSkew { row, col } => {
                write!(
                    f,
                    "matrix is not skew-symmetric at entry ({}, {})",
                    row + 1,
                    col + 1
                )
            }
            Error::NonzeroDiagonal { index } => {
                write!(f, "diagonal entry ({0}, {0}) is nonzero", index + 1)
            }
            Error::AmbientMismatch { left, right } => {
                write!(
                    f,
                    "lattices live in different ambient ranks ({} vs {})",
                    left, right
                )
            }
            Error::NotContained => write!(f, "sublattice is not contained in the superlattice"),
            Error::InfiniteIndex { rank, ambient } => write!(
                f,
                "lattice of rank {} in ambient rank {} has infinite index",
                rank, ambient
            ),
            Error::FaceOutOfRange { vertex, n } => {
                write!(f, "face vertex {} is outside 1..={}", vertex + 1, n)
            }
            Error::EnumerationBound { n, max } => write!(
                f,
                "refusing to enumerate 2^{} faces (bound is n <= {})",
                n, max
            ),
            Error::GuardExceeded { what, size, limit } => {
                write!(
                    f,
                    "{}: enumeration size {} exceeds guard {}",
                    what, size, limit
                )
            }
            Error::NotCoprime => write!(f, "numerator and denominator are not coprime"),
            Error::DenominatorMismatch => write!(f, "denominators differ"),
            Error::FullFace => write!(f, "face must be a proper subset of the vertex set"),
            Error::NotPositive(what) => write!(f, "{} must be a positive integer", what),
            Error::NotIntegral => write!(f, "scaled matrix is not integral"),
            Error::NotSquare(what) => write!(f, "{} is not a perfect square", what),
            Error::InvariantViolated(what) => write!(f, "invariant violated: {}", what),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
