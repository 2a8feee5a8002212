//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors reported by design, polynomial and search operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A subgroup dimension larger than the ambient dimension was requested.
    #[error("subgroup dimension {k} exceeds the number of factors {m}")]
    DimensionTooLarge { m: usize, k: usize },

    /// Generators passed to a constructor are linearly dependent over GF(2).
    #[error("generators are linearly dependent over GF(2)")]
    DependentGenerators,

    /// A generator list and a sign list have different lengths.
    #[error("got {signs} signs for {generators} generators")]
    SignCountMismatch { generators: usize, signs: usize },

    /// An operation that requires a 0/1 indicator polynomial got something else.
    #[error("polynomial is not a 0/1 indicator")]
    NotIndicator,

    /// An operation that requires a non-empty fraction got an empty one.
    #[error("fraction is empty")]
    EmptyFraction,

    /// A polynomial with a negative point value cannot be turned into a fraction.
    #[error("polynomial takes value {value} at point {point:#b}; not a counting polynomial")]
    NegativeValue { point: u32, value: i64 },

    /// A polynomial with a fractional point value cannot be turned into a fraction.
    #[error("polynomial takes a non-integer value at point {point:#b}")]
    NonIntegerValue { point: u32 },

    /// Part sizes for decompositions must be powers of two.
    #[error("part size {0} is not a power of two between 1 and 2^m")]
    BadPartSize(u64),

    /// A column index outside 1..=11 was passed to a Plackett-Burman projection.
    #[error("column index {0} is out of range 1..=11")]
    ColumnOutOfRange(usize),

    /// The same column was selected twice in a projection.
    #[error("column {0} selected more than once")]
    DuplicateColumn(usize),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
