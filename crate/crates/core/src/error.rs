use thiserror::Error;

/// Errors raised by the table, partition and decomposition machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected} parts, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("sequence {0:?} is not weakly decreasing")]
    NotDecreasing(Vec<i64>),

    #[error("index {index} out of range 0..{bound}")]
    IndexOutOfRange { index: i64, bound: usize },

    #[error("ambient dimension mismatch: P^{left} vs P^{right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("cell (row {row}, twist {twist}) lies outside the literal window {lo}..{hi}")]
    WindowExceeded { row: usize, twist: i64, lo: i64, hi: i64 },

    #[error("literal windows do not overlap")]
    EmptyWindow,

    #[error("no Hilbert polynomial available for a literal table")]
    NoHilbertPolynomial,

    #[error("undecidable: {0}")]
    Undecidable(String),

    #[error("table is not a sum of homogeneous bundles")]
    NotHomogeneous,

    #[error("table is not 0-regular (reg^0 = {0})")]
    NotZeroRegular(String),

    #[error("not decomposable within scope: {0}")]
    NotDecomposableWithinScope(String),

    #[error("no Littlewood-Richardson witness for p = {p}")]
    NoWitness { p: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
