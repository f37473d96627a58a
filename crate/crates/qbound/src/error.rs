//! One error type for the whole crate. Every variant is a *rejected input* of
//! some operation; internal invariant breaks are asserted, not returned.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A matrix handed to a symmetric constructor wasn't symmetric.
    #[error("matrix entry ({row},{col}) != ({col},{row}): not symmetric")]
    AsymmetricMatrix { row: usize, col: usize },

    /// The operation needs at least one nonzero entry (e.g. a principal
    /// eigenvector of the zero matrix is meaningless).
    #[error("matrix has no nonzero entries")]
    ZeroMatrix,

    /// Two objects that must share a dimension don't.
    #[error("dimension mismatch: {left} vs {right} ({context})")]
    DimMismatch {
        left: usize,
        right: usize,
        context: &'static str,
    },

    /// A position index outside the oracle string.
    #[error("position {index} out of range: oracle strings have {len} bits")]
    IndexOutOfRange { index: usize, len: usize },

    /// ε·K must be a positive integer for a counting instance to exist.
    #[error("eps*K = {value} is not a positive integer")]
    NonIntegerParameters { value: String },

    /// The heavier weight class (1+ε)K doesn't fit in N positions.
    #[error("(1+eps)K = {value} exceeds the string length N = {n}")]
    Overflow { value: u64, n: u64 },

    /// The acceptance windows of the two weight classes share an integer, so
    /// no answer set can separate them.
    #[error("acceptance windows of {low} and {high} both admit the value {shared}")]
    ValueOverlap { low: u64, high: u64, shared: u64 },

    /// A relation row or column is empty; extrema h/h′ would be zero and the
    /// bounds undefined.
    #[error("relation {axis} {index} has no pairs")]
    EmptyRowOrColumn { axis: &'static str, index: usize },

    /// An explicit matrix failed the unitarity check.
    #[error("matrix is not unitary: max |U†U - I| entry = {defect:.3e}")]
    NonUnitary { defect: f64 },

    /// Parallel counters need p to divide both N and K evenly.
    #[error("p = {p} must divide N = {n} and K = {k} for balanced blocks")]
    IndivisibleParameters { p: u64, n: u64, k: u64 },

    /// Anything else the caller got wrong (empty marked set, oversized n, …).
    #[error("{0}")]
    InvalidParameter(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
