//! Error taxonomy shared by every module in the crate.
//!
//! All fallible operations return [`QError`] through the crate-wide
//! [`Result`] alias. Variants are deliberately coarse: each one names the
//! mathematical precondition that was violated rather than the call site.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, QError>;

/// Everything that can go wrong while building or comparing truncated series.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QError {
    /// A series inverse was requested but the lowest nonzero coefficient is
    /// not a unit (`+1` or `-1`), or the series is identically zero up to its
    /// precision.
    #[error("series is not invertible: {0}")]
    NotInvertible(String),

    /// An infinite product was requested whose factors do not tend to 1
    /// q-adically (the monomial's exponent is below 1, or the modulus step is
    /// below 1).
    #[error("infinite product diverges q-adically: {0}")]
    Divergent(String),

    /// A half-integer exponent survived where an integer exponent was
    /// required (parity precondition violated).
    #[error("non-integral exponent: {0}")]
    NonIntegralExponent(String),

    /// A comparison or construction was requested to an order beyond what the
    /// operands can certify.
    #[error("insufficient precision: requested order {requested} but only {available} is certified")]
    InsufficientPrecision { requested: i64, available: i64 },

    /// A truncation order (or requested precision) below 1 was supplied to a
    /// checker. Degenerate orders are rejected rather than clamped.
    #[error("invalid truncation order {0}: must be at least 1")]
    InvalidOrder(i64),

    /// A summation variable has neither a quadratic nor a linear growth term,
    /// so no finite enumeration bound exists for it.
    #[error("no growth direction for variable {var}: both its quadratic and linear coefficients vanish")]
    NoGrowthDirection { var: String },

    /// A planar-diagram invariant failed (checkerboard property, Euler count,
    /// exterior-face uniqueness, or edge/vertex bookkeeping).
    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),

    /// A multisum description violates its own structural invariants
    /// (dimension mismatch, asymmetry, negative entries, parity).
    #[error("malformed multisum description: {0}")]
    MalformedSpec(String),

    /// The requested catalog key does not exist.
    #[error("unknown knot {0}")]
    UnknownKnot(String),

    /// A catalog entry was invoked with a parameter it does not accept, or a
    /// parametric family without the parameter it requires.
    #[error("bad parameter: {0}")]
    BadParameter(String),

    /// A brute-force graph search was asked to exceed its hard size limit.
    #[error("input too large: {actual} vertices exceeds the brute-force limit of {limit}")]
    TooLarge { limit: usize, actual: usize },
}
