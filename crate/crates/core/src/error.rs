use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Inputs outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid configuration, such as too little working precision.
    #[error("configuration error: {0}")]
    Config(String),

    /// An evaluation point within the guard distance of a lattice point.
    #[error("pole at {location}: {detail}")]
    Pole { location: String, detail: String },

    /// A time outside the admissible interval of a case.
    #[error("t = {t} lies outside the admissible interval ({lo}, {hi})")]
    OutsideInterval { t: String, lo: String, hi: String },

    /// A Hankel determinant that vanished or could not be resolved.
    #[error("Hankel determinant D_{index} is degenerate: {kind}")]
    DegenerateHankel { index: usize, kind: Degeneracy },

    /// A measure truncation whose tail bound misses the requested tolerance.
    #[error("truncation error: {0}")]
    Truncation(String),

    /// Repeated roots where a simple spectrum is required.
    #[error("multiple roots: {0}")]
    MultipleRoots(String),

    /// A vanishing denominator in a continued fraction.
    #[error("zero denominator in continued fraction at depth {depth}")]
    ZeroDenominator { depth: usize },

    /// An operation that does not apply to the given case or family.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A diagnostic precondition that failed at a specific index.
    #[error("diagnostic failure at index {index}: {detail}")]
    Diagnostic { index: usize, detail: String },
}

/// Why a Hankel determinant was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degeneracy {
    /// Cancellation consumed (almost) all working digits: a true zero.
    Zero,
    /// Cancellation consumed enough digits that the value is unreliable.
    PrecisionExhausted,
}

impl std::fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Degeneracy::Zero => f.write_str("vanishes to working precision"),
            Degeneracy::PrecisionExhausted => f.write_str("precision exhausted"),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
