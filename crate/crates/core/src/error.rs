use thiserror::Error;

/// Errors shared across the reasoning engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed formula text; `pos` is a 1-based character offset.
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// Malformed knowledge-base file; `line` is 1-based.
    #[error("kb format error at line {line}: {msg}")]
    KbFormat { line: usize, msg: String },

    /// A valuation did not cover every atom of the formula being evaluated.
    #[error("valuation is missing atom `{0}`")]
    MissingAtom(String),

    /// The hard facts are unsatisfiable, so conditioning on consistency is undefined.
    #[error("hard facts are inconsistent; conditional probabilities are undefined")]
    FactsInconsistent,

    /// A ratio whose numerator vanishes slower than its denominator has no limit at zero.
    #[error("ratio diverges at zero: numerator order is below denominator order")]
    DivergesAtZero,

    /// Arguments outside an operation's domain.
    #[error("{0}")]
    Domain(String),

    /// Environments are represented as 64-bit masks.
    #[error("too many defaults: {0} (at most 63 are supported)")]
    TooManyDefaults(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
