//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by series construction, transforms, fits, and I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// An operation needs more usable points than the input provides.
    #[error("too few points: need at least {required}, have {available}")]
    TooFewPoints { required: usize, available: usize },

    /// All x values are identical, so a regression slope is undefined.
    #[error("degenerate x values: all abscissae are equal")]
    DegenerateX,

    /// No points fall in the ten-year window before the reference year.
    #[error("empty window: no points in the decade before {ref_year}")]
    EmptyWindow { ref_year: i32 },

    /// Years are not strictly increasing.
    #[error("years not strictly increasing at {year}")]
    UnorderedYears { year: i32 },

    /// Times are not strictly increasing.
    #[error("times not strictly increasing at index {index}")]
    UnorderedTimes { index: usize },

    /// A value is NaN or infinite.
    #[error("non-finite value at year {year}")]
    NonFiniteValue { year: i32 },

    /// Power-law evaluation at or before the reference year.
    #[error("non-positive delta: year {year} is not after reference year {ref_year}")]
    NonPositiveDelta { year: i32, ref_year: i32 },

    /// Rate ratio requested with a zero rate on one side.
    #[error("zero rate: rate ratio is undefined")]
    ZeroRate,

    /// Percent comparison against a zero external value.
    #[error("zero external value: percent difference is undefined")]
    ZeroExternal,

    /// A population value is non-positive (or non-finite) where a
    /// log-space fit requires strictly positive input.
    #[error("non-positive value at index {index}")]
    NonPositiveValue { index: usize },

    /// The best growth-cycle fit has no growing or no decaying limb.
    #[error("degenerate cycle: fitted growth/death rates are not both positive")]
    DegenerateCycle,

    /// An option is outside its documented range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),

    /// CSV header line is not `year,value`.
    #[error("malformed header: expected `year,value`, found `{found}`")]
    MalformedHeader { found: String },

    /// A CSV row failed to parse.
    #[error("malformed row at line {line}")]
    MalformedRow { line: usize },

    /// Two CSV rows share the same year.
    #[error("duplicate year {year}")]
    DuplicateYear { year: i32 },

    /// Underlying read failure (including invalid UTF-8 input).
    #[error("read error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable name of the error variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::TooFewPoints { .. } => "TooFewPoints",
            Error::DegenerateX => "DegenerateX",
            Error::EmptyWindow { .. } => "EmptyWindow",
            Error::UnorderedYears { .. } => "UnorderedYears",
            Error::UnorderedTimes { .. } => "UnorderedTimes",
            Error::NonFiniteValue { .. } => "NonFiniteValue",
            Error::NonPositiveDelta { .. } => "NonPositiveDelta",
            Error::ZeroRate => "ZeroRate",
            Error::ZeroExternal => "ZeroExternal",
            Error::NonPositiveValue { .. } => "NonPositiveValue",
            Error::DegenerateCycle => "DegenerateCycle",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::MalformedHeader { .. } => "MalformedHeader",
            Error::MalformedRow { .. } => "MalformedRow",
            Error::DuplicateYear { .. } => "DuplicateYear",
            Error::Io(_) => "Io",
        }
    }
}
