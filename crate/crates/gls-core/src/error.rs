use thiserror::Error;

use crate::system::Digit;

/// Error type shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GlsError {
    #[error("partition needs at least 3 points (got {got})")]
    PartitionTooShort { got: usize },

    #[error("partition must start at 0 and end at 1 (got {first} .. {last})")]
    PartitionEndpoints { first: f64, last: f64 },

    #[error("partition is not strictly increasing at index {index}")]
    PartitionNotIncreasing { index: usize },

    #[error("expected {expected} flips, got {got}")]
    FlipCount { expected: usize, got: usize },

    #[error("flip at index {index} must be 0 or 1 (got {value})")]
    FlipValue { index: usize, value: u8 },

    #[error("a family needs at least 2 systems (got {got})")]
    TooFewSystems { got: usize },

    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },

    #[error("weight {index} must be strictly positive (got {value})")]
    WeightNotPositive { index: usize, value: f64 },

    #[error("weights must sum to 1 within 1e-12 (sum = {sum})")]
    WeightSum { sum: f64 },

    #[error("{name} = {value} lies outside the unit interval")]
    OutOfUnitInterval { name: &'static str, value: f64 },

    #[error("digit ({}, {}) does not belong to the family", .digit.j, .digit.k)]
    UnknownDigit { digit: Digit },

    #[error("system index {j} out of range (family has {total} systems)")]
    UnknownSystem { j: usize, total: usize },

    #[error("branch index {k} out of range for a system with {branches} branches")]
    UnknownBranch { k: usize, branches: usize },

    #[error("operation requires a nonempty word")]
    EmptyWord,

    #[error("expected {expected} frequency entries, got {got}")]
    FrequencyCount { expected: usize, got: usize },

    #[error("frequency for digit ({}, {}) is negative ({value})", .digit.j, .digit.k)]
    FrequencyNegative { digit: Digit, value: f64 },

    #[error("frequencies must sum to 1 within 1e-12 (sum = {sum})")]
    FrequencySum { sum: f64 },

    #[error("expected {expected} entries for {name}, got {got}")]
    LengthMismatch {
        name: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("undefined conditional frequencies: marginal for system {j} is zero")]
    ZeroMarginal { j: usize },

    #[error("driving weights do not dominate the fibre contractions ({})",
        format_digits(.offenders))]
    DominationViolated { offenders: Vec<Digit> },

    #[error("parameter {name} = {value} outside its admissible range")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("{what} failed to converge after {iterations} iterations")]
    NonConvergence {
        what: &'static str,
        iterations: usize,
    },

    #[error("scaling fit is degenerate: {reason}")]
    DegenerateFit { reason: &'static str },

    #[error("need at least {needed} scales, got {got}")]
    TooFewScales { needed: usize, got: usize },

    #[error("invalid config value: {0}")]
    ConfigValue(String),

    #[error("scales must be strictly decreasing values in (0, 1)")]
    BadScales,
}

fn format_digits(digits: &[Digit]) -> String {
    let items: Vec<String> = digits
        .iter()
        .map(|d| format!("({},{})", d.j, d.k))
        .collect();
    format!("offending digits: {}", items.join(" "))
}

/// How an error should be classified by callers that map failures to exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    /// Malformed inputs: invalid systems, weights, words, frequencies, parameters.
    Validation,
    /// A well-formed input that violates a theorem hypothesis
    /// (weight/width domination, positive driving marginals).
    Hypothesis,
    /// An iterative routine ran out of its iteration budget.
    Numerical,
}

impl GlsError {
    pub fn category(&self) -> ErrorCategory {
        match self {
            GlsError::DominationViolated { .. } | GlsError::ZeroMarginal { .. } => {
                ErrorCategory::Hypothesis
            }
            GlsError::NonConvergence { .. } => ErrorCategory::Numerical,
            _ => ErrorCategory::Validation,
        }
    }
}

pub type Result<T> = std::result::Result<T, GlsError>;
