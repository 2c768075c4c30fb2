use thiserror::Error;

/// Errors raised by the library. Every variant describes a rejected input;
/// none of them signal an internal failure.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Bernoulli numbers are indexed from 1")]
    BernoulliIndex,

    #[error("power series orders differ ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },

    #[error("power series has a zero constant term and cannot be inverted")]
    ZeroConstantTerm,

    #[error("a power series needs at least one coefficient")]
    EmptySeries,

    #[error("characteristic series must have constant term 1, got {0}")]
    NotNormalized(String),

    #[error("series truncated at order {have}, degree {need} requested")]
    InsufficientOrder { have: usize, need: usize },

    #[error("invalid integer partition: {0}")]
    InvalidPartition(String),

    #[error("invalid set partition: {0}")]
    InvalidSetPartition(String),

    #[error("{what} = {value} is outside the supported range {min}..={max}{hint}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
        hint: &'static str,
    },

    #[error("set partitions live on different ground sets ({0} vs {1} elements)")]
    GroundSetMismatch(usize, usize),

    #[error("the partitions are not comparable in the refinement order")]
    NotComparable,

    #[error("exponent {s} is below the convergence margin 1 + {delta}")]
    ExponentTooSmall { s: f64, delta: f64 },

    #[error("at least one exponent is required")]
    NoExponents,

    #[error("expansion needs {needed} terms, above the budget of {budget}")]
    TermBudget { needed: u128, budget: u128 },

    #[error("invalid evaluation config: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_range(
    what: &'static str,
    value: usize,
    min: usize,
    max: usize,
    hint: &'static str,
) -> Result<()> {
    if value < min || value > max {
        Err(Error::OutOfRange {
            what,
            value,
            min,
            max,
            hint,
        })
    } else {
        Ok(())
    }
}
