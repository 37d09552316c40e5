//! Crate-wide error type. Every fallible public entry point returns these;
//! internal invariants use assertions instead.

use thiserror::Error;

/// Errors surfaced by field construction, enumeration guards and input parsing.
#[derive(Debug, Error)]
pub enum Error {
    #[error("characteristic 2 is not supported; the charts divide by 2")]
    EvenCharacteristic,

    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("extension degree {0} out of range 1..=4")]
    DegreeOutOfRange(u32),

    #[error("field F_{{{p}^{r}}} exceeds the size ceiling {max}")]
    FieldTooLarge { p: u32, r: u32, max: u64 },

    #[error("enumeration needs {required} points, above the limit {limit}; raise the limit to proceed")]
    LimitExceeded { required: u64, limit: u64 },

    #[error("point ({0}) does not satisfy the defining equations of the special fiber")]
    NotOnSpecialFiber(String),

    #[error("unknown element label {0:?}")]
    UnknownLabel(String),

    #[error("malformed literal {literal:?}: {reason}")]
    InvalidLiteral { literal: String, reason: String },

    #[error("the rank-n sweep supports n in 1..=4 and q <= 9; got n = {n}, q = {q}")]
    SweepBudget { n: usize, q: u64 },
}
