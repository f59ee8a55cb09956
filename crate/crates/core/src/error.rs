use thiserror::Error;

/// Everything that can go wrong while building or evaluating a finite sum.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Division by an element that is zero in its field.
    #[error("division by zero")]
    DivisionByZero,

    /// Prime-field division by a residue divisible by the modulus.
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: String, modulus: u64 },

    /// Two scalars from different fields (or different moduli) were combined.
    #[error("scalar mismatch: cannot combine {left} with {right}")]
    ScalarMismatch { left: String, right: String },

    /// A denominator of a summand vanished. `slot` is the 1-based position of
    /// the parameter that produced it, `n` the summation variable.
    #[error("pole at slot {slot}, n = {n}")]
    Pole { slot: usize, n: i64 },

    /// A point or tuple has the wrong length for the index it is paired with.
    #[error("shape mismatch: expected {expected}, got {got}")]
    Shape { expected: usize, got: usize },

    /// A precondition on an index, word or point was violated.
    #[error("{0}")]
    Domain(String),

    /// Malformed literal.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn is_pole(&self) -> bool {
        matches!(
            self,
            Error::Pole { .. } | Error::DivisionByZero | Error::NotInvertible { .. }
        )
    }
}
