use thiserror::Error;

/// Errors raised by the algebra layer and the engines built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different fields ({left} vs {right})")]
    FieldMismatch { left: String, right: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("modulus {0} is not a prime below 2^63")]
    InvalidModulus(u64),

    #[error("arity mismatch: expected {expected} variables, found {found}")]
    Arity { expected: usize, found: usize },

    #[error("index of {0} is undefined: no member of the set divides it")]
    IndexUndefined(String),

    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error("{0} is not an order ideal")]
    NotOrderIdeal(String),

    #[error("support term {0} lies outside the order ideal and its border")]
    Support(String),

    #[error("border term {0} is not usable: {1}")]
    BorderTerm(String, String),

    #[error("dimension mismatch: expected length {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("cannot append a zero row")]
    ZeroRow,

    #[error("points {first} and {second} coincide")]
    DuplicatePoints { first: usize, second: usize },

    #[error("point set is empty")]
    EmptyPointSet,

    #[error("oracle bounds exceeded: s = {points} (max {max_points}), n = {vars} (max {max_vars})")]
    OracleTooLarge {
        points: usize,
        vars: usize,
        max_points: usize,
        max_vars: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
