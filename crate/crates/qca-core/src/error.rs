use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    DivisionByZero,
    /// Evaluation at q = 1 hit a pole of the given order.
    Pole {
        order: usize,
    },
    /// The value does not vanish at q = 1, so it is not divisible by q - 1.
    NotDivisibleByQMinusOne,
    /// An exact division in the coefficient ring failed.
    NotIntegral(String),
    Integrality {
        i: usize,
        j: usize,
    },
    GcdNotOne,
    InvalidData(String),
    FrozenDirection(usize),
    Unsupported(String),
    MismatchedAlgebra,
    /// An atom has no expansion in the requested completion.
    NotExpandable(String),
    NoCompatiblePair(String),
    Injectivity(String),
    NonGeneric(String),
    Parse(String),
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::Pole { order } => write!(f, "pole of order {order} at q = 1"),
            Error::NotDivisibleByQMinusOne => write!(f, "value does not vanish at q = 1"),
            Error::NotIntegral(s) => write!(f, "inexact division: {s}"),
            Error::Integrality { i, j } => {
                write!(f, "integrality violated: {{e_{},e_{}}}·d_{} is not an integer", i + 1, j + 1, j + 1)
            }
            Error::GcdNotOne => write!(f, "the multipliers d_i must have gcd 1"),
            Error::InvalidData(s) => write!(f, "invalid data: {s}"),
            Error::FrozenDirection(k) => write!(f, "direction {} is frozen", k + 1),
            Error::Unsupported(s) => write!(f, "unsupported: {s}"),
            Error::MismatchedAlgebra => write!(f, "elements live in different algebras"),
            Error::NotExpandable(s) => write!(f, "not expandable in this completion: {s}"),
            Error::NoCompatiblePair(s) => write!(f, "no compatible pair: {s}"),
            Error::Injectivity(s) => {
                write!(f, "p1* is not injective on the unfrozen lattice (known as the injectivity assumption): {s}")
            }
            Error::NonGeneric(s) => write!(f, "non-generic position: {s}"),
            Error::Parse(s) => write!(f, "parse error: {s}"),
            Error::Internal(s) => write!(f, "internal consistency error: {s}"),
        }
    }
}

impl core::error::Error for Error {}
