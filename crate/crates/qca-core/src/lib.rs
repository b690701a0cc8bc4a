#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
mod lex;
mod mpoly;
mod powerseries;

pub mod duality;
pub mod mutation;
pub mod poisson;
pub mod qtorus;
pub mod ratfun;
pub mod scalars;
pub mod scatter;
pub mod seeds;
pub mod theta;

pub use error::{Error, Result};
pub use num_bigint::BigInt;

/// Exact rational used for skew forms, exponents and geometry.
pub type Rational = num_rational::Ratio<i64>;
