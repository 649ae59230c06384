//! Exact Hecke operators on q-expansions, on divisors of X₀(N) and on the
//! multiplicative group of meromorphic modular forms, plus the numerics needed
//! to check divisor-sum identities at CM points.

pub mod algebra;
pub mod arith;
pub mod curve;
pub mod error;
pub mod forms;
pub mod hecke;
pub mod numeric;
pub mod series;
pub mod sums;
pub mod verify;

pub use error::{Error, Result};
