//! Floating-point evaluation: arbitrary-precision values of j, j_n and E_k at
//! points of ℍ, I-Bessel functions, Niebur–Poincaré series, and the exact
//! r = 0 slices 𝕁_{N,m,0} they lead to.

pub mod bessel;
pub mod jvalue;
pub mod niebur;
pub mod real;
pub mod slice;

pub use jvalue::{j_value, jn_value};
pub use niebur::{niebur_hecke_value, niebur_value, phi, EvalParams, PointValue};
pub use real::{bits_for_digits, Complex, Real};
pub use slice::{harmonic_slice, hauptmodul};
