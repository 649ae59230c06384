//! Points, cusps and divisors of X₀(N), and the Hecke action on divisors.

pub mod cm;
pub mod cusp;
pub mod divisor;
pub mod jpoly;
pub mod point;

pub use cusp::{cusps, parse_cusp, Cusp, CuspClass, CuspInfo};
pub use divisor::{Divisor, NumericPoint};
pub use jpoly::{level_one_divisor, weight0_to_j_polynomial};
pub use point::{parse_point, period, reduce_point, HeegnerPoint, PointKey, Reduction};

use crate::algebra::left_coset_reps;
use crate::error::Result;

/// T(n)·D = Σ n_z Σ_i [α_i z] over the left coset representatives of T(n) at level N.
pub fn hecke_divisor(n: u64, d: &Divisor) -> Result<Divisor> {
    let reps = left_coset_reps(d.level(), n)?;
    d.act_by_reps(&reps)
}
