use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::arith::{lcm, Cyclotomic, Rational};

/// Coefficient field of a [`Series`](super::Series): either ℚ or some ℚ(ζ_n).
///
/// `Ring` identifies the ambient field so that sums and products of series
/// over different cyclotomic fields land in their compositum.
pub trait Coefficient: Clone + PartialEq + Debug + Send + Sync + 'static {
    type Ring: Copy + Eq + Debug + Send + Sync;

    fn ring(&self) -> Self::Ring;
    fn join(a: Self::Ring, b: Self::Ring) -> Self::Ring;
    fn lift_to(&self, ring: Self::Ring) -> Self;
    fn zero_in(ring: Self::Ring) -> Self;
    fn from_rational_in(r: Rational, ring: Self::Ring) -> Self;
    fn vanishes(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn inverse(&self) -> Option<Self>;
    fn as_rational(&self) -> Option<Rational>;

    fn one_in(ring: Self::Ring) -> Self {
        Self::from_rational_in(Rational::one(), ring)
    }
}

impl Coefficient for Rational {
    type Ring = ();

    fn ring(&self) {}
    fn join(_: (), _: ()) {}
    fn lift_to(&self, _: ()) -> Self {
        self.clone()
    }
    fn zero_in(_: ()) -> Self {
        Rational::zero()
    }
    fn from_rational_in(r: Rational, _: ()) -> Self {
        r
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

impl Coefficient for Cyclotomic {
    type Ring = u32;

    fn ring(&self) -> u32 {
        self.order()
    }
    fn join(a: u32, b: u32) -> u32 {
        lcm(a as u64, b as u64) as u32
    }
    fn lift_to(&self, ring: u32) -> Self {
        self.lift(ring)
    }
    fn zero_in(ring: u32) -> Self {
        Cyclotomic::zero(ring)
    }
    fn from_rational_in(r: Rational, ring: u32) -> Self {
        Cyclotomic::from_rational(r, ring)
    }
    fn vanishes(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Cyclotomic::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Cyclotomic::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Cyclotomic::mul(self, o)
    }
    fn neg(&self) -> Self {
        Cyclotomic::neg(self)
    }
    fn scale(&self, r: &Rational) -> Self {
        Cyclotomic::scale(self, r)
    }
    fn inverse(&self) -> Option<Self> {
        Cyclotomic::inverse(self)
    }
    fn as_rational(&self) -> Option<Rational> {
        Cyclotomic::as_rational(self)
    }
}
