//! Exact scalars: rationals, cyclotomic numbers in `Q(z_m)` and sparse
//! multivariate polynomials over either.
//!
//! All three implement [`Ring`], which is what the immanant and tensor code
//! is generic over. Method names avoid `add`/`mul` so that the trait never
//! collides with the `std::ops` impls on the concrete types.

mod cyclo;
mod intpoly;
mod mvpoly;
mod parse;
mod rat;

pub use cyclo::{cyclotomic_polynomial, euler_phi, root_of_unity, CycloNum};
pub use intpoly::IntPoly;
pub use mvpoly::{Monomial, MVPoly};
pub use parse::parse_poly;
pub use rat::{parse_rat, Rat};

use std::fmt;

/// A commutative ring with exact equality.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn from_rat(r: &Rat) -> Self;

    /// `Some(r)` when the element is a rational constant.
    fn as_rat(&self) -> Option<Rat>;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negate())
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_int(i: i64) -> Self {
        Self::from_rat(&Rat::from_integer(i.into()))
    }
}

/// Rings that contain the cyclotomic numbers, i.e. where a character value
/// can be embedded as a scalar.
pub trait CycloAlgebra: Ring {
    fn from_cyclo(c: &CycloNum) -> Self;
}

/// Sums a sequence of ring elements.
pub fn sum<'a, R: Ring + 'a>(items: impl IntoIterator<Item = &'a R>) -> R {
    items.into_iter().fold(R::zero(), |acc, x| acc.plus(x))
}
