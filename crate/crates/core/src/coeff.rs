//! The coefficient interface shared by series, matrices and operators.

use std::fmt::Debug;

use crate::rational::Rational;

/// A ring element that series and operator code can work over: rationals,
/// elements of Y(n), elements of Y(n) ⊗ Y(n), rational-function scalars.
pub trait Coefficient: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn from_rational(c: Rational) -> Self;

    /// The value as a scalar multiple of the unit, if it is one.
    fn as_scalar(&self) -> Option<Rational>;

    fn add_assign(&mut self, other: &Self) {
        *self = Coefficient::add(self, other);
    }

    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        if !c.is_zero() {
            self.add_assign(&other.scale(c));
        }
    }
}

impl Coefficient for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
    fn from_rational(c: Rational) -> Self {
        c
    }
    fn as_scalar(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        *self += &(other * c);
    }
}
