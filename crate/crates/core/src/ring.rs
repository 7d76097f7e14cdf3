//! Coefficient rings for the series kernel.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;

/// Exact rationals.
pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// A commutative ring with the operations the series kernel needs.
pub trait Coeff: Clone + Debug + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_q(x: &Q) -> Self;
    /// Multiplicative inverse, if it exists in the ring.
    fn inv(&self) -> Option<Self>;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn add_assign(&mut self, other: &Self) {
        *self = self.add(other);
    }
    fn from_i64(n: i64) -> Self {
        Self::from_q(&Q::from_integer(BigInt::from(n)))
    }
    /// Equality up to a relative tolerance; exact rings ignore `tol`.
    fn close_to(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }
    /// A size used for relative tolerances (1 for exact rings).
    fn magnitude(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

impl Coeff for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_q(x: &Q) -> Self {
        x.clone()
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn magnitude(&self) -> f64 {
        q_to_f64(&self.abs())
    }
}

impl Coeff for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_q(x: &Q) -> Self {
        Complex64::new(q_to_f64(x), 0.0)
    }
    fn inv(&self) -> Option<Self> {
        if Coeff::is_zero(self) {
            None
        } else {
            Some(1.0 / self)
        }
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn close_to(&self, o: &Self, tol: f64) -> bool {
        let scale = self.norm().max(o.norm()).max(1.0);
        (self - o).norm() <= tol * scale
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_inverse() {
        assert_eq!(q(2, 3).inv(), Some(q(3, 2)));
        assert_eq!(<Q as Coeff>::zero().inv(), None);
    }

    #[test]
    fn complex_close() {
        let a = Complex64::new(1.0, 1.0);
        assert!(a.close_to(&(a + 1e-12), 1e-9));
        assert!(!a.close_to(&(a + 1e-3), 1e-9));
    }
}
