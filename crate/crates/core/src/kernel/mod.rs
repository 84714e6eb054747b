//! Exact arithmetic kernel: rationals, dense univariate polynomials over an
//! arbitrary exact field, and the classical algorithms built on them.

pub mod factor;
pub mod linalg;
pub mod poly;

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use poly::Poly;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type BigRat = BigRational;

/// An exact field. Every operation is total except `inv` of zero.
pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn from_rat(q: &BigRat) -> Self;

    fn is_one(&self) -> bool {
        self.sub(&Self::one()).is_zero()
    }
    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
    fn from_int(n: i64) -> Self {
        Self::from_rat(&BigRat::from_integer(BigInt::from(n)))
    }
    fn pow(&self, n: i64) -> Self {
        if n < 0 {
            return self.inv().pow(-n);
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
    /// Rational value if the element is a plain rational number.
    fn as_rat(&self) -> Option<BigRat>;
}

impl Field for BigRat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn from_rat(q: &BigRat) -> Self {
        q.clone()
    }
    fn as_rat(&self) -> Option<BigRat> {
        Some(self.clone())
    }
}

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

/// Formats a rational as `n` or `n/d`.
pub fn fmt_rat(q: &BigRat) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rat_to_f64(q: &BigRat) -> f64 {
    use num_traits::ToPrimitive;
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // scale both down until representable
            let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
            let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

pub fn rat_abs(q: &BigRat) -> BigRat {
    q.abs()
}

// Helpers that sidestep the name clash between `Field` and `num_traits`
// for `BigRat`.
pub fn qzero() -> BigRat {
    <BigRat as Zero>::zero()
}

pub fn qone() -> BigRat {
    <BigRat as One>::one()
}

pub fn qis_zero(q: &BigRat) -> bool {
    <BigRat as Zero>::is_zero(q)
}

pub fn qis_one(q: &BigRat) -> bool {
    <BigRat as One>::is_one(q)
}
