//! Exact integers, rationals and small finite fields.
//!
//! Integers and rationals are the `num` big-number types. Finite fields
//! `F_{p^r}` (p > 3 prime, r <= 3) are implemented here on machine words.

mod finite_field;
mod matrix;

pub use finite_field::{field_arith, CharacterTable, FieldElement, FieldOp, FiniteField, Fq};
pub use matrix::QMatrix;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision integer.
pub type Integer = BigInt;
/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("characteristic {0} is not supported (need a prime p > 3)")]
    Characteristic(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree {0} is not supported (need 1 <= r <= 3)")]
    Degree(usize),
    #[error("modulus polynomial is not irreducible over F_{0}")]
    Reducible(u64),
    #[error("modulus must be monic of degree {0}")]
    MalformedModulus(usize),
    #[error("prime {0} is too large for word-sized field arithmetic")]
    TooLarge(u64),
}

/// Exact field-like coefficient domain used by curve and fiber code.
///
/// Constructors take `&self` so that elements carrying a context (a finite
/// field descriptor) can produce constants in the same structure.
pub trait Coefficient:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_int_like(&self, n: i64) -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn try_inverse(&self) -> Option<Self>;

    fn try_div(&self, rhs: &Self) -> Option<Self> {
        rhs.try_inverse().map(|inv| self.clone() * inv)
    }

    fn pow_u(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

impl Coefficient for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn from_int_like(&self, n: i64) -> Self {
        Rational::from_integer(n.into())
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn try_inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int_rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Deterministic primality by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Primes in the closed interval `[lo, hi]`.
pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// Exact integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: &Integer) -> Option<Integer> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Rational square root when both numerator and denominator are squares.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    let n = exact_sqrt(r.numer())?;
    let d = exact_sqrt(r.denom())?;
    Some(Rational::new(n, d))
}
