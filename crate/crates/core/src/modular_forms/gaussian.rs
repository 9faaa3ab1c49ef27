use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::numeric::Integer;

/// `re + im * i` in `Z[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianInteger {
    pub re: Integer,
    pub im: Integer,
}

impl GaussianInteger {
    pub fn new(re: impl Into<Integer>, im: impl Into<Integer>) -> Self {
        Self {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn i() -> Self {
        Self::new(0, 1)
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn norm(&self) -> Integer {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exact quotient when `other` divides `self`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        let n = other.norm();
        if n.is_zero() {
            return None;
        }
        let t = self * &other.conj();
        (t.re.is_multiple_of(&n) && t.im.is_multiple_of(&n)).then(|| Self {
            re: t.re / &n,
            im: t.im / &n,
        })
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }

    /// The four associates `u * self`, `u in {1, i, -1, -i}`.
    pub fn associates(&self) -> [Self; 4] {
        let i = Self::i();
        let a1 = &i * self;
        let a2 = &i * &a1;
        let a3 = &i * &a2;
        [self.clone(), a1, a2, a3]
    }

    /// `self = 1 mod 2(1+i)`.
    pub fn is_primary(&self) -> bool {
        Self::new(2, 2).divides(&(self - &Self::one()))
    }

    /// A prime of `Z[i]` above `p = 1 mod 4`, normalised to be primary,
    /// via the representation `p = a^2 + b^2`. The choice between `pi` and
    /// its conjugate is immaterial for symmetric functions of both.
    pub fn primary_prime_above(p: u64) -> Option<Self> {
        if p % 4 != 1 {
            return None;
        }
        let a = (1..).take_while(|a| a * a < p).find(|a| {
            let r = p - a * a;
            let s = num_integer::Roots::sqrt(&r);
            s * s == r
        })?;
        let b = num_integer::Roots::sqrt(&(p - a * a));
        let pi = Self::new(a, b);
        pi.associates().into_iter().find(Self::is_primary)
    }
}

impl Add for &GaussianInteger {
    type Output = GaussianInteger;
    fn add(self, rhs: &GaussianInteger) -> GaussianInteger {
        GaussianInteger {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussianInteger {
    type Output = GaussianInteger;
    fn sub(self, rhs: &GaussianInteger) -> GaussianInteger {
        GaussianInteger {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussianInteger {
    type Output = GaussianInteger;
    fn mul(self, rhs: &GaussianInteger) -> GaussianInteger {
        GaussianInteger {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussianInteger {
    type Output = GaussianInteger;
    fn neg(self) -> GaussianInteger {
        GaussianInteger {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl fmt::Display for GaussianInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im < Integer::zero() {
            write!(f, "{} - {}i", self.re, -&self.im)
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}
