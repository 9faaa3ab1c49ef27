use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{div_rem, forward_binop, gcd_univariate, MultiPoly, Var};
use super::SymbolicError;
use crate::numeric::{Coefficient, Rational};

/// Quotient of two polynomials with nonzero denominator.
///
/// When numerator and denominator share a single variable the fraction is
/// fully reduced with a monic denominator; otherwise only the content of the
/// denominator is pulled out. Equality is decided by cross-multiplication,
/// so it is exact in both cases.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, SymbolicError> {
        if den.is_zero() {
            return Err(SymbolicError::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        Self {
            num: p,
            den: MultiPoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::from_poly(MultiPoly::int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(MultiPoly::var(v))
    }

    pub fn zero() -> Self {
        Self::from_poly(MultiPoly::zero())
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The single variable involved, if any (`Some(None)` for constants).
    pub fn univariate_var(&self) -> Option<Option<Var>> {
        let mut vars = self.num.variables();
        vars.extend(self.den.variables());
        vars.sort();
        vars.dedup();
        match vars.len() {
            0 => Some(None),
            1 => Some(Some(vars[0])),
            _ => None,
        }
    }

    pub fn is_univariate_in(&self, v: Var) -> bool {
        self.num.is_univariate_in(v) && self.den.is_univariate_in(v)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(n / d)
    }

    /// The polynomial this equals, when the reduced denominator is constant.
    pub fn as_poly(&self) -> Option<MultiPoly> {
        let d = self.den.constant_value()?;
        Some(self.num.scale(&d.recip()))
    }

    /// `deg_v(num) - deg_v(den)`; `None` for zero.
    pub fn degree_in(&self, v: Var) -> Option<i64> {
        let n = self.num.degree_in(v)? as i64;
        let d = self.den.degree_in(v).unwrap_or(0) as i64;
        Some(n - d)
    }

    pub fn inverse(&self) -> Result<Self, SymbolicError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::normalized(self.num.pow(e), self.den.pow(e))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    pub fn eval(&self, assignment: &[(Var, Rational)]) -> Result<Rational, SymbolicError> {
        let n = self.num.eval(assignment).ok_or(SymbolicError::UnassignedVariable)?;
        let d = self.den.eval(assignment).ok_or(SymbolicError::UnassignedVariable)?;
        if d.is_zero() {
            return Err(SymbolicError::ZeroDenominator);
        }
        Ok(n / d)
    }

    /// Substitute rational functions for variables.
    pub fn substitute(&self, subs: &[(Var, RationalFunction)]) -> Result<Self, SymbolicError> {
        Ok(substitute_poly(&self.num, subs)? * substitute_poly(&self.den, subs)?.inverse()?)
    }

    fn normalized(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let mut vars = num.variables();
        vars.extend(den.variables());
        vars.sort();
        vars.dedup();
        let (num, den) = if vars.len() <= 1 {
            let v = vars.first().copied().unwrap_or(Var::X);
            let g = gcd_univariate(&num, &den, v);
            let (n, _) = div_rem(&num, &g, v).expect("univariate");
            let (d, _) = div_rem(&den, &g, v).expect("univariate");
            let lead = d.to_dense(v).last().cloned().expect("nonzero");
            (n.scale(&lead.recip()), d.scale(&lead.recip()))
        } else {
            let c = den.content();
            (num.scale(&c.recip()), den.scale(&c.recip()))
        };
        Self { num, den }
    }
}

fn substitute_poly(
    p: &MultiPoly,
    subs: &[(Var, RationalFunction)],
) -> Result<RationalFunction, SymbolicError> {
    let mut out = RationalFunction::zero();
    for (m, c) in p.terms() {
        let mut term = RationalFunction::constant(c.clone());
        let mut rest = *m;
        for (v, value) in subs {
            let e = m.exp(*v);
            rest.0[v.index()] = 0;
            if e > 0 {
                term = term * value.pow(e);
            }
        }
        term = term * RationalFunction::from_poly(MultiPoly::monomial(Rational::one(), rest));
        out = out + term;
    }
    Ok(out)
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFunction {}

impl From<MultiPoly> for RationalFunction {
    fn from(p: MultiPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

forward_binop!(Add, add, RationalFunction);
forward_binop!(Sub, sub, RationalFunction);
forward_binop!(Mul, mul, RationalFunction);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl Coefficient for RationalFunction {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn from_int_like(&self, n: i64) -> Self {
        Self::int(n)
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn try_inverse(&self) -> Option<Self> {
        self.inverse().ok()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == MultiPoly::one() {
            if self.num.num_terms() > 1 {
                write!(f, "({})", self.num)
            } else {
                write!(f, "{}", self.num)
            }
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
