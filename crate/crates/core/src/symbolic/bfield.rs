use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::{forward_binop, MultiPoly, Var};
use super::ratfun::RationalFunction;
use super::SymbolicError;
use crate::numeric::{Coefficient, Rational};

/// `12^3`, the constant in the curve `B: eta^2 = xi^3 - 1728`.
pub const B_CONSTANT: i64 = 1728;

/// `xi^3 - 1728`, the value of `eta^2` in the function field of `B`.
pub fn eta_squared() -> MultiPoly {
    MultiPoly::from_int_dense(Var::Xi, &[-B_CONSTANT, 0, 0, 1])
}

/// Element `a(xi) + b(xi) * eta` of `Q(B)`, a free module of rank two over
/// `Q(xi)`. The pair `(a, b)` is the unique normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFieldElement {
    a: RationalFunction,
    b: RationalFunction,
}

impl BFieldElement {
    pub fn new(a: RationalFunction, b: RationalFunction) -> Result<Self, SymbolicError> {
        if !a.is_univariate_in(Var::Xi) || !b.is_univariate_in(Var::Xi) {
            return Err(SymbolicError::NotInFunctionField);
        }
        Ok(Self { a, b })
    }

    pub fn from_xi(a: RationalFunction) -> Result<Self, SymbolicError> {
        Self::new(a, RationalFunction::zero())
    }

    pub fn constant(c: Rational) -> Self {
        Self {
            a: RationalFunction::constant(c),
            b: RationalFunction::zero(),
        }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    pub fn xi() -> Self {
        Self {
            a: RationalFunction::var(Var::Xi),
            b: RationalFunction::zero(),
        }
    }

    pub fn eta() -> Self {
        Self {
            a: RationalFunction::zero(),
            b: RationalFunction::one(),
        }
    }

    /// Reduce a polynomial in `xi, eta` with `eta^2 -> xi^3 - 1728`.
    pub fn from_poly(p: &MultiPoly) -> Result<Self, SymbolicError> {
        if p.variables().iter().any(|v| *v != Var::Xi && *v != Var::Eta) {
            return Err(SymbolicError::NotInFunctionField);
        }
        let g = eta_squared();
        let mut a = MultiPoly::zero();
        let mut b = MultiPoly::zero();
        for (m, c) in p.terms() {
            let e = m.exp(Var::Eta);
            let mut rest = *m;
            rest.0[Var::Eta.index()] = 0;
            let term = &MultiPoly::monomial(c.clone(), rest) * &g.pow(e / 2);
            if e % 2 == 0 {
                a = &a + &term;
            } else {
                b = &b + &term;
            }
        }
        Ok(Self {
            a: a.into(),
            b: b.into(),
        })
    }

    pub fn a(&self) -> &RationalFunction {
        &self.a
    }

    pub fn b(&self) -> &RationalFunction {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if !self.b.is_zero() {
            return None;
        }
        self.a.constant_value()
    }

    /// Re-reduce the stored pair. The representation is already normal, so
    /// this is the identity on values.
    pub fn normalize(&self) -> Self {
        let p = &(&self.a.numer().clone() * &self.b.denom().clone())
            + &(&(&self.b.numer().clone() * &self.a.denom().clone()) * &MultiPoly::var(Var::Eta));
        let den: RationalFunction = (&self.a.denom().clone() * &self.b.denom().clone()).into();
        let reduced = Self::from_poly(&p).expect("xi/eta polynomial");
        let inv = den.inverse().expect("nonzero denominator");
        Self {
            a: reduced.a * inv.clone(),
            b: reduced.b * inv,
        }
    }

    /// The norm `a^2 - b^2 (xi^3 - 1728)` down to `Q(xi)`.
    pub fn norm(&self) -> RationalFunction {
        let g: RationalFunction = eta_squared().into();
        &(&self.a * &self.a) - &(&(&self.b * &self.b) * &g)
    }

    pub fn conjugate(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    pub fn inverse(&self) -> Result<Self, SymbolicError> {
        let n = self.norm().inverse()?;
        let c = self.conjugate();
        Ok(Self {
            a: &c.a * &n,
            b: &c.b * &n,
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        self.pow_u(e as u64)
    }

    /// Evaluate a polynomial univariate in `v` at this element (Horner).
    pub fn eval_poly_at(p: &MultiPoly, v: Var, at: &Self) -> Result<Self, SymbolicError> {
        if !p.is_univariate_in(v) {
            return Err(SymbolicError::NotUnivariate);
        }
        let coeffs = p.to_dense(v);
        let mut acc = Self::int(0);
        for c in coeffs.iter().rev() {
            acc = &(&acc * at) + &Self::constant(c.clone());
        }
        Ok(acc)
    }
}

impl Add for &BFieldElement {
    type Output = BFieldElement;
    fn add(self, rhs: &BFieldElement) -> BFieldElement {
        BFieldElement {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub for &BFieldElement {
    type Output = BFieldElement;
    fn sub(self, rhs: &BFieldElement) -> BFieldElement {
        BFieldElement {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Mul for &BFieldElement {
    type Output = BFieldElement;
    fn mul(self, rhs: &BFieldElement) -> BFieldElement {
        let g: RationalFunction = eta_squared().into();
        let bb = &self.b * &rhs.b;
        BFieldElement {
            a: &(&self.a * &rhs.a) + &(&bb * &g),
            b: &(&self.a * &rhs.b) + &(&self.b * &rhs.a),
        }
    }
}

impl Neg for &BFieldElement {
    type Output = BFieldElement;
    fn neg(self) -> BFieldElement {
        BFieldElement {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

forward_binop!(Add, add, BFieldElement);
forward_binop!(Sub, sub, BFieldElement);
forward_binop!(Mul, mul, BFieldElement);

impl Neg for BFieldElement {
    type Output = BFieldElement;
    fn neg(self) -> BFieldElement {
        -&self
    }
}

impl Coefficient for BFieldElement {
    fn zero_like(&self) -> Self {
        Self::int(0)
    }
    fn one_like(&self) -> Self {
        Self::int(1)
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

impl fmt::Display for BFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => f.write_str("0"),
            (false, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*eta", self.b),
            (false, false) => write!(f, "{} + {}*eta", self.a, self.b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int_rat;
    use crate::symbolic::poly::div_rem;

    fn xi_poly(c: &[i64]) -> RationalFunction {
        MultiPoly::from_int_dense(Var::Xi, c).into()
    }

    /// Reduce a polynomial in eta with coefficients in Q[xi] modulo
    /// `eta^2 - (xi^3 - 1728)` by long division in eta, treating xi as a
    /// coefficient.
    fn reduce_by_long_division(p: &MultiPoly) -> (MultiPoly, MultiPoly) {
        let mut rem = p.clone();
        loop {
            let deg = rem.degree_in(Var::Eta).unwrap_or(0);
            if deg < 2 {
                break;
            }
            let mut lead = MultiPoly::zero();
            for (m, c) in rem.terms() {
                if m.exp(Var::Eta) == deg {
                    let mut mm = *m;
                    mm.0[Var::Eta.index()] = deg - 2;
                    lead = &lead + &MultiPoly::monomial(c.clone(), mm);
                }
            }
            let modulus = &MultiPoly::var(Var::Eta).pow(2) - &eta_squared();
            rem = &rem - &(&lead * &modulus);
        }
        let mut a = MultiPoly::zero();
        let mut b = MultiPoly::zero();
        for (m, c) in rem.terms() {
            let mut mm = *m;
            mm.0[Var::Eta.index()] = 0;
            if m.exp(Var::Eta) == 0 {
                a = &a + &MultiPoly::monomial(c.clone(), mm);
            } else {
                b = &b + &MultiPoly::monomial(c.clone(), mm);
            }
        }
        (a, b)
    }

    #[test]
    fn defining_relation() {
        let e = BFieldElement::eta();
        assert_eq!(&e * &e, BFieldElement::from_xi(xi_poly(&[-1728, 0, 0, 1])).unwrap());
        let one = BFieldElement::int(1);
        let prod = &(&one + &e) * &(&one - &e);
        assert_eq!(prod, BFieldElement::from_xi(xi_poly(&[1729, 0, 0, -1])).unwrap());
    }

    #[test]
    fn square_of_xi_plus_eta_matches_long_division() {
        let s = &BFieldElement::xi() + &BFieldElement::eta();
        let sq = &s * &s;
        let expected = BFieldElement::new(xi_poly(&[-1728, 0, 1, 1]), xi_poly(&[0, 2])).unwrap();
        assert_eq!(sq, expected);

        let raw = (&MultiPoly::var(Var::Xi) + &MultiPoly::var(Var::Eta)).pow(2);
        let (a, b) = reduce_by_long_division(&raw);
        assert_eq!(sq.a(), &RationalFunction::from(a));
        assert_eq!(sq.b(), &RationalFunction::from(b));
    }

    #[test]
    fn from_poly_agrees_with_long_division() {
        let xi = MultiPoly::var(Var::Xi);
        let eta = MultiPoly::var(Var::Eta);
        let p = &(&eta.pow(5) * &xi.scale(&int_rat(3))) + &(&eta.pow(2) - &xi.pow(4));
        let reduced = BFieldElement::from_poly(&p).unwrap();
        let (a, b) = reduce_by_long_division(&p);
        assert_eq!(reduced.a(), &RationalFunction::from(a));
        assert_eq!(reduced.b(), &RationalFunction::from(b));
    }

    #[test]
    fn normal_form_idempotent() {
        let u = &BFieldElement::xi().inverse().unwrap() + &BFieldElement::eta().pow(3);
        let once = u.normalize();
        assert_eq!(once, u);
        assert_eq!(once.normalize(), once);
    }

    #[test]
    fn inverse_roundtrip() {
        let u = &BFieldElement::xi() + &BFieldElement::eta();
        assert_eq!(&u * &u.inverse().unwrap(), BFieldElement::int(1));
        assert!(BFieldElement::int(0).inverse().is_err());
    }

    #[test]
    fn horner_substitution() {
        // t^2 + 1728 at t = eta reduces to xi^3.
        let p = MultiPoly::from_int_dense(Var::T, &[1728, 0, 1]);
        let v = BFieldElement::eval_poly_at(&p, Var::T, &BFieldElement::eta()).unwrap();
        assert_eq!(v, BFieldElement::xi().pow(3));
        let (_, r) = div_rem(&p, &MultiPoly::var(Var::T), Var::T).unwrap();
        assert_eq!(r, MultiPoly::int(1728));
    }

    #[test]
    fn rejects_foreign_variables() {
        let p = MultiPoly::var(Var::T);
        assert_eq!(BFieldElement::from_poly(&p), Err(SymbolicError::NotInFunctionField));
    }
}
