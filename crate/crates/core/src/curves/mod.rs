//! Short Weierstrass curves over any exact coefficient domain, point counting
//! and twists over finite fields, and reduction of plane cubics with a
//! rational flex.

mod cubic;
mod finite;

pub use cubic::{nagell_reduce, PlaneCubic};
pub use finite::{
    character_sum, count_points, count_points_raw, is_isomorphic, isomorphism_verdict,
    quadratic_twist, IsoVerdict, PointCount,
};

use thiserror::Error;

use crate::numeric::{Coefficient, NumericError, Rational};
use crate::symbolic::{BFieldElement, RationalFunction, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("curve is singular (discriminant 0)")]
    Singular,
    #[error("point is not on the cubic")]
    NotOnCurve,
    #[error("point is not an inflection point")]
    NotFlex,
    #[error("twist parameter must be nonzero")]
    ZeroTwist,
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// `y^2 = x^3 + a4 x + a6`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassCurve<F> {
    pub a4: F,
    pub a6: F,
}

impl<F: Coefficient> WeierstrassCurve<F> {
    pub fn new(a4: F, a6: F) -> Self {
        Self { a4, a6 }
    }

    /// Short model of `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`,
    /// namely `y^2 = x^3 - c4/48 x - c6/864`.
    pub fn from_general(a1: F, a2: F, a3: F, a4: F, a6: F) -> Self {
        let (c4, c6) = general_c4_c6(&a1, &a2, &a3, &a4, &a6);
        let k48 = a1.from_int_like(48).try_inverse().expect("48 invertible");
        let k864 = a1.from_int_like(864).try_inverse().expect("864 invertible");
        Self {
            a4: -(c4 * k48),
            a6: -(c6 * k864),
        }
    }

    pub fn c4(&self) -> F {
        self.a4.from_int_like(-48) * self.a4.clone()
    }

    pub fn c6(&self) -> F {
        self.a6.from_int_like(-864) * self.a6.clone()
    }

    /// `-16 (4 a4^3 + 27 a6^2)`.
    pub fn discriminant(&self) -> F {
        let four = self.a4.from_int_like(4);
        let t27 = self.a4.from_int_like(27);
        let inner = four * self.a4.pow_u(3) + t27 * self.a6.pow_u(2);
        self.a4.from_int_like(-16) * inner
    }

    pub fn is_singular(&self) -> bool {
        self.discriminant().is_zero_coeff()
    }

    /// `c4^3 / Delta`.
    pub fn j_invariant(&self) -> Result<F, CurveError> {
        let delta = self.discriminant();
        self.c4()
            .pow_u(3)
            .try_div(&delta)
            .ok_or(CurveError::Singular)
    }

    /// The isomorphic model `(u^4 a4, u^6 a6)`, i.e. `(x, y) -> (u^2 x, u^3 y)`
    /// applied in reverse.
    pub fn scale(&self, u: &F) -> Self {
        Self {
            a4: u.pow_u(4) * self.a4.clone(),
            a6: u.pow_u(6) * self.a6.clone(),
        }
    }
}

/// `c4, c6` of a general Weierstrass equation via `b2, b4, b6`.
pub fn general_c4_c6<F: Coefficient>(a1: &F, a2: &F, a3: &F, a4: &F, a6: &F) -> (F, F) {
    let k = |n: i64| a1.from_int_like(n);
    let b2 = a1.clone() * a1.clone() + k(4) * a2.clone();
    let b4 = k(2) * a4.clone() + a1.clone() * a3.clone();
    let b6 = a3.clone() * a3.clone() + k(4) * a6.clone();
    let c4 = b2.clone() * b2.clone() - k(24) * b4.clone();
    let c6 = -(b2.pow_u(3)) + k(36) * b2 * b4 - k(216) * b6;
    (c4, c6)
}

/// Discriminant of a general Weierstrass equation, `(c4^3 - c6^2) / 1728`.
pub fn general_discriminant<F: Coefficient>(a1: &F, a2: &F, a3: &F, a4: &F, a6: &F) -> F {
    let (c4, c6) = general_c4_c6(a1, a2, a3, a4, a6);
    let inv = a1.from_int_like(1728).try_inverse().expect("1728 invertible");
    (c4.pow_u(3) - c6.pow_u(2)) * inv
}

/// Legendre curve `y^2 = x(x-1)(x-lambda)` over `Q(lambda)`, depressed to
/// short form by the shift `x -> x + (1 + lambda)/3`.
pub fn legendre_curve() -> WeierstrassCurve<RationalFunction> {
    let l = RationalFunction::var(Var::Lambda);
    let zero = RationalFunction::zero();
    let a2 = -(&l + &RationalFunction::one());
    WeierstrassCurve::from_general(zero.clone(), a2, zero.clone(), l, zero)
}

/// The Weierstrass model of the Hesse pencil
/// `y^2 = x^3 - 27 mu (mu^3 + 8) x + 54 (mu^6 - 20 mu^3 - 8)`.
pub fn hessian_weierstrass() -> WeierstrassCurve<RationalFunction> {
    use crate::symbolic::MultiPoly;
    let a4 = MultiPoly::from_int_dense(Var::Mu, &[0, -216, 0, 0, -27]);
    let a6 = MultiPoly::from_int_dense(Var::Mu, &[-432, 0, 0, -1080, 0, 0, 54]);
    WeierstrassCurve::new(a4.into(), a6.into())
}

/// `E: y^2 = x^3 - 27 xi x - 54 eta` over the function field of `B`.
pub fn modular_surface_curve() -> WeierstrassCurve<BFieldElement> {
    WeierstrassCurve::new(
        BFieldElement::int(-27) * BFieldElement::xi(),
        BFieldElement::int(-54) * BFieldElement::eta(),
    )
}

/// `y^2 = x^3 - 27 g^3 x - 54 t g^4` over `Q(t)` with `g = t^2 + 1728`.
pub fn k3_curve() -> WeierstrassCurve<RationalFunction> {
    use crate::symbolic::MultiPoly;
    let g = MultiPoly::from_int_dense(Var::T, &[1728, 0, 1]);
    let a4 = g.pow(3).scale(&Rational::from_integer((-27).into()));
    let a6 = (&MultiPoly::var(Var::T) * &g.pow(4)).scale(&Rational::from_integer((-54).into()));
    WeierstrassCurve::new(a4.into(), a6.into())
}

pub fn rational_curve(a4: Rational, a6: Rational) -> WeierstrassCurve<Rational> {
    WeierstrassCurve::new(a4, a6)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int_rat, rat};
    use crate::symbolic::MultiPoly;

    #[test]
    fn surface_curve_invariants() {
        let e = modular_surface_curve();
        assert_eq!(e.discriminant(), BFieldElement::int(2_176_782_336));
        assert_eq!(e.j_invariant().unwrap(), BFieldElement::xi().pow(3));
        assert_eq!(e.c4(), BFieldElement::int(1296) * BFieldElement::xi());
    }

    #[test]
    fn k3_discriminant_is_sixth_power_times_g8() {
        let x = k3_curve();
        let g = MultiPoly::from_int_dense(Var::T, &[1728, 0, 1]);
        let expected = g.pow(8).scale(&int_rat(2_176_782_336));
        assert_eq!(x.discriminant(), RationalFunction::from(expected));
    }

    #[test]
    fn legendre_j_invariant() {
        let c = legendre_curve();
        let l = MultiPoly::var(Var::Lambda);
        let one = MultiPoly::one();
        let num = (&(&l.pow(2) - &l) + &one).pow(3).scale(&int_rat(256));
        let den = &l.pow(2) * &(&l - &one).pow(2);
        let expected = RationalFunction::new(num, den).unwrap();
        assert_eq!(c.j_invariant().unwrap(), expected);
    }

    #[test]
    fn general_and_short_discriminants_agree() {
        // y^2 + xy + y = x^3 - x^2 + 2x - 3; oracle is the b8 formula
        // Delta = -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6.
        let (a1, a2, a3, a4, a6) = (1i64, -1i64, 1i64, 2i64, -3i64);
        let b2 = a1 * a1 + 4 * a2;
        let b4 = 2 * a4 + a1 * a3;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        let oracle = -b2 * b2 * b8 - 8 * b4.pow(3) - 27 * b6 * b6 + 9 * b2 * b4 * b6;
        assert_eq!(oracle, -2800);
        let r = |n: i64| int_rat(n);
        let general = general_discriminant(&r(a1), &r(a2), &r(a3), &r(a4), &r(a6));
        assert_eq!(general, r(oracle));
        let short = WeierstrassCurve::from_general(r(a1), r(a2), r(a3), r(a4), r(a6));
        assert_eq!(short.discriminant(), r(oracle));
    }

    #[test]
    fn singular_j_is_error() {
        let c = rational_curve(int_rat(-3), int_rat(2));
        assert!(c.is_singular());
        assert_eq!(c.j_invariant(), Err(CurveError::Singular));
        let smooth = rational_curve(rat(0, 1), int_rat(1));
        assert_eq!(smooth.j_invariant().unwrap(), int_rat(0));
    }
}
