use num_traits::{One, Zero};

use super::{CurveError, WeierstrassCurve};
use crate::numeric::{int_rat, Rational};
use crate::symbolic::{Monomial, MultiPoly, Var};

const COORDS: [Var; 3] = [Var::X, Var::Y, Var::Z];

/// Exponents `(x, y, z)` of the ten cubic monomials, in the order used by
/// [`PlaneCubic::from_coefficients`].
pub const CUBIC_MONOMIALS: [(u32, u32, u32); 10] = [
    (3, 0, 0),
    (2, 1, 0),
    (2, 0, 1),
    (1, 2, 0),
    (1, 1, 1),
    (1, 0, 2),
    (0, 3, 0),
    (0, 2, 1),
    (0, 1, 2),
    (0, 0, 3),
];

fn mono(x: u32, y: u32, z: u32) -> Monomial {
    let mut m = Monomial::one();
    m.0[Var::X.index()] = x;
    m.0[Var::Y.index()] = y;
    m.0[Var::Z.index()] = z;
    m
}

/// A ternary cubic form over `Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneCubic {
    coeffs: [Rational; 10],
}

impl PlaneCubic {
    pub fn from_coefficients(coeffs: [Rational; 10]) -> Option<Self> {
        if coeffs.iter().all(Zero::is_zero) {
            return None;
        }
        Some(Self { coeffs })
    }

    /// The form must be homogeneous of degree 3 in `X, Y, Z` only.
    pub fn from_poly(p: &MultiPoly) -> Option<Self> {
        if p.variables().iter().any(|v| !COORDS.contains(v)) {
            return None;
        }
        if p.terms().any(|(m, _)| m.degree() != 3) {
            return None;
        }
        let coeffs = CUBIC_MONOMIALS.map(|(x, y, z)| p.coeff(&mono(x, y, z)));
        Self::from_coefficients(coeffs)
    }

    /// `X^3 + Y^3 + Z^3 - 3 mu XYZ`.
    pub fn hesse(mu: &Rational) -> Self {
        let mut c: [Rational; 10] = Default::default();
        c[0] = Rational::one();
        c[6] = Rational::one();
        c[9] = Rational::one();
        c[4] = -(int_rat(3) * mu);
        Self { coeffs: c }
    }

    pub fn coefficients(&self) -> &[Rational; 10] {
        &self.coeffs
    }

    pub fn to_poly(&self) -> MultiPoly {
        let mut p = MultiPoly::zero();
        for ((x, y, z), c) in CUBIC_MONOMIALS.iter().zip(&self.coeffs) {
            p = &p + &MultiPoly::monomial(c.clone(), mono(*x, *y, *z));
        }
        p
    }

    pub fn eval(&self, pt: &[Rational; 3]) -> Rational {
        let mut acc = Rational::zero();
        for ((x, y, z), c) in CUBIC_MONOMIALS.iter().zip(&self.coeffs) {
            acc += c * pow(&pt[0], *x) * pow(&pt[1], *y) * pow(&pt[2], *z);
        }
        acc
    }

    pub fn gradient(&self, pt: &[Rational; 3]) -> [Rational; 3] {
        let p = self.to_poly();
        let assign = [
            (Var::X, pt[0].clone()),
            (Var::Y, pt[1].clone()),
            (Var::Z, pt[2].clone()),
        ];
        COORDS.map(|v| p.derivative(v).eval(&assign).expect("all coordinates assigned"))
    }
}

fn pow(r: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

fn proportional(a: &[Rational; 3], b: &[Rational; 3]) -> bool {
    let c0 = &a[1] * &b[2] - &a[2] * &b[1];
    let c1 = &a[2] * &b[0] - &a[0] * &b[2];
    let c2 = &a[0] * &b[1] - &a[1] * &b[0];
    c0.is_zero() && c1.is_zero() && c2.is_zero()
}

/// Weierstrass model of a smooth cubic with a rational flex.
///
/// Coordinates are changed so that the flex is `(0:1:0)` with tangent
/// `Z = 0`; the affine equation is then a general Weierstrass equation up to
/// the scaling `x -> x/k, y -> y/k` that makes the cubic term monic.
pub fn nagell_reduce(
    c: &PlaneCubic,
    flex: &[Rational; 3],
) -> Result<WeierstrassCurve<Rational>, CurveError> {
    if flex.iter().all(Zero::is_zero) || !c.eval(flex).is_zero() {
        return Err(CurveError::NotOnCurve);
    }
    let l = c.gradient(flex);
    if l.iter().all(Zero::is_zero) {
        return Err(CurveError::Singular);
    }

    let candidates = [
        [l[1].clone(), -l[0].clone(), Rational::zero()],
        [l[2].clone(), Rational::zero(), -l[0].clone()],
        [Rational::zero(), l[2].clone(), -l[1].clone()],
    ];
    let v1 = candidates
        .into_iter()
        .find(|v| !v.iter().all(Zero::is_zero) && !proportional(v, flex))
        .expect("kernel of a nonzero form is two-dimensional");
    let k = (0..3).find(|i| !l[*i].is_zero()).expect("nonzero gradient");
    let mut w: [Rational; 3] = Default::default();
    w[k] = Rational::one();

    // (X, Y, Z) = X' v1 + Y' flex + Z' w
    let column = |i: usize| {
        let lin = |coef: &Rational, v: Var| MultiPoly::var(v).scale(coef);
        &(&lin(&v1[i], Var::X) + &lin(&flex[i], Var::Y)) + &lin(&w[i], Var::Z)
    };
    let g = c
        .to_poly()
        .substitute(&[(Var::X, column(0)), (Var::Y, column(1)), (Var::Z, column(2))]);
    let co = |x, y, z| g.coeff(&mono(x, y, z));

    if !co(2, 1, 0).is_zero() {
        return Err(CurveError::NotFlex);
    }
    let alpha = co(3, 0, 0);
    let q_yy = co(0, 2, 1);
    if alpha.is_zero() || q_yy.is_zero() {
        return Err(CurveError::Singular);
    }
    let q_xy = co(1, 1, 1);
    let q_y = co(0, 1, 2);
    let q_xx = co(2, 0, 1);
    let q_x = co(1, 0, 2);
    let q_1 = co(0, 0, 3);

    let k = -(&alpha / &q_yy);
    let a1 = &q_xy / &q_yy;
    let a2 = -(&q_xx / &q_yy);
    let a3 = &q_y / &q_yy * &k;
    let a4 = -(&q_x / &q_yy) * &k;
    let a6 = -(&q_1 / &q_yy) * &k * &k;
    let e = WeierstrassCurve::from_general(a1, a2, a3, a4, a6);
    if e.is_singular() {
        return Err(CurveError::Singular);
    }
    Ok(e)
}
