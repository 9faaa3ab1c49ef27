use serde::Serialize;

use super::{CurveError, WeierstrassCurve};
use crate::numeric::{CharacterTable, Coefficient, FieldElement, FiniteField, Fq};
use crate::par::{self, Execution};

/// `#E(F_q)` including the point at infinity, with `a_q = q + 1 - N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PointCount {
    pub q: u64,
    pub n: u64,
    pub trace: i64,
}

impl PointCount {
    fn from_character_sum(q: u64, sum: i64) -> Self {
        let n = (q as i64 + 1 + sum) as u64;
        Self { q, n, trace: -sum }
    }

    /// `a_q^2 <= 4q`.
    pub fn within_hasse_bound(&self) -> bool {
        (self.trace as i128).pow(2) <= 4 * self.q as i128
    }
}

/// `sum_{x in F_q} chi(x^3 + a4 x + a6)`, sequential.
#[inline]
pub fn character_sum(field: &FiniteField, table: &CharacterTable, a4: Fq, a6: Fq) -> i64 {
    let mut sum = 0i64;
    for i in 0..field.order() {
        sum += cubic_character(field, table, field.element(i), a4, a6) as i64;
    }
    sum
}

#[inline]
fn cubic_character(field: &FiniteField, table: &CharacterTable, x: Fq, a4: Fq, a6: Fq) -> i8 {
    let x2 = field.square(x);
    let rhs = field.add(field.mul(field.add(x2, a4), x), a6);
    table.chi(field.index(rhs))
}

/// Count on raw coordinates; the x-range is split across workers in
/// parallel mode.
pub fn count_points_raw(
    field: &FiniteField,
    table: &CharacterTable,
    a4: Fq,
    a6: Fq,
    exec: Execution,
) -> Result<PointCount, CurveError> {
    // p > 3, so Delta vanishes iff 4 a4^3 + 27 a6^2 does
    let d = field.add(
        field.mul(field.from_i64(4), field.pow(a4, 3)),
        field.mul(field.from_i64(27), field.square(a6)),
    );
    if field.is_zero(d) {
        return Err(CurveError::Singular);
    }
    let sum = par::sum_range(field.order(), exec, |i| {
        cubic_character(field, table, field.element(i), a4, a6) as i64
    });
    Ok(PointCount::from_character_sum(field.order(), sum))
}

/// `N = q + 1 + sum_x chi(x^3 + a4 x + a6)`.
pub fn count_points(curve: &WeierstrassCurve<FieldElement>) -> Result<PointCount, CurveError> {
    let field = curve.a4.field().clone();
    let table = field.character_table();
    count_points_raw(
        &field,
        &table,
        curve.a4.value(),
        curve.a6.value(),
        Execution::Sequential,
    )
}

/// `(a4, a6) -> (d^2 a4, d^3 a6)`.
pub fn quadratic_twist(
    curve: &WeierstrassCurve<FieldElement>,
    d: &FieldElement,
) -> Result<WeierstrassCurve<FieldElement>, CurveError> {
    if d.is_zero_coeff() {
        return Err(CurveError::ZeroTwist);
    }
    Ok(WeierstrassCurve::new(
        d.pow_u(2) * curve.a4.clone(),
        d.pow_u(3) * curve.a6.clone(),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    Isomorphic,
    JMismatch,
    /// Same `j`, but no `u` in `F_q^*` with `a4' = u^4 a4` and `a6' = u^6 a6`.
    TwistClassMismatch,
}

/// Isomorphism test over `F_q` for smooth curves.
pub fn isomorphism_verdict(
    c1: &WeierstrassCurve<FieldElement>,
    c2: &WeierstrassCurve<FieldElement>,
) -> Result<IsoVerdict, CurveError> {
    let j1 = c1.j_invariant()?;
    let j2 = c2.j_invariant()?;
    if j1 != j2 {
        return Ok(IsoVerdict::JMismatch);
    }
    let field = c1.a4.field().clone();
    let a4_zero = c1.a4.is_zero_coeff();
    let a6_zero = c1.a6.is_zero_coeff();
    let twisted = if a4_zero {
        // j = 0: u^6 = a6'/a6
        let r = c2.a6.try_div(&c1.a6).expect("smooth");
        field.is_power(r.value(), 6)
    } else if a6_zero {
        // j = 1728: u^4 = a4'/a4
        let r = c2.a4.try_div(&c1.a4).expect("smooth");
        field.is_power(r.value(), 4)
    } else {
        // u^2 = (a6'/a6) / (a4'/a4)
        let r = (c2.a6.clone() * c1.a4.clone())
            .try_div(&(c1.a6.clone() * c2.a4.clone()))
            .expect("nonzero");
        field.is_power(r.value(), 2)
    };
    Ok(if twisted {
        IsoVerdict::Isomorphic
    } else {
        IsoVerdict::TwistClassMismatch
    })
}

pub fn is_isomorphic(
    c1: &WeierstrassCurve<FieldElement>,
    c2: &WeierstrassCurve<FieldElement>,
) -> Result<bool, CurveError> {
    Ok(isomorphism_verdict(c1, c2)? == IsoVerdict::Isomorphic)
}
