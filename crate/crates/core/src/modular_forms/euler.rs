use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use super::{cm_weight3_bp, ModularError};
use crate::curves::{count_points, WeierstrassCurve};
use crate::numeric::{is_prime, FieldElement, FiniteField, Integer};

/// `1 - a T + eps p^{w-1} T^2`, with `eps` the nebentypus character at `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerFactor {
    pub p: u64,
    pub weight: u32,
    #[serde(serialize_with = "ser_int")]
    pub a: Integer,
    pub epsilon: i8,
}

fn ser_int<S: serde::Serializer>(n: &Integer, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

impl EulerFactor {
    /// `eps p^{w-1}`, the product of the two Frobenius eigenvalues.
    pub fn eigenvalue_product(&self) -> Integer {
        Integer::from(self.epsilon) * num_traits::pow(Integer::from(self.p), self.weight as usize - 1)
    }

    /// `alpha^r + beta^r` by `s_r = a s_{r-1} - eps p^{w-1} s_{r-2}`.
    pub fn power_sum(&self, r: u32) -> Integer {
        let c = self.eigenvalue_product();
        let (mut s0, mut s1) = (Integer::from(2), self.a.clone());
        if r == 0 {
            return s0;
        }
        for _ in 1..r {
            let s2 = &self.a * &s1 - &c * &s0;
            s0 = s1;
            s1 = s2;
        }
        s1
    }

    /// `a^2 <= 4 p^{w-1}`.
    pub fn within_bound(&self) -> bool {
        let b = num_traits::pow(Integer::from(self.p), self.weight as usize - 1);
        &self.a * &self.a <= Integer::from(4) * b
    }

    /// `[1, -a, eps p^{w-1}]`.
    pub fn coefficients(&self) -> [Integer; 3] {
        [Integer::one(), -self.a.clone(), self.eigenvalue_product()]
    }
}

impl fmt::Display for EulerFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [_, b, c] = self.coefficients();
        write!(f, "1 + ({b})T + ({c})T^2")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormKind {
    /// Weight 2, level 36: the base curve `B`.
    Weight2B,
    /// Weight 3 with CM by `Q(i)`: the transcendental part of `H^2(S)`.
    Weight3T,
}

fn check_prime(p: u64) -> Result<(), ModularError> {
    if p <= 3 || !is_prime(p) {
        return Err(ModularError::BadPrime(p));
    }
    Ok(())
}

/// `a_p = p + 1 - #B(F_p)` for `B: y^2 = x^3 - 1728`.
pub fn base_curve_ap(p: u64) -> Result<Integer, ModularError> {
    check_prime(p)?;
    let f = Arc::new(FiniteField::prime(p).map_err(|_| ModularError::BadPrime(p))?);
    let b = WeierstrassCurve::new(FieldElement::from_i64(&f, 0), FieldElement::from_i64(&f, -1728));
    Ok(count_points(&b).expect("B has good reduction away from 2, 3").trace.into())
}

/// `chi_{-4}(p)`.
pub fn chi_minus4(p: u64) -> i8 {
    match p % 4 {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

pub fn euler_factor(p: u64, form: FormKind) -> Result<EulerFactor, ModularError> {
    check_prime(p)?;
    Ok(match form {
        FormKind::Weight2B => EulerFactor {
            p,
            weight: 2,
            a: base_curve_ap(p)?,
            epsilon: 1,
        },
        FormKind::Weight3T => EulerFactor {
            p,
            weight: 3,
            a: cm_weight3_bp(p)?,
            epsilon: chi_minus4(p),
        },
    })
}

/// Local zeta factor of `S` at a good prime:
/// `P1(T) P3(T) / ((1 - T) (1 - pT)^12 P2(T) (1 - p^2 T))`, where `P1` is
/// the weight-2 factor, `P3(T) = P1(pT)` and `P2` the weight-3 factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalZeta {
    pub p: u64,
    pub h1: EulerFactor,
    pub h2_transcendental: EulerFactor,
    pub algebraic_rank: u32,
}

pub fn zeta_local(p: u64) -> Result<LocalZeta, ModularError> {
    Ok(LocalZeta {
        p,
        h1: euler_factor(p, FormKind::Weight2B)?,
        h2_transcendental: euler_factor(p, FormKind::Weight3T)?,
        algebraic_rank: 12,
    })
}

impl LocalZeta {
    /// Trace of `Frob^r` on `H^2`: the algebraic classes give `12 q`.
    pub fn h2_trace(&self, r: u32) -> Integer {
        let q = num_traits::pow(Integer::from(self.p), r as usize);
        Integer::from(self.algebraic_rank) * q + self.h2_transcendental.power_sum(r)
    }

    /// `#S(F_{p^r}) = 1 - tr H^1 + tr H^2 - tr H^3 + q^2` with
    /// `tr H^3 = q tr H^1`.
    pub fn predicted_count(&self, r: u32) -> Integer {
        let q = num_traits::pow(Integer::from(self.p), r as usize);
        let t1 = self.h1.power_sum(r);
        Integer::one() - &t1 + self.h2_trace(r) - &q * &t1 + &q * &q
    }

    pub fn describe(&self) -> String {
        let p = self.p;
        format!(
            "[{h1}] [1 + ({a3})T + ({c3})T^2] / ((1 - T)(1 - {p}T)^12 [{h2}] (1 - {p2}T))",
            h1 = self.h1,
            a3 = -(&self.h1.a * Integer::from(p)),
            c3 = Integer::from(p).pow(3),
            h2 = self.h2_transcendental,
            p2 = p * p,
        )
    }
}

/// Whether `alpha/p` and `beta/p` are roots of unity, i.e. the weight-3
/// part becomes algebraic (Tate classes) after a finite extension.
///
/// They are the roots of `x^2 - t x + eps` with `t = a/p`; roots of unity
/// force `t` integral, and then `|t| <= 2` for `eps = 1`, `t = 0` for
/// `eps = -1`.
pub fn eigenvalues_become_algebraic(f: &EulerFactor) -> bool {
    if f.weight != 3 {
        return false;
    }
    let p = Integer::from(f.p);
    if !(&f.a % &p).is_zero() {
        return false;
    }
    let t = &f.a / &p;
    match f.epsilon {
        1 => *t.magnitude() <= num_bigint::BigUint::from(2u32),
        -1 => t.is_zero(),
        _ => false,
    }
}
