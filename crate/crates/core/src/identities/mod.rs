//! Exact checks of the displayed identities: the Legendre and Hesse
//! j-invariants, the curve over `B`, and the base change from `X` to `S`.
//! Every check carries its residuals, so a failure shows what is left over.

use serde::Serialize;

use crate::curves::{
    hessian_weierstrass, k3_curve, legendre_curve, modular_surface_curve, nagell_reduce,
    CurveError, PlaneCubic, WeierstrassCurve,
};
use crate::numeric::{int_rat, Coefficient, FiniteField, Rational};
use crate::symbolic::{gcd_univariate, BFieldElement, MultiPoly, RationalFunction, Var};

/// One equation `lhs = rhs`, recorded as `lhs - rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityPart {
    pub label: String,
    pub residual: String,
    pub holds: bool,
}

impl IdentityPart {
    fn ratfun(label: &str, lhs: &RationalFunction, rhs: &RationalFunction) -> Self {
        let r = lhs - rhs;
        Self {
            label: label.into(),
            holds: r.is_zero(),
            residual: r.to_string(),
        }
    }

    fn bfield(label: &str, lhs: &BFieldElement, rhs: &BFieldElement) -> Self {
        let r = lhs - rhs;
        Self {
            label: label.into(),
            holds: r.is_zero(),
            residual: r.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub name: &'static str,
    pub parts: Vec<IdentityPart>,
    pub witness: Option<String>,
    pub notes: Vec<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.parts.iter().all(|p| p.holds)
    }
}

fn poly(v: Var, c: &[i64]) -> RationalFunction {
    MultiPoly::from_int_dense(v, c).into()
}

/// `eta(lambda) = 8 (lambda + 1)(lambda - 2)(2 lambda - 1) / (lambda (lambda - 1))`.
pub fn legendre_eta() -> RationalFunction {
    let l = |c: &[i64]| poly(Var::Lambda, c);
    let num = l(&[1, 1]) * l(&[-2, 1]) * l(&[-1, 2]) * RationalFunction::int(8);
    let den = l(&[0, 1]) * l(&[-1, 1]);
    num * den.inverse().expect("nonzero")
}

/// `xi(mu) = 3 mu (mu^3 + 8) / (mu^3 - 1)`.
pub fn hesse_xi() -> RationalFunction {
    let top = poly(Var::Mu, &[0, 24, 0, 0, 3]);
    let bottom = poly(Var::Mu, &[-1, 0, 0, 1]);
    top * bottom.inverse().expect("nonzero")
}

/// `j(E_lambda) - 1728 = eta(lambda)^2`.
pub fn verify_legendre_eta() -> IdentityReport {
    let j = legendre_curve().j_invariant().expect("generic Legendre curve is smooth");
    let eta = legendre_eta();
    let lhs = j - RationalFunction::int(1728);
    IdentityReport {
        name: "legendre-eta",
        parts: vec![IdentityPart::ratfun("j(E_lambda) - 1728 - eta^2", &lhs, &(&eta * &eta))],
        witness: None,
        notes: vec![],
    }
}

/// `j = xi^3` for the displayed Weierstrass model of the Hesse pencil.
pub fn verify_hessian_xi() -> IdentityReport {
    let j = hessian_weierstrass().j_invariant().expect("generic member is smooth");
    let xi = hesse_xi();
    IdentityReport {
        name: "hessian-xi",
        parts: vec![IdentityPart::ratfun("j(E_mu) - xi^3", &j, &xi.pow(3))],
        witness: None,
        notes: vec![],
    }
}

/// Two rational functions of degree at most 36 that agree at 73 points
/// are equal.
pub const HESSE_INTERPOLATION_BOUND: usize = 73;

/// Deterministic sample parameters: `-50, -49, ...`, skipping `mu = 1`.
pub fn hesse_samples(count: usize) -> Vec<Rational> {
    (-50i64..)
        .filter(|&m| m != 1)
        .take(count)
        .map(int_rat)
        .collect()
}

/// Nagell reduction of `X^3 + Y^3 + Z^3 - 3 mu XYZ` at `(1 : -1 : 0)`,
/// compared with the displayed model, at each sample `mu`.
pub fn verify_hesse_weierstrass_link(samples: usize) -> IdentityReport {
    let model = hessian_weierstrass();
    let flex = [int_rat(1), int_rat(-1), int_rat(0)];
    let mut parts = Vec::new();
    let mut notes = Vec::new();
    let mut agreed = 0usize;
    for mu in hesse_samples(samples) {
        let reduced = match nagell_reduce(&PlaneCubic::hesse(&mu), &flex) {
            Ok(e) => e,
            Err(CurveError::Singular) => {
                notes.push(format!("mu = {mu}: singular, skipped"));
                continue;
            }
            Err(e) => {
                parts.push(IdentityPart {
                    label: format!("mu = {mu}"),
                    residual: e.to_string(),
                    holds: false,
                });
                continue;
            }
        };
        let a4 = model.a4.eval(&[(Var::Mu, mu.clone())]).expect("polynomial");
        let a6 = model.a6.eval(&[(Var::Mu, mu.clone())]).expect("polynomial");
        let displayed = WeierstrassCurve::new(a4, a6).j_invariant();
        let ok = match (reduced.j_invariant(), displayed) {
            (Ok(a), Ok(b)) if a == b => {
                agreed += 1;
                None
            }
            (a, b) => Some(format!("{a:?} vs {b:?}")),
        };
        if let Some(r) = ok {
            parts.push(IdentityPart {
                label: format!("mu = {mu}"),
                residual: r,
                holds: false,
            });
        }
    }
    let enough = agreed >= HESSE_INTERPOLATION_BOUND;
    parts.push(IdentityPart {
        label: format!("agreeing samples short of {HESSE_INTERPOLATION_BOUND}"),
        residual: HESSE_INTERPOLATION_BOUND.saturating_sub(agreed).to_string(),
        holds: enough,
    });
    notes.push(format!(
        "{agreed} of {samples} samples agree; interpolation bound {HESSE_INTERPOLATION_BOUND}"
    ));
    IdentityReport {
        name: "hesse-weierstrass-link",
        parts,
        witness: Some(agreed.to_string()),
        notes,
    }
}

/// `Delta = 6^12`, `j = xi^3`, `c4 = 6^4 xi` in the function field of `B`.
pub fn verify_surface_equation() -> IdentityReport {
    let e = modular_surface_curve();
    let xi = BFieldElement::xi();
    IdentityReport {
        name: "surface-equation",
        parts: vec![
            IdentityPart::bfield("Delta - 6^12", &e.discriminant(), &BFieldElement::int(2_176_782_336)),
            IdentityPart::bfield("j - xi^3", &e.j_invariant().expect("smooth"), &xi.pow(3)),
            IdentityPart::bfield("c4 - 6^4 xi", &e.c4(), &(BFieldElement::int(1296) * xi.clone())),
        ],
        witness: None,
        notes: vec![],
    }
}

/// Substitute `t = eta` in the model of `X`, reduce with the relation of
/// `B`, and find `u = xi^k` with `(a4 / u^4, a6 / u^6)` equal to the model
/// of `S`. Exponents `|k| <= 12` are tried.
pub fn verify_base_change() -> IdentityReport {
    let x = k3_curve();
    let eta = BFieldElement::eta();
    let xi = BFieldElement::xi();
    let pull = |f: &RationalFunction| {
        BFieldElement::eval_poly_at(&f.as_poly().expect("polynomial coefficient"), Var::T, &eta)
            .expect("univariate in t")
    };
    let a4 = pull(&x.a4);
    let a6 = pull(&x.a6);
    let want_a4 = BFieldElement::int(-27) * xi.pow(9);
    let want_a6 = BFieldElement::int(-54) * eta.clone() * xi.pow(12);
    let target = modular_surface_curve();

    let witness = (-12i64..=12).find(|&k| {
        let u = if k >= 0 {
            xi.pow(k as u32)
        } else {
            xi.inverse().expect("nonzero").pow((-k) as u32)
        };
        let u4 = u.pow_u(4).try_inverse().expect("nonzero");
        let u6 = u.pow_u(6).try_inverse().expect("nonzero");
        a4.clone() * u4 == target.a4 && a6.clone() * u6 == target.a6
    });
    let mut parts = vec![
        IdentityPart::bfield("a4(t = eta) + 27 xi^9", &a4, &want_a4),
        IdentityPart::bfield("a6(t = eta) + 54 eta xi^12", &a6, &want_a6),
    ];
    parts.push(IdentityPart {
        label: "(a4/u^4, a6/u^6) = (-27 xi, -54 eta) for u = xi^k".into(),
        residual: if witness.is_some() { "0".into() } else { "no k in [-12, 12]".into() },
        holds: witness.is_some(),
    });
    IdentityReport {
        name: "base-change",
        parts,
        witness: witness.map(|k| format!("u = xi^{k}")),
        notes: vec![],
    }
}

/// `(xi, eta) -> eta` has degree 3: the relation is a cubic in `xi` over
/// `Q(eta)` that is irreducible because `eta^2 + 1728` is squarefree (so not
/// a cube). Over `F_p` with `p = 2 mod 3` cubing is bijective and every
/// `eta_0` has exactly one preimage; with `p = 1 mod 3`, generic fibers have
/// 0 or 3 points.
pub fn verify_projection_degree(p_bij: u64, p_split: u64, samples: u64) -> IdentityReport {
    let rhs = &MultiPoly::from_int_dense(Var::Eta, &[1728, 0, 1]);
    let relation = MultiPoly::var(Var::Xi).pow(3) - MultiPoly::var(Var::Eta).pow(2) - MultiPoly::int(1728);
    let mut parts = Vec::new();
    let deg = relation.degree_in(Var::Xi).unwrap_or(0);
    parts.push(IdentityPart {
        label: "deg_xi of xi^3 - eta^2 - 1728".into(),
        residual: (deg as i64 - 3).to_string(),
        holds: deg == 3,
    });
    let g = gcd_univariate(rhs, &rhs.derivative(Var::Eta), Var::Eta);
    parts.push(IdentityPart {
        label: "gcd(eta^2 + 1728, 2 eta) = 1".into(),
        residual: (&g - &MultiPoly::one()).to_string(),
        holds: g == MultiPoly::one(),
    });

    let fiber_sizes = |p: u64| -> Option<Vec<u64>> {
        let f = FiniteField::prime(p).ok()?;
        let c = f.from_i64(1728);
        Some(
            (1..=samples)
                .map(|k| {
                    let e0 = f.from_i64(k as i64);
                    let val = f.add(f.square(e0), c);
                    f.elements().filter(|&x| f.pow(x, 3) == val).count() as u64
                })
                .collect(),
        )
    };
    let mut notes = Vec::new();
    match fiber_sizes(p_bij) {
        Some(s) if p_bij % 3 == 2 => {
            let ok = s.iter().all(|&n| n == 1);
            parts.push(IdentityPart {
                label: format!("one preimage per eta_0 over F_{p_bij}"),
                residual: if ok { "0".into() } else { format!("{s:?}") },
                holds: ok,
            });
        }
        _ => parts.push(IdentityPart {
            label: format!("F_{p_bij} with p = 2 mod 3"),
            residual: "invalid prime".into(),
            holds: false,
        }),
    }
    match fiber_sizes(p_split) {
        Some(s) if p_split % 3 == 1 => {
            let ok = s.iter().all(|&n| n == 0 || n == 3);
            let split = s.iter().filter(|&&n| n == 3).count();
            notes.push(format!("F_{p_split}: {split} of {samples} fibers split completely"));
            parts.push(IdentityPart {
                label: format!("0 or 3 preimages per eta_0 over F_{p_split}"),
                residual: if ok { "0".into() } else { format!("{s:?}") },
                holds: ok,
            });
        }
        _ => parts.push(IdentityPart {
            label: format!("F_{p_split} with p = 1 mod 3"),
            residual: "invalid prime".into(),
            holds: false,
        }),
    }
    IdentityReport {
        name: "projection-degree",
        parts,
        witness: Some(deg.to_string()),
        notes,
    }
}

/// `Some(value)` of a rational function at a rational point, `None` at a pole.
pub fn eval_at(f: &RationalFunction, v: Var, x: &Rational) -> Option<Rational> {
    f.eval(&[(v, x.clone())]).ok()
}
