use std::fmt::Display;

use num_traits::Signed;

use super::{Check, Config, Outcome};
use crate::curves::modular_surface_curve;
use crate::identities::{
    verify_base_change, verify_hesse_weierstrass_link, verify_hessian_xi, verify_legendre_eta,
    verify_projection_degree, verify_surface_equation, IdentityReport,
};
use crate::invariants::{
    invariants_for, picard_number, pullback_invariants, BaseChangeSpec, Characteristic, RankVerdict,
};
use crate::kodaira::{minimal_model_at, FiberData, KodairaType};
use crate::lattices::{
    det_formula, even_forms_with_rotation, find_order4_isometry, is_similar_square, k3_fibers,
    supersingular_reduction_scalings, surface_fibers, torsion_search, torsion_search_multi,
    trivial_lattice, GramLattice,
};
use crate::modular_forms::{cm_weight3_bp, euler_factor, FormKind, GaussianInteger};
use crate::numeric::{int_rat, primes_between, rat, rational_sqrt, Integer, Rational};
use crate::surface_arith::{
    count_base_curve, count_surface_s, geometric_picard, lefschetz_b, picard_over, predicted_count,
    SurfaceModel,
};
use crate::symbolic::{Place, Valued};

fn lift<E: Display>(r: Result<Outcome, E>) -> Outcome {
    r.unwrap_or_else(Outcome::error)
}

fn identity(r: IdentityReport) -> Outcome {
    let expected: Vec<String> = r.parts.iter().map(|p| format!("{} = 0", p.label)).collect();
    let computed: Vec<String> = r.parts.iter().map(|p| format!("{} = {}", p.label, p.residual)).collect();
    let mut o = Outcome::new(expected.join("; "), computed.join("; "), r.passed());
    if let Some(w) = &r.witness {
        o = o.input("witness", w);
    }
    o
}

fn coefficient(series: Result<&crate::modular_forms::QSeries, String>, p: u64) -> Result<Integer, String> {
    let s = series?;
    s.coeff(p as usize)
        .cloned()
        .ok_or_else(|| format!("series order {} does not reach q^{p}", s.order()))
}

fn surface_checks(cfg: &Config, out: &mut Vec<Check>) {
    let anchors = [(5u64, -6i64), (13, 10)];
    for p in primes_between(5, cfg.pmax) {
        out.push(Check::new(
            format!("S5.lefschetz.p{p}"),
            "b_p from #S(F_p) = 1 + 12p + b_p + p^2 - (1+p) a_p is the p-th coefficient of eta(4 tau)^6 and pi^2 + conj(pi)^2",
            move |ctx| {
                lift((|| {
                    let t = lefschetz_b(p, 1, ctx.config.exec).map_err(|e| e.to_string())?;
                    let c = coefficient(ctx.weight3(), p)?;
                    let cm = cm_weight3_bp(p).map_err(|e| e.to_string())?;
                    let expected = match anchors.iter().find(|a| a.0 == p) {
                        Some(&(_, b)) => Integer::from(b),
                        None => cm.clone(),
                    };
                    let holds = Integer::from(t.b_q) == expected && c == expected && cm == expected;
                    Ok::<_, String>(
                        Outcome::new(
                            format!("b_p = {expected}"),
                            format!("count {}, eta(4tau)^6 {c}, Z[i] {cm}", t.b_q),
                            holds,
                        )
                        .input("p", p)
                        .input("#S(F_p)", t.count.total),
                    )
                })())
            },
        ));
        out.push(Check::new(
            format!("S5.base.p{p}"),
            "p + 1 - #B(F_p) is the p-th coefficient of eta(6 tau)^4",
            move |ctx| {
                lift((|| {
                    let c = coefficient(ctx.weight2(), p)?;
                    let nb = count_base_curve(p, 1).map_err(|e| e.to_string())?;
                    let a = p as i64 + 1 - nb as i64;
                    Ok::<_, String>(Outcome::compare(c, a).input("p", p).input("#B(F_p)", nb))
                })())
            },
        ));
        out.push(Check::new(
            format!("S5.zeta.p{p}"),
            "#S(F_p) agrees with the local zeta factor built from a_p and b_p",
            move |ctx| {
                lift((|| {
                    let pred = predicted_count(p, 1).map_err(|e| e.to_string())?;
                    let n = count_surface_s(p, 1, ctx.config.exec).map_err(|e| e.to_string())?;
                    Ok::<_, String>(Outcome::compare(pred, n.total).input("p", p))
                })())
            },
        ));
        out.push(Check::new(
            format!("S5.rank.p{p}"),
            "rank E(F_{p^r}(B)) is 1 for r odd and 2 for r even if p = 3 mod 4, and 0 if p = 1 mod 4",
            move |_| {
                lift((|| {
                    let f = euler_factor(p, FormKind::Weight3T)?;
                    let ranks: Vec<String> = (1..=2)
                        .map(|r| format!("r={r}: {}", picard_over(&f, r) - 12))
                        .collect();
                    let geo = geometric_picard(&f) - 12;
                    let computed = format!("{}; geometric {geo}", ranks.join(", "));
                    let o = if p % 4 == 3 {
                        Outcome::compare("r=1: 1, r=2: 2; geometric 2", computed).assuming("tate-k3")
                    } else {
                        Outcome::compare("r=1: 0, r=2: 0; geometric 0", computed)
                    };
                    Ok::<_, crate::modular_forms::ModularError>(o.input("p", p))
                })())
            },
        ));
        if p % 4 == 3 {
            out.push(Check::new(
                format!("S5.artin-tate.p{p}"),
                "det NS = -p^2 for p = 3 mod 4",
                move |_| {
                    lift((|| {
                        let f = euler_factor(p, FormKind::Weight3T).map_err(|e| e.to_string())?;
                        let det = crate::surface_arith::artin_tate_det(p).map_err(|e| e.to_string())?;
                        let rho = picard_over(&f, 2);
                        Ok::<_, String>(
                            Outcome::compare(
                                format!("rho(F_p^2) = 14, det NS = {}", -Integer::from(p * p)),
                                format!("rho(F_p^2) = {rho}, det NS = {det}"),
                            )
                            .assuming("artin-tate")
                            .input("p", p),
                        )
                    })())
                },
            ));
        }
    }
    for p in primes_between(5, cfg.p2max.min(cfg.pmax)) {
        out.push(Check::new(
            format!("S5.dichotomy.p{p}"),
            "b_p = 0 and b_{p^2} = 2p^2 for p = 3 mod 4; b_p = pi^2 + conj(pi)^2 != 0 for p = 1 mod 4",
            move |ctx| {
                lift((|| {
                    let b1 = lefschetz_b(p, 1, ctx.config.exec).map_err(|e| e.to_string())?.b_q;
                    let b2 = lefschetz_b(p, 2, ctx.config.exec).map_err(|e| e.to_string())?.b_q;
                    let computed = format!("b_p = {b1}, b_p^2 = {b2}");
                    let p2 = (p * p) as i64;
                    let o = if p % 4 == 3 {
                        Outcome::compare(format!("b_p = 0, b_p^2 = {}", 2 * p2), computed)
                    } else {
                        let pi = GaussianInteger::primary_prime_above(p).ok_or("p does not split")?;
                        let bp = &pi.pow(2).re * Integer::from(2);
                        let bp2 = &bp * &bp - Integer::from(2 * p2);
                        let same = computed == format!("b_p = {bp}, b_p^2 = {bp2}");
                        Outcome::new(
                            format!("b_p = {bp} != 0, b_p^2 = {bp2}"),
                            computed,
                            same && b1 != 0,
                        )
                        .input("pi", format!("{} + {}i", pi.re, pi.im))
                    };
                    Ok::<_, String>(o.input("p", p))
                })())
            },
        ));
    }
}

fn identity_checks(out: &mut Vec<Check>) {
    out.push(Check::new(
        "ID.legendre-eta",
        "j(E_lambda) - 1728 = eta(lambda)^2 with eta = 8(l+1)(l-2)(2l-1)/(l(l-1))",
        |_| identity(verify_legendre_eta()),
    ));
    out.push(Check::new(
        "ID.hessian-xi",
        "j = xi^3 for the Hesse pencil, xi = 3 mu (mu^3 + 8)/(mu^3 - 1)",
        |_| identity(verify_hessian_xi()),
    ));
    out.push(Check::new(
        "ID.hesse-link",
        "the Hesse cubic reduced at the flex (1:-1:0) has the j-invariant of the displayed Weierstrass model",
        |ctx| identity(verify_hesse_weierstrass_link(ctx.config.hesse_samples)).input("samples", ctx.config.hesse_samples),
    ));
    out.push(Check::new(
        "ID.surface-equation",
        "y^2 = x^3 - 27 xi x - 54 eta has Delta = 6^12 and j = xi^3",
        |_| identity(verify_surface_equation()),
    ));
    out.push(Check::new(
        "ID.base-change",
        "t = eta pulls X back to S up to the twist by u = xi^2",
        |_| identity(verify_base_change()),
    ));
    out.push(Check::new(
        "ID.projection-degree",
        "(xi, eta) -> eta has degree 3",
        |_| identity(verify_projection_degree(10007, 10009, 20)),
    ));
}

fn describe_fiber(f: &FiberData, v_delta: i64) -> String {
    format!("{}, m = {}, e = {}, v(Delta) = {v_delta}", f.kind, f.components, f.euler)
}

fn kodaira_checks(cfg: &Config, out: &mut Vec<Check>) {
    out.push(Check::new(
        "KOD.S.origin",
        "S has a fiber of type I6* over o_B, with v(j) = -6",
        |_| {
            lift((|| {
                let e = modular_surface_curve();
                let m = minimal_model_at(&e, &Place::OriginB)?;
                let f = FiberData::of_type(m.kodaira_type()?);
                let vj = e.j_invariant().map_err(|e| e.to_string())?.valuation(&Place::OriginB)?;
                Ok::<_, Box<dyn std::error::Error>>(Outcome::compare(
                    "I6*, m = 11, e = 12, v(Delta) = 12; v(j) = -6",
                    format!("{}; v(j) = {vj}", describe_fiber(&f, m.v_delta)),
                ))
            })())
        },
    ));
    out.push(Check::new(
        "KOD.X.fibers",
        "X has I2* at t = inf and IV* at t^2 + 1728 = 0",
        |_| {
            lift((|| {
                let x = SurfaceModel::x()?;
                let c = crate::curves::k3_curve();
                let mut parts = Vec::new();
                for f in &x.fibers {
                    let m = minimal_model_at(&c, &f.place)?;
                    parts.push(format!("{}: {}", f.place, describe_fiber(&f.data, m.v_delta)));
                }
                Ok::<_, crate::surface_arith::SurfaceError>(Outcome::compare(
                    "t=inf: I2*, m = 7, e = 8, v(Delta) = 8; (t^2 + 1728): IV*, m = 7, e = 8, v(Delta) = 8",
                    parts.join("; "),
                ))
            })())
        },
    ));
    out.push(Check::new(
        "KOD.euler-sums",
        "sum of fiber Euler numbers is 12 chi: 12 for S, 24 for X",
        |_| {
            lift((|| {
                let s = SurfaceModel::s()?;
                let x = SurfaceModel::x()?;
                Ok::<_, crate::surface_arith::SurfaceError>(Outcome::compare(
                    "S 12, X 24",
                    format!("S {}, X {}", s.euler_sum(), x.euler_sum()),
                ))
            })())
        },
    ));
    let p2max = cfg.p2max.min(cfg.pmax);
    out.push(Check::new(
        "KOD.S.affine-good",
        "all fibers of S over affine points of B are smooth",
        move |ctx| {
            lift((|| {
                let mut bad = Vec::new();
                for p in primes_between(5, p2max) {
                    let n = count_surface_s(p, 1, ctx.config.exec)?;
                    if n.bad_affine_fibers > 0 {
                        bad.push(format!("p{p}: {}", n.bad_affine_fibers));
                    }
                }
                let computed = if bad.is_empty() { "none".into() } else { bad.join(", ") };
                Ok::<_, crate::surface_arith::SurfaceError>(
                    Outcome::compare("none", computed).input("primes", format!("5..={p2max}")),
                )
            })())
        },
    ));
}

/// `det` of the rank-2 even lattice with a rotation, as its unique scale.
fn rotation_scale(det: i64, bound: i64) -> Result<Rational, String> {
    match even_forms_with_rotation(det, bound).as_slice() {
        [f] if f.b == Rational::from(Integer::from(0)) && f.a == f.c => Ok(f.a.clone()),
        other => Err(format!("det {det}: {} candidate forms", other.len())),
    }
}

fn lattice_checks(cfg: &Config, out: &mut Vec<Check>) {
    out.push(Check::new(
        "LAT.trivial",
        "det V_S = -4 and det V_X = -36",
        |_| {
            Outcome::compare(
                "V_S -4, V_X -36",
                format!(
                    "V_S {}, V_X {}",
                    trivial_lattice(1, &surface_fibers()).det(),
                    trivial_lattice(2, &k3_fibers()).det()
                ),
            )
        },
    ));
    out.push(Check::new(
        "LAT.transcendental",
        "T_S = L0[2] and T_X = L0[6]",
        |ctx| {
            lift((|| {
                // E(K) = 0 in characteristic 0, so NS = V and |det T| = |det V|
                let ds = trivial_lattice(1, &surface_fibers()).det();
                let dx = trivial_lattice(2, &k3_fibers()).det();
                let to_i = |d: Rational| -> Result<i64, String> {
                    i64::try_from(d.abs().to_integer()).map_err(|e| e.to_string())
                };
                let (ds, dx) = (to_i(ds)?, to_i(dx)?);
                let b = ctx.config.isometry_bound;
                Ok::<_, String>(Outcome::compare(
                    "|det T_S| 4, scale 2; |det T_X| 36, scale 6",
                    format!(
                        "|det T_S| {ds}, scale {}; |det T_X| {dx}, scale {}",
                        rotation_scale(ds, b)?,
                        rotation_scale(dx, b)?
                    ),
                ))
            })())
        },
    ));
    out.push(Check::new(
        "LAT.torsion",
        "no torsion: 2 chi + 2 (PO) = contr has no solution (PO) >= 0",
        |_| {
            let kinds = [KodairaType::IStar(6), KodairaType::IStar(2), KodairaType::IVStar];
            let mut parts: Vec<String> = kinds
                .iter()
                .map(|&k| format!("{k}: {}", torsion_search(1, &FiberData::of_type(k)).len()))
                .collect();
            parts.push(format!("X config at chi 2: {}", torsion_search_multi(2, &k3_fibers()).len()));
            Outcome::compare("I6*: 0, I2*: 0, IV*: 0, X config at chi 2: 0", parts.join(", "))
        },
    ));
    let bound = cfg.isometry_bound;
    let ss: Vec<u64> = primes_between(7, cfg.pmax).into_iter().filter(|p| p % 4 == 3).collect();
    for p in ss {
        out.push(Check::new(
            format!("LAT.detformula.p{p}"),
            "det E(K) = (p/2)^2 and det E(k(t)) = (p/6)^2 when det NS = -p^2",
            move |_| {
                lift((|| {
                    let ns = -int_rat((p * p) as i64);
                    let ms = det_formula(&ns, &trivial_lattice(1, &surface_fibers()), 1)?;
                    let mx = det_formula(&ns, &trivial_lattice(2, &k3_fibers()), 1)?;
                    let p = p as i64;
                    Ok::<_, crate::lattices::LatticeError>(
                        Outcome::compare(
                            format!("{}, {}", rat(p * p, 4), rat(p * p, 36)),
                            format!("{ms}, {mx}"),
                        )
                        .assuming("artin-tate")
                        .input("det NS", ns),
                    )
                })())
            },
        ));
        out.push(Check::new(
            format!("LAT.prop10.p{p}"),
            "T_S, T_X, L_S(p), L_X(p) are L0 scaled by 2, 6, 2p, 6p",
            move |_| {
                lift((|| {
                    let r = supersingular_reduction_scalings(p).map_err(|e| e.to_string())?;
                    let ts = rotation_scale(4, bound)?;
                    let tx = rotation_scale(36, bound)?;
                    let mut agree = true;
                    for c in [2, 6, 2 * p as i64, 6 * p as i64] {
                        let l = GramLattice::from_int_rows(&[&[c, 0], &[0, c]]).expect("symmetric");
                        agree &= find_order4_isometry(&l, bound).is_some()
                            && is_similar_square(&l) == Some(int_rat(c));
                    }
                    // [E(K) : E(K)^0]^2 = det E(K)^0 / det E(K)
                    let ratio = |d: i64, det_mw: &str| -> Option<Rational> {
                        let m: Rational = det_mw.parse().ok()?;
                        rational_sqrt(&(int_rat(d) / m))
                    };
                    let is = ratio(r.s.det, &r.s.det_mw).ok_or("no index for S")?;
                    let ix = ratio(r.x.det, &r.x.det_mw).ok_or("no index for X")?;
                    Ok::<_, String>(
                        Outcome::compare(
                            format!("{}, {}, {}, {}; indices 4, 36; isometry and similarity agree", 2, 6, 2 * p, 6 * p),
                            format!(
                                "{ts}, {tx}, {}, {}; indices {is}, {ix}; isometry and similarity {}",
                                r.s.scale,
                                r.x.scale,
                                if agree { "agree" } else { "disagree" }
                            ),
                        )
                        .assuming("artin-tate")
                        .input("p", p),
                    )
                })())
            },
        ));
    }
}

fn invariant_checks(out: &mut Vec<Check>) {
    out.push(Check::new(
        "INV.hodge.S",
        "S has e = 12, b2 = 14 and Hodge diamond (1; 1, 1; 1, 12, 1; 1, 1; 1)",
        |_| {
            lift(invariants_for(1, 1).map(|i| {
                let rows: Vec<String> = i
                    .hodge
                    .iter()
                    .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
                    .collect();
                Outcome::compare(
                    "e = 12, b2 = 14, (1; 1, 1; 1, 12, 1; 1, 1; 1)",
                    format!("e = {}, b2 = {}, ({})", i.e, i.b2, rows.join("; ")),
                )
            }))
        },
    ));
    out.push(Check::new(
        "INV.picard.S.char0",
        "rho(S) = 12 over C",
        |_| Outcome::compare(12, picard_number(0, &surface_fibers())),
    ));
    out.push(Check::new(
        "INV.picard.S.supersingular",
        "rho(S) = 14 over the algebraic closure of F_p, p = 3 mod 4",
        |_| Outcome::compare(14, picard_number(2, &surface_fibers())).assuming("tate-k3"),
    ));
    for n in 1..=10i64 {
        out.push(Check::new(
            format!("INV.pullback.n{n}"),
            "the pullback of S along multiplication by n on B has Mordell-Weil rank 0 and e = 12 n^2",
            move |_| {
                let spec = BaseChangeSpec {
                    n,
                    chi: 1,
                    fibers: surface_fibers(),
                    mw_rank: 0,
                };
                lift(pullback_invariants(&spec, Characteristic::Zero).map(|r| {
                    let verdict = match r.verdict {
                        RankVerdict::Zero => "rank 0",
                        RankVerdict::Inconclusive => "inconclusive",
                    };
                    let holds = r.verdict == RankVerdict::Zero && r.invariants.e == 12 * n * n;
                    Outcome::new(
                        format!("rank 0, e = {}", 12 * n * n),
                        format!(
                            "{verdict}, e = {} (rho {} = {} {})",
                            r.invariants.e, r.rho_lower, r.bound_name, r.rho_upper
                        ),
                        holds,
                    )
                    .input("n", n)
                }))
            },
        ));
    }
}

/// Every check for this configuration, unsorted.
pub fn registry(cfg: &Config) -> Vec<Check> {
    let mut out = Vec::new();
    surface_checks(cfg, &mut out);
    identity_checks(&mut out);
    kodaira_checks(cfg, &mut out);
    lattice_checks(cfg, &mut out);
    invariant_checks(&mut out);
    out
}
