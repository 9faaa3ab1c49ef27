//! Acceptance gate: one line per criterion, nonzero exit on any failure.
//! Every comparison is exact; only the runtime limits are tolerances.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use commsurf::curves::{k3_curve, modular_surface_curve};
use commsurf::identities::{
    verify_base_change, verify_hesse_weierstrass_link, verify_hessian_xi, verify_legendre_eta,
    verify_surface_equation, HESSE_INTERPOLATION_BOUND,
};
use commsurf::invariants::{
    invariants_for, picard_number, pullback_invariants, BaseChangeSpec, Characteristic, RankVerdict,
};
use commsurf::kodaira::{minimal_model_at, FiberData, KodairaType};
use commsurf::lattices::{
    det_formula, even_forms_with_rotation, find_order4_isometry, is_similar_square, k3_fibers,
    supersingular_reduction_scalings, surface_fibers, torsion_search, trivial_lattice, GramLattice,
};
use commsurf::modular_forms::{cm_weight3_bp, eta_power, GaussianInteger};
use commsurf::numeric::{int_rat, primes_between, rat, Integer};
use commsurf::par::Execution;
use commsurf::surface_arith::{count_base_curve, lefschetz_b, SurfaceModel};
use commsurf::symbolic::{MultiPoly, Place, Valued, Var};

type Verdict = Result<(), String>;
type Criterion = (&'static str, Duration, fn() -> Verdict);

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Verdict {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn b(p: u64, r: usize) -> Result<i64, String> {
    lefschetz_b(p, r, Execution::Parallel).map(|t| t.b_q).map_err(|e| e.to_string())
}

fn anchors() -> Verdict {
    let (b5, b13) = (b(5, 1)?, b(13, 1)?);
    ensure((b5, b13) == (-6, 10), || format!("b5 = {b5}, b13 = {b13}"))
}

fn modularity_sweep() -> Verdict {
    let pmax = 199;
    let order = 4 * pmax as usize + 16;
    let w2 = eta_power(6, 4, order).map_err(|e| e.to_string())?;
    let w3 = eta_power(4, 6, order).map_err(|e| e.to_string())?;
    for p in primes_between(5, pmax) {
        let a = Integer::from(p as i64 + 1 - count_base_curve(p, 1).map_err(|e| e.to_string())? as i64);
        let bp = Integer::from(b(p, 1)?);
        let cm = cm_weight3_bp(p).map_err(|e| e.to_string())?;
        let (c2, c3) = (&w2.coeffs()[p as usize], &w3.coeffs()[p as usize]);
        ensure(*c2 == a, || format!("p = {p}: eta(6tau)^4 gives {c2}, count gives {a}"))?;
        ensure(*c3 == bp && bp == cm, || format!("p = {p}: series {c3}, count {bp}, Z[i] {cm}"))?;
    }
    Ok(())
}

fn dichotomy() -> Verdict {
    for p in [7u64, 11, 19, 23, 31, 43] {
        let (b1, b2) = (b(p, 1)?, b(p, 2)?);
        let want = 2 * (p * p) as i64;
        ensure(b1 == 0 && b2 == want, || format!("p = {p}: b_p = {b1}, b_p^2 = {b2}"))?;
    }
    for p in [5u64, 13, 17, 29, 37, 41] {
        let pi = GaussianInteger::primary_prime_above(p).ok_or(format!("{p} does not split"))?;
        let sq = pi.pow(2);
        let want = &sq.re + &sq.conj().re;
        let b1 = Integer::from(b(p, 1)?);
        ensure(b1 == want && b1 != Integer::from(0), || format!("p = {p}: b_p = {b1}, expected {want}"))?;
    }
    Ok(())
}

fn fibers() -> Verdict {
    let e = modular_surface_curve();
    let m = minimal_model_at(&e, &Place::OriginB).map_err(|e| e.to_string())?;
    let f = FiberData::of_type(m.kodaira_type().map_err(|e| e.to_string())?);
    let vj = e
        .j_invariant()
        .map_err(|e| e.to_string())?
        .valuation(&Place::OriginB)
        .map_err(|e| e.to_string())?;
    ensure(
        f.kind == KodairaType::IStar(6) && f.components == 11 && m.v_delta == 12 && vj.finite() == Some(-6),
        || format!("o_B: {} m = {} v(Delta) = {} v(j) = {vj}", f.kind, f.components, m.v_delta),
    )?;
    let x = k3_curve();
    let g = Place::finite(MultiPoly::from_int_dense(Var::T, &[1728, 0, 1])).map_err(|e| e.to_string())?;
    for (place, kind) in [(Place::Infinity(Var::T), KodairaType::IStar(2)), (g, KodairaType::IVStar)] {
        let m = minimal_model_at(&x, &place).map_err(|e| e.to_string())?;
        let got = m.kodaira_type().map_err(|e| e.to_string())?;
        ensure(got == kind && m.v_delta == 8, || format!("{place}: {got}, v(Delta) = {}", m.v_delta))?;
    }
    let s = SurfaceModel::s().map_err(|e| e.to_string())?.euler_sum();
    let x = SurfaceModel::x().map_err(|e| e.to_string())?.euler_sum();
    ensure((s, x) == (12, 24), || format!("Euler sums {s}, {x}"))
}

fn identities() -> Verdict {
    for r in [verify_legendre_eta(), verify_hessian_xi(), verify_surface_equation(), verify_base_change()] {
        ensure(r.passed(), || format!("{}: {:?}", r.name, r.parts))?;
    }
    let w = verify_base_change().witness;
    ensure(w.as_deref() == Some("u = xi^2"), || format!("witness {w:?}"))?;
    let h = verify_hesse_weierstrass_link(100);
    ensure(h.passed() && 100 > HESSE_INTERPOLATION_BOUND, || format!("hesse: {:?}", h.parts))
}

fn lattices() -> Verdict {
    let vs = trivial_lattice(1, &surface_fibers()).det();
    let vx = trivial_lattice(2, &k3_fibers()).det();
    ensure(vs == int_rat(-4) && vx == int_rat(-36), || format!("det V_S = {vs}, det V_X = {vx}"))?;
    for (det, scale) in [(4i64, 2i64), (36, 6)] {
        let f = even_forms_with_rotation(det, 10);
        ensure(f.len() == 1 && f[0].a == int_rat(scale) && f[0].c == int_rat(scale), || {
            format!("transcendental det {det}: {f:?}")
        })?;
    }
    for k in [KodairaType::IStar(6), KodairaType::IStar(2), KodairaType::IVStar] {
        ensure(torsion_search(1, &FiberData::of_type(k)).is_empty(), || format!("torsion candidate at {k}"))?;
    }
    for p in [7i64, 11, 19, 23] {
        let ns = int_rat(-p * p);
        let ms = det_formula(&ns, &trivial_lattice(1, &surface_fibers()), 1).map_err(|e| e.to_string())?;
        let mx = det_formula(&ns, &trivial_lattice(2, &k3_fibers()), 1).map_err(|e| e.to_string())?;
        ensure(ms == rat(p * p, 4) && mx == rat(p * p, 36), || format!("p = {p}: {ms}, {mx}"))?;
        let r = supersingular_reduction_scalings(p as u64).map_err(|e| e.to_string())?;
        ensure(r.s.scale == 2 * p && r.x.scale == 6 * p, || format!("p = {p}: {} {}", r.s.scale, r.x.scale))?;
        // index 4: det ratio (2p)^2 / (p/2)^2 = 16
        ensure(int_rat(r.s.det) / &ms == int_rat(16) && r.s.index == 4, || format!("p = {p}: index {}", r.s.index))?;
        for c in [2, 6, 2 * p, 6 * p] {
            let l = GramLattice::from_int_rows(&[&[c, 0], &[0, c]]).map_err(|e| e.to_string())?;
            ensure(
                find_order4_isometry(&l, 10).is_some() && is_similar_square(&l) == Some(int_rat(c)),
                || format!("L0[{c}]"),
            )?;
        }
    }
    Ok(())
}

fn invariants() -> Verdict {
    let s = invariants_for(1, 1).map_err(|e| e.to_string())?;
    let want = vec![vec![1], vec![1, 1], vec![1, 12, 1], vec![1, 1], vec![1]];
    ensure(s.hodge == want, || format!("diamond {:?}", s.hodge))?;
    let rho = (picard_number(0, &surface_fibers()), picard_number(2, &surface_fibers()));
    ensure(rho == (12, 14), || format!("rho {rho:?}"))?;
    for n in 1..=10 {
        let spec = BaseChangeSpec { n, chi: 1, fibers: surface_fibers(), mw_rank: 0 };
        let r = pullback_invariants(&spec, Characteristic::Zero).map_err(|e| e.to_string())?;
        ensure(r.verdict == RankVerdict::Zero && r.invariants.e == 12 * n * n, || {
            format!("n = {n}: {:?}, e = {}", r.verdict, r.invariants.e)
        })?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 anchor coefficients b5 = -6, b13 = 10", Duration::from_secs(1), anchors),
        ("2 modularity sweep 5 <= p <= 199", Duration::from_secs(60), modularity_sweep),
        ("3 eigenvalue dichotomy", Duration::from_secs(300), dichotomy),
        ("4 fiber classification", Duration::from_secs(30), fibers),
        ("5 symbolic identities", Duration::from_secs(30), identities),
        ("6 lattice suite", Duration::from_secs(30), lattices),
        ("7 invariants and pullbacks", Duration::from_secs(30), invariants),
    ];
    let mut failed = 0;
    for (name, limit, f) in criteria {
        let start = Instant::now();
        let verdict = f();
        let t = start.elapsed();
        let verdict = verdict.and_then(|()| {
            ensure(t <= limit, || format!("took {:.2?}, limit {:.0?}", t, limit))
        });
        match verdict {
            Ok(()) => println!("PASS criterion {name} ({t:.2?}, limit {limit:.0?})"),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {name}: {e}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
