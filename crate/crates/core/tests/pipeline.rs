use commsurf::identities::{verify_base_change, IdentityReport};
use commsurf::invariants::{pullback_invariants, BaseChangeSpec, Characteristic, RankVerdict};
use commsurf::kodaira::{FiberData, KodairaType};
use commsurf::lattices::surface_fibers;
use commsurf::modular_forms::{euler_factor, FormKind};
use commsurf::numeric::{primes_between, Integer};
use commsurf::par::Execution;
use commsurf::surface_arith::{count_surface_s, lefschetz_b, predicted_count};
use commsurf::verifier::{run, to_json_lines, Config, Status};
use proptest::prelude::*;

fn primes() -> Vec<u64> {
    primes_between(5, 120)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn modes_agree_on_surface_counts(i in 0usize..28) {
        let p = primes()[i];
        let s = count_surface_s(p, 1, Execution::Sequential).unwrap();
        let q = count_surface_s(p, 1, Execution::Parallel).unwrap();
        prop_assert_eq!(&s, &q);
        prop_assert_eq!(Integer::from(s.total), predicted_count(p, 1).unwrap());
    }

    #[test]
    fn weight3_trace_respects_weil_bound(i in 0usize..28) {
        let p = primes()[i];
        let t = lefschetz_b(p, 1, Execution::Parallel).unwrap();
        prop_assert!(t.b_q.abs() <= 2 * p as i64);
        prop_assert!(euler_factor(p, FormKind::Weight3T).unwrap().within_bound());
    }

    #[test]
    fn non_extremal_sources_are_inconclusive(n in 1i64..12, rank in 1i64..4) {
        let spec = BaseChangeSpec { n, chi: 1, fibers: surface_fibers(), mw_rank: rank };
        let r = pullback_invariants(&spec, Characteristic::Zero).unwrap();
        prop_assert_eq!(r.verdict, RankVerdict::Inconclusive);
        prop_assert_eq!(r.invariants.e, 12 * n * n);
    }
}

#[test]
fn smaller_fibers_do_not_squeeze() {
    // I1 only: rho = 2 < h11 = 12, so nothing follows
    let spec = BaseChangeSpec { n: 2, chi: 1, fibers: vec![FiberData::of_type(KodairaType::I(1))], mw_rank: 0 };
    assert_eq!(pullback_invariants(&spec, Characteristic::Zero).unwrap().verdict, RankVerdict::Inconclusive);
}

#[test]
fn identity_reports_serialize() {
    let r: IdentityReport = verify_base_change();
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    assert_eq!(v["witness"], "u = xi^2");
    assert_eq!(v["parts"].as_array().unwrap().len(), 3);
}

#[test]
fn report_lines_parse_back() {
    let cfg = Config { p2max: 13, ..Config::with_pmax(43) };
    let results = run(&["S5.*".into(), "INV.*".into()], cfg).unwrap();
    let text = to_json_lines(&results);
    assert_eq!(text.lines().count(), results.len());
    for (line, r) in text.lines().zip(&results) {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["check_id"], r.check_id.as_str());
        let conditional = v["status"] == "conditional-pass";
        assert_eq!(conditional, !v["tags"].as_array().unwrap().is_empty());
    }
    assert!(results.iter().all(|r| r.status != Status::Fail));
    let b5 = results.iter().find(|r| r.check_id == "S5.lefschetz.p5").unwrap();
    assert_eq!(b5.expected, "b_p = -6");
}
