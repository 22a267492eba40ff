use bsd_core::bsd::*;
use bsd_core::builtin::{curve_h, curve_hprime};
use bsd_core::numeric::BigReal;
use bsd_core::Error;
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;
use std::collections::BTreeMap;
use std::sync::OnceLock;

fn table_inputs(omega: &str, reg: &str) -> ShaInputs {
    ShaInputs {
        l_lead: "4.54183774632835249986".into(),
        omega: omega.into(),
        regulator: reg.into(),
        tamagawa: BTreeMap::from([("2".into(), 1), ("5".into(), 2)]),
        torsion: 2,
        dual_torsion: 2,
        discriminant: 1,
        dimension: 2,
        analytic_rank: 1,
        algebraic_rank: 1,
    }
}

#[test]
fn table_values_give_one() {
    for (o, r) in [("1.93181743899697988452", "4.70213971014416647713"), ("9.65908719498489942260", "0.94042794202883329543")] {
        let s = assemble_sha_an(&table_inputs(o, r)).unwrap();
        assert!((s.to_f64() - 1.0).abs() < 1e-18, "{}", s.to_decimal(25));
    }
}

#[test]
fn torsion_is_two_for_both_curves() {
    for h in [curve_h(), curve_hprime()] {
        let t = torsion_order(&h, 8).unwrap();
        assert_eq!(t.order(), Some(2));
        assert_eq!(t.witness.as_ref().unwrap().divisor, "[(0, 0) - inf]");
    }
}

#[test]
fn torsion_gcd_divides_each_count() {
    for h in [curve_h(), curve_hprime()] {
        let t = torsion_order(&h, 4).unwrap();
        assert_eq!(t.primes, vec![3, 7, 11, 13]);
        let g = BigInt::from(t.upper);
        for p in [3u64, 7, 11, 13] {
            let n = jacobian_order(&h, p).unwrap();
            assert!(n.is_multiple_of(&g));
            assert!(n.is_multiple_of(&BigInt::from(t.lower)));
        }
    }
}

#[test]
fn torsion_budget_too_small() {
    assert!(torsion_order(&curve_h(), 2).is_err());
}

fn cache() -> &'static tempfile::TempDir {
    static D: OnceLock<tempfile::TempDir> = OnceLock::new();
    D.get_or_init(|| tempfile::tempdir().unwrap())
}

fn opts() -> ReportOptions {
    ReportOptions { cache_dir: Some(cache().path().to_path_buf()), ..Default::default() }
}

fn report(c: CurveChoice) -> &'static BsdReport {
    static H: OnceLock<BsdReport> = OnceLock::new();
    static HP: OnceLock<BsdReport> = OnceLock::new();
    let cell = if c == CurveChoice::H { &H } else { &HP };
    cell.get_or_init(|| run_report(c, &Config::builtin(), &opts()).unwrap())
}

#[test]
fn reports_give_sha_one() {
    let mut values = Vec::new();
    for c in [CurveChoice::H, CurveChoice::Hprime] {
        let r = report(c);
        let sha: f64 = r.sha_an.as_ref().unwrap().parse().unwrap();
        assert!((sha - 1.0).abs() < 2e-4, "{sha}");
        let sq = r.square_check.as_ref().unwrap();
        assert!(sq.pass && sq.nearest_root == 1);
        assert!(r.omega_times_regulator.as_ref().unwrap().relative_error < 1e-15);
        assert!(r.l_lead_vs_table.as_ref().unwrap().relative_error < 1e-4);
        assert_eq!(r.citations.len(), 5);
        assert_eq!(r.provenance["regulator"], "supplied");
        assert_eq!(r.provenance["omega"], "computed");
        let l = r.lfunction.as_ref().unwrap();
        assert_eq!((l.conductor, l.sign, l.analytic_rank), (2_560_000, -1, 1));
        values.push(sha);
    }
    assert!((values[0] - values[1]).abs() < 4e-4);
}

#[test]
fn report_round_trip_replays_exactly() {
    let r = report(CurveChoice::H);
    let back = BsdReport::from_json(&r.to_json()).unwrap();
    assert_eq!(&back, r);
    assert!(back.replay().unwrap());
    let again = assemble_sha_an(back.inputs.as_ref().unwrap()).unwrap();
    assert_eq!(&again.to_decimal(40), back.sha_an.as_ref().unwrap());
}

#[test]
fn wrong_schema_rejected() {
    let mut v: serde_json::Value = serde_json::from_str(&report(CurveChoice::Hprime).to_json()).unwrap();
    v["schema_version"] = 99.into();
    assert!(BsdReport::from_json(&v.to_string()).is_err());
    assert!(Config::from_toml(&DEFAULT_CONFIG.replace("schema_version = 1", "schema_version = 2")).is_err());
}

#[test]
fn missing_regulator_requires_citation() {
    let mut cfg = Config::builtin();
    cfg.curves.get_mut("H").unwrap().regulator = None;
    let e = run_report(CurveChoice::H, &cfg, &opts()).unwrap_err();
    assert_eq!(e.stage, "config");
    assert!(matches!(e.error, Error::CitationRequired(ref f) if f == "regulator"));

    let mut cfg = Config::builtin();
    cfg.curves.get_mut("Hprime").unwrap().tamagawa.as_mut().unwrap().citation = " ".into();
    let e = run_report(CurveChoice::Hprime, &cfg, &opts()).unwrap_err();
    assert!(matches!(e.error, Error::CitationRequired(_)));
}

#[test]
fn rank_mismatch_is_reported_with_partial_report() {
    let mut cfg = Config::builtin();
    cfg.curves.get_mut("H").unwrap().algebraic_rank.as_mut().unwrap().value = 0;
    let e = run_report(CurveChoice::H, &cfg, &opts()).unwrap_err();
    assert_eq!(e.stage, "assembly");
    assert!(matches!(e.error, Error::RankMismatch { analytic: 1, algebraic: 0 }));
    assert!(e.partial.omega.is_some() && e.partial.torsion.is_some());
    assert!(e.partial.sha_an.is_none());
}

fn dec(x: f64) -> String {
    format!("{x:.17e}")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sha_scales_with_lead(lead in 0.01f64..100.0, omega in 0.01f64..100.0, reg in 0.01f64..100.0, t in 1u64..6, c5 in 1u64..5) {
        let mut i = table_inputs(&dec(omega), &dec(reg));
        i.l_lead = dec(lead);
        i.torsion = t;
        i.dual_torsion = t;
        i.tamagawa.insert("5".into(), c5);
        let s = assemble_sha_an(&i).unwrap();
        let want = lead * (t * t) as f64 / (omega * reg * c5 as f64);
        prop_assert!((s.to_f64() - want).abs() <= 1e-12 * want);
        i.l_lead = dec(2.0 * lead);
        let s2 = assemble_sha_an(&i).unwrap();
        prop_assert!((s2.to_f64() - 2.0 * s.to_f64()).abs() <= 1e-12 * want);
    }

    #[test]
    fn square_check_accepts_perturbed_squares(n in 1u64..50, eps in -1e-6f64..1e-6) {
        let x = BigReal::parse(&dec((n * n) as f64 + eps), 200).unwrap();
        let c = square_check(&x, 1e-5);
        prop_assert!(c.pass);
        prop_assert_eq!(c.nearest_root, n);
    }
}
