use bsd_core::builtin::{curve_h, curve_hprime};
use bsd_core::lfunction::coeffs::*;
use bsd_core::lfunction::search::*;
use bsd_core::lfunction::*;
use bsd_core::Error;
use num_complex::Complex64 as C;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

const X: u64 = 100_000;
const N: u64 = 2_560_000;
const TABLE_LEAD: f64 = 4.54183774632835249986;

fn data_h() -> &'static EulerData {
    static D: OnceLock<EulerData> = OnceLock::new();
    D.get_or_init(|| EulerData::compute(&curve_h(), X).unwrap())
}

fn data_hp() -> &'static EulerData {
    static D: OnceLock<EulerData> = OnceLock::new();
    D.get_or_init(|| EulerData::compute(&curve_hprime(), X).unwrap())
}

fn coeffs_h() -> &'static Vec<i64> {
    static A: OnceLock<Vec<i64>> = OnceLock::new();
    A.get_or_init(|| dirichlet_coefficients(data_h(), &BadFactors::trivial(), X).unwrap())
}

fn l_h() -> LFunction {
    LFunction::new(data_h(), N, -1, BadFactors::trivial()).unwrap()
}

#[test]
fn first_coefficients() {
    let a = coeffs_h();
    assert_eq!(a[1], 1);
    assert_eq!(a[3], 0);
    assert_eq!(data_h().bad, vec![2, 5]);
}

#[test]
fn multiplicative_on_random_coprime_pairs() {
    let a = coeffs_h();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut tested = 0;
    while tested < 100 {
        let m = rng.gen_range(2..300u64);
        let n = rng.gen_range(2..300u64);
        if m.gcd(&n) != 1 {
            continue;
        }
        assert_eq!(a[(m * n) as usize], a[m as usize] * a[n as usize], "{m} {n}");
        tested += 1;
    }
}

#[test]
fn weil_and_divisor_bounds() {
    for (&p, &(t1, _)) in &data_h().local {
        assert!((t1 as f64).abs() <= 4.0 * (p as f64).sqrt(), "p = {p}");
    }
    for (n, &an) in coeffs_h().iter().enumerate().skip(1) {
        assert!((an.abs() as f64) <= divisor4(n as u64) as f64 * (n as f64).sqrt() + 1e-9, "n = {n}");
    }
}

fn legendre5(p: u64) -> i64 {
    match p % 5 {
        1 | 4 => 1,
        _ => -1,
    }
}

#[test]
fn twist_relation_between_h_and_hprime() {
    for (p, &(t1, t2)) in &data_h().local {
        let (u1, u2) = data_hp().local[p];
        assert_eq!(u1, legendre5(*p) * t1, "p = {p}");
        assert_eq!(u2, t2);
    }
}

#[test]
fn cache_round_trip_and_prefix_stability() {
    let dir = tempfile::tempdir().unwrap();
    let small = EulerData::cached(&curve_h(), 2000, Some(dir.path())).unwrap();
    let again = EulerData::cached(&curve_h(), 2000, Some(dir.path())).unwrap();
    assert_eq!(small, again);
    let path = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# bsd-coefficients 1\n# model "));
    assert!(text.lines().any(|l| l == "3 0 -2" || l.starts_with("3 ")));
    let bigger = EulerData::cached(&curve_h(), 5000, Some(dir.path())).unwrap();
    assert_eq!(bigger.truncate(2000), small);
    let a = dirichlet_coefficients(&small, &BadFactors::trivial(), 2000).unwrap();
    let b = dirichlet_coefficients(&bigger, &BadFactors::trivial(), 5000).unwrap();
    assert_eq!(a[..], b[..2001]);
    // a cache for another model is not reused
    let other = EulerData::cached(&curve_hprime(), 2000, Some(dir.path())).unwrap();
    assert_ne!(other.model_hash, small.model_hash);
}

#[test]
fn missing_coefficients_reported() {
    let d = data_h().truncate(1000);
    assert!(matches!(LFunction::new(&d, N, -1, BadFactors::trivial()), Err(Error::InsufficientCoefficients(_))));
}

#[test]
fn functional_equation_holds() {
    let l = l_h();
    assert!(l.defect(C::new(1.3, 0.2)) < 1e-8);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..5 {
        let s = C::new(rng.gen_range(0.6..1.4), rng.gen_range(-4.0..4.0));
        assert!(l.defect(s) < 1e-8, "s = {s}");
    }
}

fn max_defect(l: &LFunction) -> f64 {
    default_test_points().iter().map(|&s| l.defect(s)).fold(0.0, f64::max)
}

#[test]
fn wrong_conductor_fails() {
    assert!(max_defect(&l_h()) < WINNER_TOL);
    let l = LFunction::new(data_h(), 2 * N, -1, BadFactors::trivial()).unwrap();
    assert!(max_defect(&l) > RUNNER_UP_MIN);
    let l = LFunction::new(data_h(), N, 1, BadFactors::trivial()).unwrap();
    assert!(max_defect(&l) > RUNNER_UP_MIN);
}

#[test]
fn truncation_stability() {
    let a = l_h();
    let b = LFunction::with_xmax(data_h(), N, -1, BadFactors::trivial(), 2 * required_x(N)).unwrap();
    let s = C::new(1.5, 0.0);
    assert!((a.lambda(s) - b.lambda(s)).norm() < 1e-10);
}

#[test]
fn search_finds_conductor_and_sign() {
    for d in [data_h(), data_hp()] {
        let r = conductor_sign_search(d, &default_test_points()).unwrap();
        assert_eq!((r.winner.conductor, r.winner.sign), (N, -1));
        assert_eq!(r.winner.bad_factors, "trivial");
        assert!(r.winner.defect < WINNER_TOL && r.runner_up.defect > RUNNER_UP_MIN);
    }
}

#[test]
fn rank_and_leading_coefficient() {
    let mut leads = Vec::new();
    for d in [data_h(), data_hp()] {
        let l = LFunction::new(d, N, -1, BadFactors::trivial()).unwrap();
        let r = analytic_rank(&l, 12).unwrap();
        assert_eq!(r.rank, 1);
        assert!(r.derivatives[0].abs() < r.tolerance);
        let lead = leading_coefficient(&l, &r);
        assert!((lead - TABLE_LEAD).abs() / TABLE_LEAD < 1e-4, "{lead}");
        leads.push(lead);
    }
    assert!((leads[0] - leads[1]).abs() < 1e-6 * leads[0]);
}
