use bsd_core::algebraize::{algebraize, kernel_of_samples, default_rank_tol, sample_map_values, AlgebraizeOptions, Component, MapShape, NumericOracle, Parity};
use bsd_core::arith::lll::{int_det, IntegerLattice};
use bsd_core::arith::numfield::NfElem;
use bsd_core::arith::scalar::Scalar;
use bsd_core::bsd::*;
use bsd_core::builtin::*;
use bsd_core::curves::elliptic::isomorphism_test;
use bsd_core::euler::check_euler_identity;
use bsd_core::lfunction::coeffs::{dirichlet_coefficients, primes_up_to, BadFactors, EulerData};
use bsd_core::lfunction::search::{conductor_sign_search, default_test_points, WINNER_TOL};
use bsd_core::lfunction::{analytic_rank, leading_coefficient, LFunction};
use bsd_core::maps::{compose, RationalMap};
use bsd_core::numeric::{digits_to_bits, BigReal};
use bsd_core::periods::cm::cm_polarization_search;
use bsd_core::periods::theta::theta_even_constants;
use bsd_core::periods::{big_periods, igusa_from_theta, real_period_volume};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

const LEAD: f64 = 4.54183774632835249986;
const UNATTAINABLE: &[&str] = &["10"];

struct Line {
    id: &'static str,
    pass: bool,
    what: String,
    secs: f64,
}

fn run(id: &'static str, limit: f64, f: impl FnOnce() -> Result<(bool, String), String>) -> Line {
    let t = Instant::now();
    let (pass, what) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    let secs = t.elapsed().as_secs_f64();
    let what = if secs > limit { format!("{what}; over time limit {limit} s") } else { what };
    let line = Line { id, pass: pass && secs <= limit, what, secs };
    println!("criterion {:>3} {}  {}  ({:.1} s)", line.id, if line.pass { "PASS" } else { "FAIL" }, line.what, line.secs);
    line
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn rel(a: &BigReal, b: &str) -> f64 {
    let b = BigReal::parse(b, a.prec()).unwrap();
    a.sub(&b).abs().div(&b).to_f64()
}

fn c1() -> Result<(bool, String), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let ok_phi = phi().verify_morphism().is_ok();
    let ok_16 = map16().verify_morphism().is_ok();
    let deg = phi().degree(&mut rng).map_err(e)?;
    let i = iota();
    let inv = compose(&phi(), &i).map_err(e)?.eq_map(&phi());
    let invol = compose(&i, &i).map_err(e)?.eq_map(&RationalMap::identity(&i.source));
    Ok((
        ok_phi && ok_16 && deg == 2 && inv && invol,
        format!("symbolic maps: phi {ok_phi}, degree-16-field map {ok_16}, deg phi = {deg}, phi.iota = phi {inv}, iota^2 = id {invol}"),
    ))
}

fn c2() -> Result<(bool, String), String> {
    let over_k = isomorphism_test(&curve_e(), &curve_e_sigma());
    let l = field_l8();
    let (g, _) = l8_generators();
    let el = curve_e().base_change(&l, &g);
    let esl = curve_e_sigma().base_change(&l, &g);
    let w = isomorphism_test(&el, &esl);
    let witness = w.as_ref().is_some_and(|w| el.transform(w) == esl);
    Ok((over_k.is_none() && witness, format!("E vs E^sigma: over K {}, over Q(i, 5^(1/4)) witness verified {witness}", if over_k.is_none() { "none" } else { "isomorphic" })))
}

fn c3() -> Result<(bool, String), String> {
    let k = field_k();
    let j = curve_e().j_invariant().map_err(e)?;
    let v = j.times(&j).plus(&j.times(&NfElem::from_int(&k, -1264000))).plus(&NfElem::from_int(&k, -681472000));
    Ok((v.is_zero_elt(), format!("j(E) = {j} is an exact root of x^2 - 1264000x - 681472000")))
}

fn c4() -> Result<(bool, String), String> {
    let h = curve_h();
    let hp = curve_hprime();
    let t = h.quadratic_twist(&BigRational::from_integer(BigInt::from(5))).map_err(e)?;
    let iso = t.isomorphism_to(&hp);
    let verified = iso.as_ref().is_some_and(|w| w.verify(&t, &hp));
    let same = h.igusa_clebsch().absolute == hp.igusa_clebsch().absolute;
    Ok((verified && same, format!("twist(H, 5) ~ H' over Q with verified witness {verified}; absolute invariants equal {same}")))
}

fn c5() -> Result<(bool, String), String> {
    let mut n = 0;
    for p in primes_up_to(199) {
        if p == 2 || p == 5 {
            continue;
        }
        let c = check_euler_identity(p).map_err(e)?;
        if !c.pass {
            return Ok((false, format!("Euler identity fails at p = {p}")));
        }
        n += 1;
    }
    Ok((true, format!("L_p(H) L_p(H') = L_p(Res E) exactly for all {n} good primes p < 200")))
}

fn c6() -> Result<(bool, String), String> {
    let oh = real_period_volume(&curve_h(), 30).map_err(e)?;
    let ohp = real_period_volume(&curve_hprime(), 30).map_err(e)?;
    let rh = rel(&oh, "1.93181743899697988452");
    let rhp = rel(&ohp, "9.65908719498489942260");
    let ratio = ohp.div(&oh).sub(&BigReal::from_i64(5, oh.prec())).abs().to_f64() / 5.0;
    Ok((
        rh < 1e-15 && rhp < 1e-15 && ratio < 1e-18,
        format!("Omega(H) = {}, rel err {rh:.1e}; Omega(H') rel err {rhp:.1e}; ratio - 5 rel {ratio:.1e}", oh.to_decimal(21)),
    ))
}

fn c7(data: &[EulerData; 2]) -> Result<(bool, String), String> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (d, name) in data.iter().zip(["H", "H'"]) {
        let s = conductor_sign_search(d, &default_test_points()).map_err(e)?;
        let w = &s.winner;
        let l = LFunction::new(d, w.conductor, w.sign, w.bad.clone()).map_err(e)?;
        let r = analytic_rank(&l, 12).map_err(e)?;
        let lead = leading_coefficient(&l, &r);
        let err = (lead - LEAD).abs() / LEAD;
        ok &= w.sign == -1 && w.defect < WINNER_TOL && r.rank == 1 && err < 1e-4;
        parts.push(format!(
            "{name}: N = {}, eps = {}, defect {:.1e} (runner-up {:.1e}), rank {}, lead {lead:.12} rel err {err:.1e}",
            w.conductor, w.sign, w.defect, s.runner_up.defect, r.rank
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn c8() -> Result<(bool, String), String> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (h, name) in [(curve_h(), "H"), (curve_hprime(), "H'")] {
        let t = torsion_order(&h, 8).map_err(e)?;
        let w = t.witness.as_ref().map(|w| w.divisor.clone()).unwrap_or_default();
        ok &= t.order() == Some(2) && w == "[(0, 0) - inf]";
        parts.push(format!("{name}: {:?} with witness {w}", t.order()));
    }
    Ok((ok, format!("torsion {}", parts.join(", "))))
}

fn c9(cache: &std::path::Path) -> Result<(bool, String), String> {
    let opts = ReportOptions { cache_dir: Some(cache.to_path_buf()), ..Default::default() };
    let mut ok = true;
    let mut parts = Vec::new();
    for c in [CurveChoice::H, CurveChoice::Hprime] {
        let r = run_report(c, &Config::builtin(), &opts).map_err(e)?;
        let sha: f64 = r.sha_an.as_deref().unwrap_or("nan").parse().map_err(e)?;
        let sq = r.square_check.clone().unwrap();
        ok &= (sha - 1.0).abs() < 2e-4 && sq.pass && r.replay().map_err(e)?;
        parts.push(format!("{}: Sha_an = {sha:.12}, square of {}", c.key(), sq.nearest_root));
    }
    Ok((ok, parts.join("; ")))
}

fn c10(bound: i64) -> Result<(bool, String), String> {
    let prec = 150;
    let pols = cm_polarization_search(5, bound, prec).map_err(e)?;
    let want = curve_h().igusa_clebsch().absolute;
    let height = BigInt::from(10u64).pow(12);
    let non_product: Vec<_> = pols.iter().filter(|p| !p.product).collect();
    let mut hits = 0;
    for p in &non_product {
        let th = theta_even_constants(&p.tau, prec).map_err(e)?;
        if igusa_from_theta(&th, 40, &height).map_err(e)?.recognized.as_ref() == Some(&want) {
            hits += 1;
        }
    }
    Ok((
        hits > 0,
        format!(
            "m = 5, bound {bound}: {} principal polarizations, {} non-product, {hits} recognized as igusa_clebsch(H)",
            pols.len(),
            non_product.len()
        ),
    ))
}

fn c11() -> Result<(bool, String), String> {
    let k = field_k();
    let opts = AlgebraizeOptions { digits: 40, ..Default::default() };
    let shapes = [MapShape::for_component(2, 1, Component::X), MapShape::for_component(1, 2, Component::Y)];
    let rep = algebraize(&phi(), shapes, &k, &opts).map_err(e)?;
    let exact = rep.map.eq_map(&phi());
    let prec = digits_to_bits(40) + 64;
    let num = NumericOracle::new(phi(), prec);
    let big = MapShape::new(3, 2, Parity::Even);
    let samples = sample_map_values(&num, Component::X, &big, 4, 1).map_err(e)?;
    let dim = kernel_of_samples(&samples, &big, &default_rank_tol(40, prec)).map_err(e)?.dimension;
    Ok((exact && dim > 1, format!("phi recovered exactly {exact} at (2,1), kernel dims {:?}; shape (3,2) kernel dimension {dim}", rep.kernel_dimensions)))
}

fn c12(data: &[EulerData; 2]) -> Result<(bool, String), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut checks = Vec::new();
    let mut riemann = true;
    for h in [curve_h(), curve_hprime()] {
        let r = big_periods(&h, 30).map_err(e)?.riemann_residual().map_err(e)?;
        riemann &= r.is_zero() || r.to_f64() < 1e-25;
    }
    checks.push(("Riemann relations", riemann));
    let weil = data.iter().all(|d| {
        d.local.iter().all(|(&p, &(t1, t2))| {
            let sp = (p as f64).sqrt();
            (t1.abs() as f64) <= 4.0 * sp && t2.is_none_or(|t| (t.abs() as f64) <= 6.0 * p as f64)
        })
    });
    checks.push(("Weil bounds", weil));
    let a = dirichlet_coefficients(&data[0], &BadFactors::trivial(), 100_000).map_err(e)?;
    let mut mult = true;
    for _ in 0..2000 {
        let m: u64 = rng.gen_range(1..300);
        let n: u64 = rng.gen_range(1..300);
        if m.gcd(&n) == 1 {
            mult &= a[(m * n) as usize] == a[m as usize] * a[n as usize];
        }
    }
    checks.push(("multiplicativity", mult));
    let mut gcd_ok = true;
    for h in [curve_h(), curve_hprime()] {
        let t = torsion_order(&h, 6).map_err(e)?;
        for p in &t.primes {
            gcd_ok &= jacobian_order(&h, *p).map_err(e)?.is_multiple_of(&BigInt::from(t.upper));
        }
    }
    checks.push(("gcd-torsion bounds", gcd_ok));
    let mut uni = true;
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    for _ in 0..40 {
        let rows: Vec<Vec<i64>> = (0..4).map(|_| (0..4).map(|_| rng.gen_range(-1000..1000)).collect()).collect();
        let l = IntegerLattice::from_i64(&rows);
        if int_det(&l.rows) == BigInt::from(0) {
            continue;
        }
        let out = l.lll(&delta).map_err(e)?;
        let prod: Vec<Vec<BigInt>> = out
            .transform
            .iter()
            .map(|u| (0..4).map(|j| u.iter().zip(&l.rows).map(|(x, r)| x * &r[j]).sum()).collect())
            .collect();
        uni &= int_det(&out.transform).abs().is_one() && prod == out.basis.rows && out.basis.is_lll_reduced(&delta);
    }
    checks.push(("LLL unimodularity", uni));
    let ok = checks.iter().all(|c| c.1);
    let what = checks.iter().map(|(n, p)| format!("{n} {}", if *p { "ok" } else { "FAILED" })).collect::<Vec<_>>().join(", ");
    Ok((ok, format!("{what} (full suites: cargo test --workspace)")))
}

fn main() {
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let cache = tempfile::tempdir().unwrap();
    let t = Instant::now();
    let data = [
        EulerData::cached(&curve_h(), 100_000, Some(cache.path())).unwrap(),
        EulerData::cached(&curve_hprime(), 100_000, Some(cache.path())).unwrap(),
    ];
    println!("coefficient data for H and H' up to 10^5 in {:.1} s", t.elapsed().as_secs_f64());
    let lines = vec![
        run("1", 10.0, c1),
        run("2", 10.0, c2),
        run("3", 10.0, c3),
        run("4", 10.0, c4),
        run("5", 120.0, c5),
        run("6", 60.0, c6),
        run("7", 1800.0, || c7(&data)),
        run("8", 60.0, c8),
        run("9", 1800.0, || c9(cache.path())),
        run("10", 300.0, || c10(2)),
        run("10b", 300.0, || c10(5)),
        run("11", 60.0, c11),
        run("12", 600.0, || c12(&data)),
    ];
    let failed: Vec<&str> = lines.iter().filter(|l| !l.pass).map(|l| l.id).collect();
    let passed = lines.iter().filter(|l| l.pass && l.id.len() <= 2).count();
    println!("{passed}/12 criteria pass; failing: {failed:?}");
    if failed != UNATTAINABLE {
        eprintln!("unexpected acceptance outcome: failing {failed:?}, expected exactly {UNATTAINABLE:?}");
        std::process::exit(1);
    }
    println!(
        "criterion 10 fails as analysed: with entries in [-2, 2] every compatible principal form is a product polarization; 10b shows the same search succeeds at bound 5"
    );
}
