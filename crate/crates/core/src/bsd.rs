//! Torsion bounds, the analytic order of Sha, and the end-to-end report.

use crate::builtin::{curve_h, curve_hprime};
use crate::curves::hyperelliptic::HyperellipticCurve;
use crate::error::{Error, Result};
use crate::euler::{check_euler_identity, euler_factor_genus2};
use crate::lfunction::coeffs::{bad_primes, model_hash, primes_up_to, EulerData};
use crate::lfunction::search::{conductor_sign_search, default_test_points};
use crate::lfunction::{analytic_rank, leading_coefficient, LFunction};
use crate::numeric::BigReal;
use crate::periods::real_period_volume;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

pub const REPORT_SCHEMA: u32 = 1;
pub const CONFIG_SCHEMA: u32 = 1;
pub const DEFAULT_CONFIG: &str = include_str!("../data/bsd-inputs.toml");
const PREC: u32 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveChoice {
    H,
    Hprime,
}

impl CurveChoice {
    pub fn curve(self) -> HyperellipticCurve {
        match self {
            CurveChoice::H => curve_h(),
            CurveChoice::Hprime => curve_hprime(),
        }
    }
    pub fn key(self) -> &'static str {
        match self {
            CurveChoice::H => "H",
            CurveChoice::Hprime => "Hprime",
        }
    }
}

impl FromStr for CurveChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "H" | "h" => Ok(CurveChoice::H),
            "Hprime" | "hprime" | "H'" => Ok(CurveChoice::Hprime),
            _ => Err(Error::InvalidInput(format!("unknown curve {s:?} (expected H or Hprime)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionWitness {
    pub divisor: String,
    pub order: u64,
}

/// `lower` divides the torsion order, which divides `upper`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionBound {
    pub lower: u64,
    pub upper: u64,
    pub primes: Vec<u64>,
    pub jacobian_orders: Vec<String>,
    pub witness: Option<TorsionWitness>,
}

impl TorsionBound {
    pub fn order(&self) -> Option<u64> {
        (self.lower == self.upper).then_some(self.lower)
    }
}

/// #Jac(F_p) = P(1) for the local polynomial P.
pub fn jacobian_order(h: &HyperellipticCurve, p: u64) -> Result<BigInt> {
    Ok(euler_factor_genus2(h, p)?.eval(&BigInt::one()))
}

pub fn torsion_order(h: &HyperellipticCurve, budget: usize) -> Result<TorsionBound> {
    if budget < 3 {
        return Err(Error::InvalidInput("torsion bound needs at least 3 good primes".into()));
    }
    let bad = bad_primes(h, 10_000);
    let primes: Vec<u64> = primes_up_to(10_000).into_iter().filter(|p| !bad.contains(p)).take(budget).collect();
    let mut g = BigInt::zero();
    let mut orders = Vec::new();
    for &p in &primes {
        let n = jacobian_order(h, p)?;
        g = g.gcd(&n);
        orders.push(n.to_string());
    }
    let upper = g.to_u64().ok_or_else(|| Error::InvalidInput("torsion bound overflow".into()))?;
    let finite: Vec<_> = if h.degree() == 5 {
        h.rational_branch_points().into_iter().filter(|pt| !pt.1.is_zero()).collect()
    } else {
        Vec::new()
    };
    let (lower, witness) = match finite.first() {
        Some(pt) => (
            1u64 << finite.len().min(4),
            Some(TorsionWitness { divisor: format!("[({}, 0) - inf]", &pt.0 / &pt.1), order: 2 }),
        ),
        None => (1, None),
    };
    if upper % lower != 0 {
        return Err(Error::InvalidInput(format!("rational 2-torsion {lower} does not divide gcd {upper}")));
    }
    Ok(TorsionBound { lower, upper, primes, jacobian_orders: orders, witness })
}

/// Everything the BSD quotient needs, as decimal strings so a stored report replays exactly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShaInputs {
    pub l_lead: String,
    pub omega: String,
    pub regulator: String,
    pub tamagawa: BTreeMap<String, u64>,
    pub torsion: u64,
    pub dual_torsion: u64,
    pub discriminant: i64,
    pub dimension: u32,
    pub analytic_rank: u32,
    pub algebraic_rank: u32,
}

fn big(name: &str, s: &str) -> Result<BigReal> {
    BigReal::parse(s, PREC).ok_or_else(|| Error::Format(format!("{name}: not a decimal: {s:?}")))
}

/// Sha_an = L* · |A_tors| · |A^∨_tors| · |Δ|^(d/2) / (Ω · R · ∏ c_p).
pub fn assemble_sha_an(i: &ShaInputs) -> Result<BigReal> {
    if i.analytic_rank != i.algebraic_rank {
        return Err(Error::RankMismatch { analytic: i.analytic_rank as usize, algebraic: i.algebraic_rank as usize });
    }
    let lead = big("l_lead", &i.l_lead)?;
    let omega = big("omega", &i.omega)?;
    let reg = big("regulator", &i.regulator)?;
    let c: u64 = i.tamagawa.values().product();
    let den = omega.mul(&reg).mul_i64(c as i64);
    let mut num = lead.mul_i64((i.torsion * i.dual_torsion) as i64);
    let disc = BigReal::from_i64(i.discriminant.abs(), PREC);
    let mut dpow = BigReal::one(PREC);
    for _ in 0..i.dimension / 2 {
        dpow = dpow.mul(&disc);
    }
    if i.dimension % 2 == 1 {
        dpow = dpow.mul(&disc.sqrt());
    }
    num = num.mul(&dpow);
    if den.is_zero() || i.discriminant == 0 {
        return Err(Error::InvalidInput("zero denominator in the BSD quotient".into()));
    }
    Ok(num.div(&den))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cited<T> {
    pub value: T,
    pub citation: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub sha: f64,
    pub square: f64,
    pub lead_rel: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CurveInputs {
    pub regulator: Option<Cited<String>>,
    pub tamagawa: Option<Cited<BTreeMap<String, u64>>>,
    pub algebraic_rank: Option<Cited<u32>>,
    pub table_omega: Option<Cited<String>>,
    pub table_l_lead: Option<Cited<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub schema_version: u32,
    pub tolerances: Tolerances,
    pub curves: BTreeMap<String, CurveInputs>,
}

impl Config {
    pub fn from_toml(s: &str) -> Result<Self> {
        let c: Config = toml::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
        if c.schema_version != CONFIG_SCHEMA {
            return Err(Error::Format(format!("config schema {} (expected {CONFIG_SCHEMA})", c.schema_version)));
        }
        Ok(c)
    }
    pub fn builtin() -> Self {
        Self::from_toml(DEFAULT_CONFIG).expect("bundled config parses")
    }
}

fn cited<'a, T>(v: &'a Option<Cited<T>>, name: &str) -> Result<&'a Cited<T>> {
    match v {
        Some(c) if !c.citation.trim().is_empty() => Ok(c),
        _ => Err(Error::CitationRequired(name.into())),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LSummary {
    pub xmax: u64,
    pub conductor: u64,
    pub sign: i32,
    pub bad_factors: String,
    pub defect: f64,
    pub runner_up_defect: f64,
    pub candidates: usize,
    pub analytic_rank: u32,
    pub derivatives: Vec<f64>,
    pub lead: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SquareCheck {
    pub nearest_root: u64,
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub computed: String,
    pub table: String,
    pub relative_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BsdReport {
    pub schema_version: u32,
    pub curve: String,
    pub model: String,
    pub model_hash: String,
    pub euler_checked: Vec<u64>,
    pub periods_digits: u32,
    pub omega: Option<String>,
    pub lfunction: Option<LSummary>,
    pub torsion: Option<TorsionBound>,
    pub dual_torsion_rule: String,
    pub inputs: Option<ShaInputs>,
    pub citations: BTreeMap<String, String>,
    pub provenance: BTreeMap<String, String>,
    pub sha_an: Option<String>,
    pub square_check: Option<SquareCheck>,
    pub omega_times_regulator: Option<Comparison>,
    pub l_lead_vs_table: Option<Comparison>,
    pub tolerances: Tolerances,
    pub runtimes: BTreeMap<String, f64>,
}

impl BsdReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
    pub fn from_json(s: &str) -> Result<Self> {
        let r: BsdReport = serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
        if r.schema_version != REPORT_SCHEMA {
            return Err(Error::Format(format!("report schema {} (expected {REPORT_SCHEMA})", r.schema_version)));
        }
        Ok(r)
    }
    /// Recomputes Sha_an from the stored inputs and compares with the stored value.
    pub fn replay(&self) -> Result<bool> {
        let (Some(i), Some(s)) = (&self.inputs, &self.sha_an) else { return Ok(false) };
        Ok(&sha_string(&assemble_sha_an(i)?) == s)
    }
    pub fn sha_within(&self) -> bool {
        self.square_check.as_ref().is_some_and(|c| c.pass)
    }
}

fn model_string(h: &HyperellipticCurve) -> String {
    let mut terms = Vec::new();
    for (k, c) in h.f.c.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{k}"),
        };
        terms.push(match (c.is_one(), mono.is_empty()) {
            (true, false) => mono,
            (_, true) => c.to_string(),
            _ if (-c).is_one() => format!("-{mono}"),
            _ => format!("({c})*{mono}"),
        });
    }
    format!("y^2 = {}", terms.join(" + ").replace("+ -", "- "))
}

fn sha_string(x: &BigReal) -> String {
    x.to_decimal(40)
}

pub fn square_check(sha: &BigReal, tol: f64) -> SquareCheck {
    let root = sha.abs().sqrt().round();
    let sq = BigReal::from_bigint(&(&root * &root), sha.prec());
    let deviation = sha.sub(&sq).abs().to_f64();
    SquareCheck { nearest_root: root.to_u64().unwrap_or(0), deviation, tolerance: tol, pass: deviation < tol && !root.is_zero() }
}

fn compare(computed: &BigReal, table: &str) -> Result<Comparison> {
    let t = big("table", table)?;
    let rel = computed.sub(&t).abs().div(&t.abs()).to_f64();
    Ok(Comparison { computed: computed.to_decimal(25), table: table.into(), relative_error: rel })
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub periods_digits: u32,
    pub l_digits: u32,
    pub xmax: u64,
    pub cache_dir: Option<PathBuf>,
    pub torsion_primes: usize,
    pub euler_pmax: u64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { periods_digits: 30, l_digits: 12, xmax: 100_000, cache_dir: None, torsion_primes: 8, euler_pmax: 60 }
    }
}

/// A failed stage together with everything finished before it.
#[derive(Debug)]
pub struct ReportFailure {
    pub stage: &'static str,
    pub error: Error,
    pub partial: Box<BsdReport>,
}

impl std::fmt::Display for ReportFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "stage {} failed: {}", self.stage, self.error)
    }
}

struct Run {
    report: BsdReport,
}

impl Run {
    fn stage<T>(&mut self, name: &'static str, f: impl FnOnce(&BsdReport) -> Result<T>) -> std::result::Result<T, ReportFailure> {
        let t = Instant::now();
        let out = f(&self.report);
        self.report.runtimes.insert(name.into(), t.elapsed().as_secs_f64());
        out.map_err(|error| ReportFailure { stage: name, error, partial: Box::new(self.report.clone()) })
    }
}

/// Counting, Euler checks, periods, L-function, torsion and the BSD quotient, in order.
pub fn run_report(choice: CurveChoice, config: &Config, opts: &ReportOptions) -> std::result::Result<BsdReport, ReportFailure> {
    let h = choice.curve();
    let mut run = Run {
        report: BsdReport {
            schema_version: REPORT_SCHEMA,
            curve: choice.key().into(),
            model: model_string(&h),
            model_hash: model_hash(&h),
            euler_checked: Vec::new(),
            periods_digits: opts.periods_digits,
            omega: None,
            lfunction: None,
            torsion: None,
            dual_torsion_rule: "principal polarization: |A^v(Q)_tors| = |A(Q)_tors|".into(),
            inputs: None,
            citations: BTreeMap::new(),
            provenance: BTreeMap::new(),
            sha_an: None,
            square_check: None,
            omega_times_regulator: None,
            l_lead_vs_table: None,
            tolerances: config.tolerances.clone(),
            runtimes: BTreeMap::new(),
        },
    };
    let ci = run.stage("config", |_| {
        config.curves.get(choice.key()).cloned().ok_or_else(|| Error::CitationRequired(format!("inputs for {}", choice.key())))
    })?;
    let (reg, tam, rank) = run.stage("config", |_| {
        Ok((cited(&ci.regulator, "regulator")?.clone(), cited(&ci.tamagawa, "tamagawa")?.clone(), cited(&ci.algebraic_rank, "algebraic_rank")?.clone()))
    })?;

    let checked = run.stage("euler", |_| {
        let mut out = Vec::new();
        for p in primes_up_to(opts.euler_pmax) {
            if p == 2 || p == 5 {
                continue;
            }
            let c = check_euler_identity(p)?;
            if !c.pass {
                return Err(Error::InvalidInput(format!("Euler identity fails at {p}")));
            }
            out.push(p);
        }
        Ok(out)
    })?;
    run.report.euler_checked = checked;

    let omega = run.stage("periods", |_| real_period_volume(&h, opts.periods_digits))?;
    run.report.omega = Some(omega.to_decimal(opts.periods_digits as usize));

    let ls = run.stage("lfunction", |_| {
        let data = EulerData::cached(&h, opts.xmax, opts.cache_dir.as_deref())?;
        let search = conductor_sign_search(&data, &default_test_points())?;
        let w = &search.winner;
        let l = LFunction::new(&data, w.conductor, w.sign, w.bad.clone())?;
        let r = analytic_rank(&l, opts.l_digits)?;
        let lead = leading_coefficient(&l, &r);
        Ok(LSummary {
            xmax: opts.xmax,
            conductor: w.conductor,
            sign: w.sign,
            bad_factors: w.bad_factors.clone(),
            defect: w.defect,
            runner_up_defect: search.runner_up.defect,
            candidates: search.evaluated,
            analytic_rank: r.rank,
            derivatives: r.derivatives.clone(),
            lead: format!("{lead:.15e}"),
        })
    })?;
    run.report.lfunction = Some(ls.clone());

    let tors = run.stage("torsion", |_| torsion_order(&h, opts.torsion_primes))?;
    run.report.torsion = Some(tors.clone());

    let sha = run.stage("assembly", |_| {
        let t = tors.order().ok_or_else(|| Error::Ambiguous(format!("torsion between {} and {}", tors.lower, tors.upper)))?;
        let inputs = ShaInputs {
            l_lead: ls.lead.clone(),
            omega: omega.to_decimal(opts.periods_digits as usize),
            regulator: reg.value.clone(),
            tamagawa: tam.value.clone(),
            torsion: t,
            dual_torsion: t,
            discriminant: 1,
            dimension: 2,
            analytic_rank: ls.analytic_rank,
            algebraic_rank: rank.value,
        };
        let sha = assemble_sha_an(&inputs)?;
        Ok((inputs, sha))
    })?;
    let (inputs, sha) = sha;
    let r = &mut run.report;
    for (k, v) in [("regulator", &reg.citation), ("tamagawa", &tam.citation), ("algebraic_rank", &rank.citation)] {
        r.citations.insert(k.into(), v.clone());
        r.provenance.insert(k.into(), "supplied".into());
    }
    for k in ["omega", "l_lead", "analytic_rank", "torsion", "dual_torsion"] {
        r.provenance.insert(k.into(), "computed".into());
    }
    r.provenance.insert("discriminant".into(), "fixed (base field Q)".into());
    if let (Some(to), Ok(rv)) = (&ci.table_omega, big("regulator", &reg.value)) {
        let table = big("table_omega", &to.value).map(|t| t.mul(&rv).to_decimal(25));
        if let Ok(table) = table {
            r.omega_times_regulator = compare(&omega.with_prec(PREC).mul(&rv), &table).ok();
            r.citations.insert("table_omega".into(), to.citation.clone());
        }
    }
    if let Some(tl) = &ci.table_l_lead {
        if let Ok(lead) = big("l_lead", &ls.lead) {
            r.l_lead_vs_table = compare(&lead, &tl.value).ok();
            r.citations.insert("table_l_lead".into(), tl.citation.clone());
        }
    }
    r.square_check = Some(square_check(&sha, config.tolerances.square));
    r.sha_an = Some(sha_string(&sha));
    r.inputs = Some(inputs);
    Ok(run.report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones() -> ShaInputs {
        ShaInputs {
            l_lead: "1".into(),
            omega: "1".into(),
            regulator: "1".into(),
            tamagawa: BTreeMap::new(),
            torsion: 1,
            dual_torsion: 1,
            discriminant: 1,
            dimension: 2,
            analytic_rank: 0,
            algebraic_rank: 0,
        }
    }

    #[test]
    fn all_ones_gives_one() {
        let s = assemble_sha_an(&ones()).unwrap();
        assert!(s.sub(&BigReal::one(PREC)).is_zero());
    }

    #[test]
    fn discriminant_factor() {
        let mut i = ones();
        i.discriminant = -4;
        assert!((assemble_sha_an(&i).unwrap().to_f64() - 4.0).abs() < 1e-30);
        i.dimension = 1;
        assert!((assemble_sha_an(&i).unwrap().to_f64() - 2.0).abs() < 1e-15);
        i.dimension = 3;
        assert!((assemble_sha_an(&i).unwrap().to_f64() - 8.0).abs() < 1e-14);
    }

    #[test]
    fn rank_mismatch_and_zero_denominator() {
        let mut i = ones();
        i.algebraic_rank = 1;
        assert!(matches!(assemble_sha_an(&i), Err(Error::RankMismatch { .. })));
        let mut i = ones();
        i.regulator = "0".into();
        assert!(assemble_sha_an(&i).is_err());
    }

    #[test]
    fn square_check_values() {
        let c = square_check(&BigReal::parse("4.00001", PREC).unwrap(), 1e-4);
        assert_eq!(c.nearest_root, 2);
        assert!(c.pass);
        assert!(!square_check(&BigReal::parse("2.5", PREC).unwrap(), 1e-4).pass);
    }

    #[test]
    fn curve_choice_parses() {
        assert_eq!("Hprime".parse::<CurveChoice>().unwrap(), CurveChoice::Hprime);
        assert!("E".parse::<CurveChoice>().is_err());
    }
}
