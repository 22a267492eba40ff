//! Conductor, sign and bad-factor search by functional-equation defect.

use super::coeffs::{BadFactors, EulerData};
use super::{required_x, LFunction, TablePair};
use crate::error::{Error, Result};
use num_complex::Complex64 as C;
use serde::Serialize;
use std::collections::BTreeMap;

pub const WINNER_TOL: f64 = 1e-8;
pub const RUNNER_UP_MIN: f64 = 1e-3;

pub fn default_test_points() -> Vec<C> {
    vec![C::new(1.3, 0.2), C::new(1.1, 3.0), C::new(0.7, 6.0), C::new(1.6, 1.5)]
}

#[derive(Clone, Debug, Serialize)]
pub struct Candidate {
    pub conductor: u64,
    pub sign: i32,
    pub bad_factors: String,
    pub defect: f64,
    #[serde(skip)]
    pub bad: BadFactors,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub winner: Candidate,
    pub runner_up: Candidate,
    pub evaluated: usize,
    pub test_points: Vec<(f64, f64)>,
}

struct Tables(Vec<(TablePair, TablePair)>);

impl Tables {
    fn new(points: &[C]) -> Self {
        Tables(points.iter().map(|&s| (TablePair::new(s), TablePair::new(C::new(2.0, 0.0) - s))).collect())
    }
    fn max_defect(&self, l: &LFunction) -> f64 {
        self.0.iter().map(|(a, b)| l.defect_with(a, b)).fold(0.0, f64::max)
    }
}

/// All N = 2^a·5^b ≤ `max` whose coefficient requirement fits in the data.
pub fn conductor_candidates(data: &EulerData, primes: &[u64], max: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for &p in primes {
        let mut next = Vec::new();
        for &n in &out {
            let mut m = n;
            while m <= max && required_x(m) <= data.xmax {
                next.push(m);
                m = match m.checked_mul(p) {
                    Some(v) => v,
                    None => break,
                };
            }
        }
        out = next;
    }
    out.sort_unstable();
    out
}

fn evaluate(data: &EulerData, tables: &Tables, n: u64, sign: i32, bad: &BadFactors) -> Result<Candidate> {
    let l = LFunction::new(data, n, sign, bad.clone())?;
    Ok(Candidate { conductor: n, sign, bad_factors: bad.label(), defect: tables.max_defect(&l), bad: bad.clone() })
}

/// Stage 1 scans (N, ε) with trivial bad factors; stage 2 scans bad-factor choices for
/// the three best conductors of stage 1.
pub fn conductor_sign_search(data: &EulerData, points: &[C]) -> Result<SearchReport> {
    let tables = Tables::new(points);
    let bad_primes: Vec<u64> = data.bad.clone();
    let mut seen: BTreeMap<(u64, i32, BadFactors), Candidate> = BTreeMap::new();
    for n in conductor_candidates(data, &bad_primes, u64::MAX) {
        for sign in [1, -1] {
            let c = evaluate(data, &tables, n, sign, &BadFactors::trivial())?;
            seen.insert((n, sign, BadFactors::trivial()), c);
        }
    }
    let mut stage1: Vec<&Candidate> = seen.values().collect();
    stage1.sort_by(|a, b| a.defect.total_cmp(&b.defect));
    let top: Vec<(u64, i32)> = stage1.iter().take(3).map(|c| (c.conductor, c.sign)).collect();
    let mut combos = vec![BadFactors::trivial()];
    for &p in &bad_primes {
        combos = combos
            .into_iter()
            .flat_map(|b| {
                BadFactors::options(p).into_iter().map(move |o| {
                    let mut b = b.clone();
                    if o.len() > 1 {
                        b.0.insert(p, o);
                    }
                    b
                })
            })
            .collect();
    }
    for (n, sign) in top {
        for bad in &combos {
            let key = (n, sign, bad.clone());
            if !seen.contains_key(&key) {
                let c = evaluate(data, &tables, n, sign, bad)?;
                seen.insert(key, c);
            }
        }
    }
    let mut all: Vec<Candidate> = seen.into_values().collect();
    all.sort_by(|a, b| a.defect.total_cmp(&b.defect));
    let evaluated = all.len();
    let mut it = all.into_iter();
    let winner = it.next().ok_or_else(|| Error::InvalidInput("no conductor candidates".into()))?;
    let runner_up = it.next().ok_or_else(|| Error::InvalidInput("single candidate".into()))?;
    let report = SearchReport { winner, runner_up, evaluated, test_points: points.iter().map(|z| (z.re, z.im)).collect() };
    if report.winner.defect >= WINNER_TOL || report.runner_up.defect <= RUNNER_UP_MIN {
        return Err(Error::Ambiguous(format!(
            "winner N = {} (ε = {}) defect {:.2e}, runner-up N = {} (ε = {}, {}) defect {:.2e}",
            report.winner.conductor,
            report.winner.sign,
            report.winner.defect,
            report.runner_up.conductor,
            report.runner_up.sign,
            report.runner_up.bad_factors,
            report.runner_up.defect
        )));
    }
    Ok(report)
}
