//! Dirichlet coefficients of the genus-2 L-function and their on-disk cache.

use crate::curves::hyperelliptic::HyperellipticCurve;
use crate::error::{Error, Result};
use crate::euler::euler_factor_genus2;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::path::Path;

pub const CACHE_VERSION: u32 = 1;

pub fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    if n >= 1 {
        sieve[1] = false;
    }
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            (i * i..=n).step_by(i).for_each(|j| sieve[j] = false);
        }
        i += 1;
    }
    (0..=n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Trace of Frobenius on H¹ over F_p: p + 1 − #H(F_p), by a quadratic-character table.
pub fn trace_mod_p(model: &[BigInt], p: u64) -> i64 {
    let c: Vec<u64> = model.iter().map(|a| a.mod_floor(&BigInt::from(p)).to_u64().unwrap()).collect();
    let mut chi = vec![-1i8; p as usize];
    chi[0] = 0;
    for x in 1..p {
        chi[(x * x % p) as usize] = 1;
    }
    // forward differences of f at 0, so each step is deg(f) additions mod p
    let d = c.len() - 1;
    let mut diff: Vec<u64> = (0..=d as u64).map(|x| c.iter().rev().fold(0u64, |acc, &a| (acc * (x % p) + a) % p)).collect();
    for k in 1..=d {
        for j in (k..=d).rev() {
            diff[j] = (diff[j] + p - diff[j - 1]) % p;
        }
    }
    let mut n: i64 = 0;
    for _ in 0..p {
        n += 1 + chi[diff[0] as usize] as i64;
        for j in 0..d {
            let v = diff[j] + diff[j + 1];
            diff[j] = if v >= p { v - p } else { v };
        }
    }
    n += if c.len() == 7 { 1 + chi[c[6] as usize] as i64 } else { 1 };
    p as i64 + 1 - n
}

/// Frobenius data at good primes: t1 = T-coefficient up to sign, t2 = T² coefficient
/// (only where p² ≤ X).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerData {
    pub model_hash: String,
    pub xmax: u64,
    pub bad: Vec<u64>,
    pub local: BTreeMap<u64, (i64, Option<i64>)>,
}

pub fn model_hash(h: &HyperellipticCurve) -> String {
    let (model, c) = h.integral_model();
    let text = format!("{}|{}", model.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(","), c);
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Bad primes of the integral model: 2 and the primes dividing disc · leading coefficient.
pub fn bad_primes(h: &HyperellipticCurve, xmax: u64) -> Vec<u64> {
    let (model, _) = h.integral_model();
    let d = h.integral_discriminant() * model.last().unwrap();
    primes_up_to(xmax.max(2)).into_iter().filter(|&p| p == 2 || (&d % BigInt::from(p)).is_zero()).collect()
}

impl EulerData {
    pub fn compute(h: &HyperellipticCurve, xmax: u64) -> Result<Self> {
        let (model, _) = h.integral_model();
        let bad = bad_primes(h, xmax);
        let root = isqrt(xmax);
        let mut local = BTreeMap::new();
        for p in primes_up_to(xmax) {
            if bad.contains(&p) {
                continue;
            }
            let t1 = trace_mod_p(&model, p);
            let t2 = if p <= root {
                let f = euler_factor_genus2(h, p)?;
                if (-&f.coeffs[1]).to_i64() != Some(t1) {
                    return Err(Error::InvalidInput(format!("trace mismatch at {p}")));
                }
                Some(f.coeffs[2].to_i64().unwrap())
            } else {
                None
            };
            local.insert(p, (t1, t2));
        }
        Ok(EulerData { model_hash: model_hash(h), xmax, bad, local })
    }

    /// Restriction to a smaller bound; t2 dropped where p² exceeds it.
    pub fn truncate(&self, xmax: u64) -> Self {
        let root = isqrt(xmax);
        let local = self
            .local
            .range(..=xmax)
            .map(|(&p, &(t1, t2))| (p, (t1, if p <= root { t2 } else { None })))
            .collect();
        EulerData { model_hash: self.model_hash.clone(), xmax, bad: self.bad.iter().copied().filter(|&p| p <= xmax).collect(), local }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(f, "# bsd-coefficients {CACHE_VERSION}")?;
        writeln!(f, "# model {}", self.model_hash)?;
        writeln!(f, "# xmax {}", self.xmax)?;
        writeln!(f, "# bad {}", self.bad.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" "))?;
        for (p, (t1, t2)) in &self.local {
            match t2 {
                Some(t2) => writeln!(f, "{p} {t1} {t2}")?,
                None => writeln!(f, "{p} {t1}")?,
            }
        }
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        let f = std::io::BufReader::new(std::fs::File::open(path)?);
        let mut data = EulerData { model_hash: String::new(), xmax: 0, bad: Vec::new(), local: BTreeMap::new() };
        let bad_line = |s: &str| Error::Format(format!("coefficient cache: {s}"));
        for line in f.lines() {
            let line = line?;
            if let Some(h) = line.strip_prefix("# ") {
                let mut it = h.split_whitespace();
                match it.next() {
                    Some("bsd-coefficients") => {
                        let v: u32 = it.next().and_then(|v| v.parse().ok()).ok_or_else(|| bad_line("version"))?;
                        if v != CACHE_VERSION {
                            return Err(bad_line(&format!("unsupported version {v}")));
                        }
                    }
                    Some("model") => data.model_hash = it.next().unwrap_or_default().to_string(),
                    Some("xmax") => data.xmax = it.next().and_then(|v| v.parse().ok()).ok_or_else(|| bad_line("xmax"))?,
                    Some("bad") => data.bad = it.map(|v| v.parse().map_err(|_| bad_line(v))).collect::<Result<_>>()?,
                    _ => {}
                }
                continue;
            }
            let v: Vec<i64> = line.split_whitespace().map(|t| t.parse().map_err(|_| bad_line(&line))).collect::<Result<_>>()?;
            match v[..] {
                [p, t1] => data.local.insert(p as u64, (t1, None)),
                [p, t1, t2] => data.local.insert(p as u64, (t1, Some(t2))),
                _ => return Err(bad_line(&line)),
            };
        }
        if data.model_hash.is_empty() || data.xmax == 0 {
            return Err(bad_line("missing header"));
        }
        Ok(data)
    }

    /// Reads the cache when its model hash matches and it covers `xmax`; otherwise
    /// computes and rewrites it.
    pub fn cached(h: &HyperellipticCurve, xmax: u64, dir: Option<&Path>) -> Result<Self> {
        let Some(dir) = dir else { return Self::compute(h, xmax) };
        let hash = model_hash(h);
        let path = dir.join(format!("{}-{}.coeffs", h.label, &hash[..12]));
        if let Ok(d) = Self::read(&path) {
            if d.model_hash == hash && d.xmax >= xmax {
                return Ok(d.truncate(xmax));
            }
        }
        let d = Self::compute(h, xmax)?;
        std::fs::create_dir_all(dir)?;
        d.write(&path)?;
        Ok(d)
    }
}

/// Local factors 1 + c₁T + c₂T² at bad primes; absent primes get the trivial factor 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct BadFactors(pub BTreeMap<u64, Vec<i64>>);

impl BadFactors {
    pub fn trivial() -> Self {
        BadFactors::default()
    }
    pub fn label(&self) -> String {
        if self.0.values().all(|c| c.iter().skip(1).all(|&x| x == 0)) {
            return "trivial".into();
        }
        self.0
            .iter()
            .map(|(p, c)| format!("{p}:[{}]", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect::<Vec<_>>()
            .join(" ")
    }
    /// 1, 1 ± T, 1 + aT + T² (|a| ≤ 2) and 1 + aT + pT² (a² ≤ 4p).
    pub fn options(p: u64) -> Vec<Vec<i64>> {
        let p = p as i64;
        let mut out = vec![vec![1], vec![1, 1], vec![1, -1]];
        for a in -2..=2 {
            out.push(vec![1, a, 1]);
        }
        let b = (4.0 * p as f64).sqrt() as i64;
        for a in -b..=b {
            out.push(vec![1, a, p]);
        }
        out
    }
}

/// Power-series coefficients of 1/P(T) up to degree k.
fn inverse_series(p: &[i64], k: usize) -> Vec<i64> {
    let mut b = vec![0i64; k + 1];
    b[0] = 1;
    for n in 1..=k {
        b[n] = -(1..p.len().min(n + 1)).map(|j| p[j] * b[n - j]).sum::<i64>();
    }
    b
}

/// a_1..a_X by multiplicativity from the local factors (index 0 unused).
pub fn dirichlet_coefficients(data: &EulerData, bad: &BadFactors, xmax: u64) -> Result<Vec<i64>> {
    if xmax > data.xmax {
        return Err(Error::InsufficientCoefficients(xmax as usize));
    }
    let n = xmax as usize;
    let mut spf = vec![0u32; n + 1];
    for p in primes_up_to(xmax) {
        for j in (p as usize..=n).step_by(p as usize) {
            if spf[j] == 0 {
                spf[j] = p as u32;
            }
        }
    }
    let mut powers: BTreeMap<u64, Vec<i64>> = BTreeMap::new();
    for p in primes_up_to(xmax) {
        let mut k = 0;
        let mut q = p;
        while q <= xmax {
            k += 1;
            q = match q.checked_mul(p) {
                Some(v) => v,
                None => break,
            };
        }
        let factor: Vec<i64> = if let Some(&(t1, t2)) = data.local.get(&p) {
            match (t2, k) {
                (_, 1) => vec![1, -t1],
                (Some(t2), _) => {
                    let pi = p as i64;
                    vec![1, -t1, t2, -pi * t1, pi * pi]
                }
                (None, _) => return Err(Error::InsufficientCoefficients(xmax as usize)),
            }
        } else if data.bad.contains(&p) {
            bad.0.get(&p).cloned().unwrap_or_else(|| vec![1])
        } else {
            return Err(Error::InvalidInput(format!("missing Euler factor at {p}")));
        };
        powers.insert(p, inverse_series(&factor, k));
    }
    let mut a = vec![0i64; n + 1];
    if n >= 1 {
        a[1] = 1;
    }
    for m in 2..=n {
        let p = spf[m] as usize;
        let (mut r, mut k) = (m, 0);
        while r % p == 0 {
            r /= p;
            k += 1;
        }
        a[m] = powers[&(p as u64)][k] * a[r];
    }
    Ok(a)
}

/// d_4(n): number of ordered factorizations into four positive factors.
pub fn divisor4(n: u64) -> u64 {
    let mut m = n;
    let mut out = 1;
    let mut p = 2;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        // C(e + 3, 3)
        out *= (e + 1) * (e + 2) * (e + 3) / 6;
        p += 1;
    }
    if m > 1 {
        out *= 4;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::curve_h;
    use crate::curves::count_points_genus2;

    #[test]
    fn fast_trace_matches_generic_count() {
        let h = curve_h();
        let (model, _) = h.integral_model();
        for p in [3u64, 7, 11, 13, 101, 499] {
            let n = count_points_genus2(&h, p, 1).unwrap() as i64;
            assert_eq!(trace_mod_p(&model, p), p as i64 + 1 - n, "p = {p}");
        }
    }

    #[test]
    fn inverse_series_of_linear() {
        assert_eq!(inverse_series(&[1, -2], 4), vec![1, 2, 4, 8, 16]);
        assert_eq!(inverse_series(&[1], 3), vec![1, 0, 0, 0]);
    }

    #[test]
    fn divisor4_small() {
        assert_eq!(divisor4(1), 1);
        assert_eq!(divisor4(2), 4);
        assert_eq!(divisor4(4), 10);
        assert_eq!(divisor4(6), 16);
    }

    #[test]
    fn bad_factor_options_have_correct_size() {
        assert_eq!(BadFactors::options(2).len(), 3 + 5 + 5);
        assert_eq!(BadFactors::options(5).len(), 3 + 5 + 9);
    }
}
