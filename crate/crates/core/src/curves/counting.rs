use super::elliptic::EllipticCurve;
use super::hyperelliptic::HyperellipticCurve;
use crate::arith::finite::{FiniteField, FqElem};
use crate::arith::modp::{factor_mod_p, PolyP};
use crate::arith::numfield::{Field, NfElem};
use crate::arith::scalar::{Scalar, Zp};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

pub const ENUMERATION_LIMIT: u128 = 10_000_000;
const TABLE_LIMIT: u128 = 4_000_000;

/// Prime of a number field above p, with its residue field F_{p^f}.
#[derive(Clone, Debug)]
pub struct ResidueField {
    pub p: u64,
    pub f: usize,
    pub e: u32,
    pub factor: PolyP,
    pub fq: FiniteField,
}

pub fn primes_above(field: &Field, p: u64) -> Result<Vec<ResidueField>> {
    let mut out = Vec::new();
    for (g, e) in factor_mod_p(&field.modulus, p)? {
        let fq = FiniteField::with_modulus(&g)?;
        out.push(ResidueField { p, f: fq.f, e, factor: g, fq });
    }
    Ok(out)
}

impl ResidueField {
    pub fn q(&self) -> u128 {
        self.fq.q
    }
    /// Image of a p-integral element; None when p divides the denominator.
    pub fn reduce(&self, a: &NfElem) -> Option<FqElem> {
        let p = self.p;
        let den = Zp::from_bigint(&a.den, p).inverse()?;
        let z = Zp::new(0, p);
        let num = PolyP::new(a.num.iter().map(|c| Zp::from_bigint(c, p)).collect(), z);
        let r = num.rem(&self.factor);
        let v: Vec<Zp> = r.c.iter().map(|c| c.times(&den)).collect();
        Some(self.fq.from_zp_coords(&v))
    }
}

fn valuation(n: &BigInt, p: u64) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let mut n = n.abs();
    let pb = BigInt::from(p);
    let mut v = 0;
    while (&n % &pb).is_zero() {
        n /= &pb;
        v += 1;
    }
    v
}

/// χ on F_q as a lookup table indexed by `FiniteField::index`.
struct ChiTable {
    t: Vec<i8>,
}

impl ChiTable {
    fn new(fq: &FiniteField) -> Self {
        let mut t = vec![-1i8; fq.q as usize];
        t[0] = 0;
        for i in 1..fq.q {
            let a = fq.from_index(i);
            t[fq.index(&fq.mul(&a, &a)) as usize] = 1;
        }
        ChiTable { t }
    }
    fn chi(&self, fq: &FiniteField, a: &FqElem) -> i64 {
        self.t[fq.index(a) as usize] as i64
    }
}

fn horner(fq: &FiniteField, c: &[FqElem], x: &FqElem) -> FqElem {
    let mut acc = fq.zero();
    for a in c.iter().rev() {
        acc = fq.add(&fq.mul(&acc, x), a);
    }
    acc
}

/// #C(F_{p^f}) for the integral model of a genus-2 curve.
pub fn count_points_genus2(c: &HyperellipticCurve, p: u64, f: usize) -> Result<u128> {
    let (ic, _) = c.integral_model();
    let disc = c.integral_discriminant();
    let lc = ic.last().unwrap();
    if p == 2 || (&disc % BigInt::from(p)).is_zero() || (lc % BigInt::from(p)).is_zero() {
        return Err(Error::BadReduction { p, valuation: valuation(&disc, p) });
    }
    let fq = FiniteField::new(p, f)?;
    if fq.q > ENUMERATION_LIMIT {
        return Err(Error::TooLarge(fq.q));
    }
    let coeffs: Vec<FqElem> = ic.iter().map(|a| fq.from_zp_coords(&[Zp::from_bigint(a, p)])).collect();
    let table = ChiTable::new(&fq);
    let mut n: i64 = 0;
    for i in 0..fq.q {
        let x = fq.from_index(i);
        n += 1 + table.chi(&fq, &horner(&fq, &coeffs, &x));
    }
    n += if ic.len() == 7 { 1 + table.chi(&fq, &coeffs[6]) } else { 1 };
    Ok(n as u128)
}

/// y² = x³ + a2 x² + a4 x + a6 over F_q, odd characteristic.
#[derive(Clone, Debug)]
pub struct ReducedCurve {
    pub fq: FiniteField,
    pub a2: FqElem,
    pub a4: FqElem,
    pub a6: FqElem,
}

type Pt = Option<(FqElem, FqElem)>;

impl ReducedCurve {
    /// Completes the square in a general Weierstrass model.
    pub fn from_weierstrass(fq: FiniteField, a: [FqElem; 5]) -> Result<Self> {
        if fq.p == 2 {
            return Err(Error::InvalidInput("characteristic 2".into()));
        }
        let half = fq.inv(&fq.from_u64(2)).unwrap();
        let quarter = fq.mul(&half, &half);
        let [a1, a2, a3, a4, a6] = a;
        let b2 = fq.add(&a2, &fq.mul(&quarter, &fq.mul(&a1, &a1)));
        let b4 = fq.add(&a4, &fq.mul(&half, &fq.mul(&a1, &a3)));
        let b6 = fq.add(&a6, &fq.mul(&quarter, &fq.mul(&a3, &a3)));
        let c = ReducedCurve { fq, a2: b2, a4: b4, a6: b6 };
        if c.fq.is_zero(&c.discriminant()) {
            return Err(Error::Singular);
        }
        Ok(c)
    }
    fn rhs(&self, x: &FqElem) -> FqElem {
        horner(&self.fq, &[self.a6, self.a4, self.a2, self.fq.one()], x)
    }
    /// Discriminant of the cubic (up to the factor 16).
    pub fn discriminant(&self) -> FqElem {
        let fq = &self.fq;
        let (a, b, c) = (self.a2, self.a4, self.a6);
        let m = |x: &FqElem, y: &FqElem| fq.mul(x, y);
        let k = |x: &FqElem, n: i64| fq.mul(x, &fq.from_i64(n));
        // a²b² − 4b³ − 4a³c − 27c² + 18abc
        let t1 = m(&m(&a, &a), &m(&b, &b));
        let t2 = k(&m(&b, &m(&b, &b)), -4);
        let t3 = k(&m(&m(&a, &a), &m(&a, &c)), -4);
        let t4 = k(&m(&c, &c), -27);
        let t5 = k(&m(&m(&a, &b), &c), 18);
        [t2, t3, t4, t5].iter().fold(t1, |s, t| fq.add(&s, t))
    }
    pub fn twist(&self, d: &FqElem) -> Self {
        let fq = &self.fq;
        let d2 = fq.mul(d, d);
        ReducedCurve {
            fq: fq.clone(),
            a2: fq.mul(&self.a2, d),
            a4: fq.mul(&self.a4, &d2),
            a6: fq.mul(&self.a6, &fq.mul(&d2, d)),
        }
    }
    fn add(&self, p1: &Pt, p2: &Pt) -> Pt {
        let fq = &self.fq;
        let (x1, y1) = match p1 {
            None => return *p2,
            Some(v) => *v,
        };
        let (x2, y2) = match p2 {
            None => return *p1,
            Some(v) => *v,
        };
        let lam = if x1 == x2 {
            if fq.is_zero(&fq.add(&y1, &y2)) {
                return None;
            }
            let num = fq.add(
                &fq.add(&fq.scale(&fq.mul(&x1, &x1), 3), &fq.scale(&fq.mul(&self.a2, &x1), 2)),
                &self.a4,
            );
            fq.mul(&num, &fq.inv(&fq.scale(&y1, 2)).unwrap())
        } else {
            fq.mul(&fq.sub(&y2, &y1), &fq.inv(&fq.sub(&x2, &x1)).unwrap())
        };
        let x3 = fq.sub(&fq.sub(&fq.sub(&fq.mul(&lam, &lam), &self.a2), &x1), &x2);
        let y3 = fq.sub(&fq.mul(&lam, &fq.sub(&x1, &x3)), &y1);
        Some((x3, y3))
    }
    fn neg(&self, p: &Pt) -> Pt {
        p.map(|(x, y)| (x, self.fq.neg(&y)))
    }
    fn mul(&self, p: &Pt, mut k: u128) -> Pt {
        let mut acc = None;
        let mut base = *p;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k >>= 1;
        }
        acc
    }
    fn random_point(&self, rng: &mut ChaCha8Rng) -> Pt {
        loop {
            let x = self.fq.random(rng);
            if let Some(y) = self.fq.sqrt(&self.rhs(&x)) {
                return Some((x, y));
            }
        }
    }
    pub fn count_by_enumeration(&self) -> u128 {
        let fq = &self.fq;
        let mut n: i64 = 1;
        if fq.q <= TABLE_LIMIT {
            let table = ChiTable::new(fq);
            for i in 0..fq.q {
                n += 1 + table.chi(fq, &self.rhs(&fq.from_index(i)));
            }
        } else {
            for i in 0..fq.q {
                n += 1 + fq.chi(&self.rhs(&fq.from_index(i))) as i64;
            }
        }
        n as u128
    }
    /// N in the Hasse interval with N·P = O, by baby-step giant-step.
    fn annihilating_orders(&self, pt: &Pt, lo: u128, hi: u128) -> Option<Vec<u128>> {
        let width = hi - lo + 1;
        let m = (width as f64).sqrt().ceil() as u128 + 1;
        let mut baby: HashMap<Pt, u128> = HashMap::new();
        let mut cur: Pt = None;
        for j in 0..m {
            if baby.insert(cur, j).is_some() {
                return None;
            }
            cur = self.add(&cur, pt);
        }
        let step = self.mul(pt, m);
        let mut t = self.mul(pt, lo);
        let mut out = Vec::new();
        let mut i = 0;
        while i * m <= width {
            if let Some(&j) = baby.get(&self.neg(&t)) {
                let n = lo + i * m + j;
                if n <= hi {
                    out.push(n);
                }
            }
            t = self.add(&t, &step);
            i += 1;
        }
        Some(out)
    }
    /// Group order via Hasse-interval BSGS on random points of the curve and its twist.
    pub fn count_by_bsgs(&self, seed: u64) -> Result<u128> {
        let q = self.fq.q;
        let s = 2.0 * (q as f64).sqrt();
        let lo = (q + 1).saturating_sub(s.floor() as u128 + 1);
        let hi = q + 1 + s.ceil() as u128;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let twist = self.twist(&self.fq.nonresidue());
        let mut cand: Vec<u128> = (lo..=hi).collect();
        for round in 0..40 {
            let on_twist = round % 2 == 1;
            let curve = if on_twist { &twist } else { self };
            let pt = curve.random_point(&mut rng);
            let Some(ns) = curve.annihilating_orders(&pt, lo, hi) else { continue };
            cand.retain(|&n| {
                let m = if on_twist { 2 * q + 2 - n } else { n };
                ns.contains(&m)
            });
            if cand.len() == 1 {
                return Ok(cand[0]);
            }
        }
        Err(Error::Ambiguous("Hasse-interval search did not isolate the group order".into()))
    }
    pub fn count(&self) -> Result<u128> {
        if self.fq.q <= ENUMERATION_LIMIT / 2 {
            Ok(self.count_by_enumeration())
        } else {
            self.count_by_bsgs(self.fq.q as u64 ^ 0x5eed)
        }
    }
}

/// #E(F_{p^f}) for an elliptic curve over Q.
pub fn count_points_elliptic_q(e: &EllipticCurve, p: u64, f: usize) -> Result<u128> {
    if e.field.degree != 1 {
        return Err(Error::InvalidInput("curve is not over Q; use a residue field".into()));
    }
    let fq = FiniteField::new(p, f)?;
    let mut a = [fq.zero(); 5];
    for (i, c) in e.coeffs().iter().enumerate() {
        let z = Zp::from_rational(&c.rational_part(), p);
        a[i] = fq.from_zp_coords(&[z.ok_or_else(|| bad(e, p))?]);
    }
    reduced(e, fq, a, p)?.count()
}

fn bad(e: &EllipticCurve, p: u64) -> Error {
    let n = e.discriminant().norm();
    Error::BadReduction { p, valuation: valuation(n.numer(), p) }
}

fn reduced(e: &EllipticCurve, fq: FiniteField, a: [FqElem; 5], p: u64) -> Result<ReducedCurve> {
    if p == 2 {
        return Err(bad(e, p));
    }
    ReducedCurve::from_weierstrass(fq, a).map_err(|_| bad(e, p))
}

/// Reduction of E at a prime of its base field.
pub fn reduce_elliptic(e: &EllipticCurve, rf: &ResidueField) -> Result<ReducedCurve> {
    let mut a = [rf.fq.zero(); 5];
    for (i, c) in e.coeffs().iter().enumerate() {
        a[i] = rf.reduce(c).ok_or_else(|| bad(e, rf.p))?;
    }
    if rf.e > 1 {
        return Err(bad(e, rf.p));
    }
    reduced(e, rf.fq.clone(), a, rf.p)
}

/// #E(k_v) at a prime v of the base field.
pub fn count_points_at(e: &EllipticCurve, rf: &ResidueField) -> Result<u128> {
    reduce_elliptic(e, rf)?.count()
}

/// a_v = q + 1 − #E(k_v).
pub fn trace_at(e: &EllipticCurve, rf: &ResidueField) -> Result<i128> {
    Ok(rf.q() as i128 + 1 - count_points_at(e, rf)? as i128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::numfield::{rational_field, NumberField};
    use crate::arith::scalar::primes_up_to;

    fn h() -> HyperellipticCurve {
        HyperellipticCurve::from_rationals(&[(0, 1), (1, 5), (0, 1), (-1, 1), (0, 1), (1, 1)], "H").unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_points_genus2(&h(), 3, 1).unwrap(), 4);
        let e = EllipticCurve::from_rationals(&rational_field(), [(0, 1), (0, 1), (0, 1), (1, 1), (0, 1)]).unwrap();
        assert_eq!(count_points_elliptic_q(&e, 3, 1).unwrap(), 4);
        assert!(matches!(count_points_genus2(&h(), 5, 1), Err(Error::BadReduction { p: 5, .. })));
    }

    fn brute_genus2(c: &[i64], p: i64) -> i64 {
        let ev = |x: i64| c.iter().rev().fold(0i64, |a, &k| (a * x + k).rem_euclid(p));
        let sq: Vec<bool> = (0..p).map(|a| (0..p).any(|b| b * b % p == a)).collect();
        let mut n = 1;
        for x in 0..p {
            let v = ev(x);
            n += if v == 0 { 1 } else if sq[v as usize] { 2 } else { 0 };
        }
        n
    }

    #[test]
    fn genus2_matches_brute_force_and_weil() {
        for p in primes_up_to(60).into_iter().filter(|&p| p != 2 && p != 5) {
            let n = count_points_genus2(&h(), p, 1).unwrap() as i64;
            assert_eq!(n, brute_genus2(&[0, 5, 0, -25, 0, 25], p as i64), "p={p}");
            let b = 4.0 * (p as f64).sqrt();
            assert!(((n - p as i64 - 1) as f64).abs() <= b);
        }
    }

    #[test]
    fn bsgs_agrees_with_enumeration() {
        let e = EllipticCurve::from_rationals(&rational_field(), [(1, 1), (0, 1), (1, 1), (-3, 1), (5, 1)]).unwrap();
        let mut tested = 0;
        for (p, f) in [(101u64, 2usize), (7, 5), (13, 3), (31, 3), (11, 4), (17, 3), (3, 8)] {
            let fq = FiniteField::new(p, f).unwrap();
            let mut a = [fq.zero(); 5];
            for (i, c) in e.coeffs().iter().enumerate() {
                a[i] = fq.from_zp_coords(&[Zp::from_rational(&c.rational_part(), p).unwrap()]);
            }
            let Ok(r) = ReducedCurve::from_weierstrass(fq, a) else { continue };
            assert_eq!(r.count_by_bsgs(1).unwrap(), r.count_by_enumeration(), "p={p} f={f}");
            tested += 1;
        }
        assert!(tested >= 4);
    }

    #[test]
    fn residue_fields_of_quartic() {
        let k = NumberField::from_i64(&[-5, 0, 0, 0, 1], "K", (1.495, 0.0)).unwrap();
        let degs = |p| {
            let mut d: Vec<usize> = primes_above(&k, p).unwrap().iter().map(|r| r.f).collect();
            d.sort();
            d
        };
        assert_eq!(degs(11), vec![1, 1, 2]);
        assert_eq!(degs(3), vec![2, 2]);
        assert_eq!(degs(13), vec![4]);
        assert_eq!(degs(101), vec![1, 1, 1, 1]);
        assert_eq!(degs(5), vec![1]);
        let g = NfElem::generator(&k);
        for rf in primes_above(&k, 101).unwrap() {
            let r = rf.reduce(&g).unwrap();
            let r4 = rf.fq.pow(&r, 4);
            assert_eq!(r4, rf.fq.from_u64(5));
        }
    }
}
