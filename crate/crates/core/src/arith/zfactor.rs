use super::modp::{factor_poly_p, reduce_int_poly, PolyP};
use super::poly::Poly;
use super::scalar::{primes_up_to, Scalar, Zp};
use super::zn::Zn;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use std::sync::Arc;

pub type QPoly = Poly<BigRational>;

pub fn qpoly_from_ints(c: &[BigInt]) -> QPoly {
    Poly::new(c.iter().map(|a| BigRational::from_integer(a.clone())).collect(), BigRational::zero())
}

pub fn qpoly_from_i64(c: &[i64]) -> QPoly {
    qpoly_from_ints(&c.iter().map(|&a| BigInt::from(a)).collect::<Vec<_>>())
}

/// Scales to a primitive integer polynomial with positive leading coefficient.
pub fn primitive_int(f: &QPoly) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for a in &f.c {
        l = l.lcm(a.denom());
    }
    let v: Vec<BigInt> = f.c.iter().map(|a| (a * BigRational::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for a in &v {
        g = g.gcd(a);
    }
    if g.is_zero() {
        return v;
    }
    if v.last().unwrap().is_negative() {
        g = -g;
    }
    v.into_iter().map(|a| a / &g).collect()
}

fn zn_poly(f: &[BigInt], m: &Arc<BigInt>) -> Poly<Zn> {
    let z = Zn::new(BigInt::zero(), m);
    Poly::new(f.iter().map(|a| Zn::new(a.clone(), m)).collect(), z)
}

fn zp_to_zn(f: &PolyP, m: &Arc<BigInt>) -> Poly<Zn> {
    zn_poly(&f.c.iter().map(|a| BigInt::from(a.v)).collect::<Vec<_>>(), m)
}

fn lift_coeffs(f: &Poly<Zn>) -> Vec<BigInt> {
    f.c.iter().map(|a| a.v.clone()).collect()
}

/// Quadratic Hensel lifting of f ≡ g·h (h monic) from p to a modulus ≥ target.
fn hensel_two(f: &[BigInt], g0: &PolyP, h0: &PolyP, p: u64, target: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let (_, s0, t0) = g0.xgcd(h0);
    let mut m = BigInt::from(p);
    let (mut g, mut h, mut s, mut t) = (
        lift_coeffs(&zp_to_zn(g0, &Arc::new(m.clone()))),
        lift_coeffs(&zp_to_zn(h0, &Arc::new(m.clone()))),
        lift_coeffs(&zp_to_zn(&s0, &Arc::new(m.clone()))),
        lift_coeffs(&zp_to_zn(&t0, &Arc::new(m.clone()))),
    );
    while &m < target {
        let m2 = Arc::new(&m * &m);
        let (fz, gz, hz, sz, tz) = (zn_poly(f, &m2), zn_poly(&g, &m2), zn_poly(&h, &m2), zn_poly(&s, &m2), zn_poly(&t, &m2));
        let e = fz.sub(&gz.mul(&hz));
        let (q, r) = sz.mul(&e).divrem(&hz);
        let g1 = gz.add(&tz.mul(&e)).add(&q.mul(&gz));
        let h1 = hz.add(&r);
        let b = sz.mul(&g1).add(&tz.mul(&h1)).sub(&Poly::constant(g1.zero.one_like()));
        let (c, d) = sz.mul(&b).divrem(&h1);
        let s1 = sz.sub(&d);
        let t1 = tz.sub(&tz.mul(&b)).sub(&c.mul(&g1));
        g = lift_coeffs(&g1);
        h = lift_coeffs(&h1);
        s = lift_coeffs(&s1);
        t = lift_coeffs(&t1);
        m = (*m2).clone();
    }
    (g, h)
}

/// Lifts monic factors of f mod p to monic factors modulo p^k ≥ target.
fn multi_lift(f: &[BigInt], facs: &[PolyP], p: u64, target: &BigInt) -> Vec<Vec<BigInt>> {
    let z = Zp::new(0, p);
    if facs.len() == 1 {
        let mut m = BigInt::from(p);
        while &m < target {
            m = &m * &m;
        }
        let ma = Arc::new(m);
        let fz = zn_poly(f, &ma);
        return vec![lift_coeffs(&fz.monic())];
    }
    let half = facs.len() / 2;
    let lc = Zp::from_bigint(f.last().unwrap(), p);
    let mut g0 = Poly::constant(lc);
    for a in &facs[..half] {
        g0 = g0.mul(a);
    }
    let mut h0 = Poly::constant(z.one_like());
    for b in &facs[half..] {
        h0 = h0.mul(b);
    }
    let (g, h) = hensel_two(f, &g0, &h0, p, target);
    let mut out = multi_lift(&g, &facs[..half], p, target);
    out.extend(multi_lift(&h, &facs[half..], p, target));
    out
}

fn int_divides(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    if !f[0].is_zero() && !g[0].is_zero() && !(&f[0] % &g[0]).is_zero() {
        return None;
    }
    let (q, r) = qpoly_from_ints(f).divrem(&qpoly_from_ints(g));
    if !r.is_zero() || q.c.iter().any(|a| !a.is_integer()) {
        return None;
    }
    Some(q.c.iter().map(|a| a.to_integer()).collect())
}

fn primitive_vec(v: Vec<BigInt>) -> Vec<BigInt> {
    let mut v = v;
    while v.last().is_some_and(|a| a.is_zero()) {
        v.pop();
    }
    primitive_int(&qpoly_from_ints(&v))
}

fn subset_sums(degs: &[usize]) -> BTreeSet<usize> {
    let mut s = BTreeSet::from([0usize]);
    for &d in degs {
        let add: Vec<usize> = s.iter().map(|x| x + d).collect();
        s.extend(add);
    }
    s
}

/// Factors a primitive squarefree integer polynomial into irreducibles over Z.
pub fn zassenhaus(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f.last().unwrap().clone();
    let mut best: Option<(u64, Vec<PolyP>)> = None;
    let mut possible: Option<BTreeSet<usize>> = None;
    let mut good = 0;
    for p in primes_up_to(2000).into_iter().skip(1) {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = reduce_int_poly(f, p);
        if fp.gcd(&fp.derivative()).deg_i() > 0 {
            continue;
        }
        let fs: Vec<PolyP> = factor_poly_p(&fp).into_iter().map(|(g, _)| g).collect();
        let sums = subset_sums(&fs.iter().map(|g| g.degree().unwrap()).collect::<Vec<_>>());
        possible = Some(match possible {
            None => sums,
            Some(s) => s.intersection(&sums).cloned().collect(),
        });
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        good += 1;
        if possible.as_ref().unwrap().len() <= 2 || good >= 8 {
            break;
        }
    }
    if possible.as_ref().is_some_and(|s| s.len() <= 2) {
        return vec![f.to_vec()];
    }
    let (p, facs) = best.expect("some good prime");
    let norm2: BigInt = f.iter().map(|a| a * a).sum();
    let bound = (norm2.sqrt() + 1u32) * (BigInt::one() << n) * lc.abs();
    let target = bound * 2u32 + 1u32;
    let lifted = multi_lift(f, &facs, p, &target);
    let mut m = BigInt::from(p);
    while m < target {
        m = &m * &m;
    }
    let ma = Arc::new(m);
    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut cur = f.to_vec();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut found = false;
        let r = remaining.len();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let lcc = cur.last().unwrap().clone();
            let mut g = zn_poly(&[lcc], &ma);
            for &i in &idx {
                g = g.mul(&zn_poly(&remaining[i], &ma));
            }
            let cand = primitive_vec(g.c.iter().map(|a| a.symmetric()).collect());
            if let Some(q) = int_divides(&cur, &cand) {
                out.push(cand);
                cur = q;
                for &i in idx.iter().rev() {
                    remaining.remove(i);
                }
                found = true;
                break;
            }
            let mut k = s;
            while k > 0 && idx[k - 1] == r - s + k - 1 {
                k -= 1;
            }
            if k == 0 {
                break;
            }
            idx[k - 1] += 1;
            for j in k..s {
                idx[j] = idx[j - 1] + 1;
            }
        }
        if !found {
            s += 1;
        }
    }
    if cur.len() > 1 {
        out.push(primitive_vec(cur));
    }
    out
}

/// Squarefree decomposition over Q (Yun), monic factors with multiplicity.
pub fn squarefree_q(f: &QPoly) -> Vec<(QPoly, u32)> {
    let f = f.monic();
    let mut out = Vec::new();
    let d = f.derivative();
    let mut c = f.gcd(&d);
    let mut w = f.exact_div(&c).unwrap();
    let mut i = 1;
    while w.deg_i() > 0 {
        let y = w.gcd(&c);
        let z = w.exact_div(&y).unwrap();
        if z.deg_i() > 0 {
            out.push((z.monic(), i));
        }
        w = y;
        c = c.exact_div(&w).unwrap();
        i += 1;
    }
    out
}

/// Factorization over Q into monic irreducibles with multiplicities.
pub fn factor_over_q(f: &QPoly) -> Vec<(QPoly, u32)> {
    let mut out = Vec::new();
    for (g, m) in squarefree_q(f) {
        for h in zassenhaus(&primitive_int(&g)) {
            out.push((qpoly_from_ints(&h).monic(), m));
        }
    }
    out.sort_by(|a, b| (a.0.c.len(), format!("{:?}", a.0)).cmp(&(b.0.c.len(), format!("{:?}", b.0))));
    out
}

pub fn is_irreducible_q(f: &QPoly) -> bool {
    f.deg_i() >= 1 && {
        let fs = factor_over_q(f);
        fs.len() == 1 && fs[0].1 == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn prod(fs: &[(QPoly, u32)]) -> QPoly {
        let mut acc = qpoly_from_i64(&[1]);
        for (g, m) in fs {
            acc = acc.mul(&g.pow(*m));
        }
        acc
    }

    #[test]
    fn swinnerton_dyer_like_polys() {
        // x^4 - 10x^2 + 1 is irreducible but splits into quadratics or linears mod every prime
        assert!(is_irreducible_q(&qpoly_from_i64(&[1, 0, -10, 0, 1])));
        assert!(is_irreducible_q(&qpoly_from_i64(&[-5, 0, 0, 0, 1])));
        assert!(!is_irreducible_q(&qpoly_from_i64(&[-4, 0, 1])));
    }

    #[test]
    fn non_monic_factorization() {
        let a = qpoly_from_i64(&[1, 3]);
        let b = qpoly_from_i64(&[-2, 0, 5]);
        let c = qpoly_from_i64(&[7, 1, 0, 2]);
        let f = a.mul(&b).mul(&c).mul(&a);
        let fs = factor_over_q(&f);
        assert_eq!(prod(&fs), f.monic());
        assert_eq!(fs.len(), 3);
    }

    #[test]
    fn compositum_minpoly_degree_16_irreducible() {
        let f = qpoly_from_i64(&[16, 0, 288, 0, -672, 0, 336, 0, 60, 0, 56, 0, 28, 0, 8, 0, 1]);
        assert!(is_irreducible_q(&f));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn products_of_random_factors(a in proptest::collection::vec(-9i64..9, 2..4),
                                      b in proptest::collection::vec(-9i64..9, 2..5),
                                      c in proptest::collection::vec(-9i64..9, 1..4)) {
            let mut a = a; a.push(1);
            let mut b = b; b.push(2);
            let mut c = c; c.push(-1);
            let f = qpoly_from_i64(&a).mul(&qpoly_from_i64(&b)).mul(&qpoly_from_i64(&c));
            let fs = factor_over_q(&f);
            prop_assert_eq!(prod(&fs), f.monic());
            for (g, _) in &fs {
                // each factor must stay irreducible modulo some prime pattern or be linear
                prop_assert!(g.deg_i() >= 1);
                let again = factor_over_q(g);
                prop_assert_eq!(again.len(), 1);
            }
        }
    }
}
