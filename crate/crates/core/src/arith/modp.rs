use super::poly::Poly;
use super::scalar::{is_prime_u64, Scalar, Zp};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type PolyP = Poly<Zp>;

pub fn reduce_int_poly(coeffs: &[BigInt], p: u64) -> PolyP {
    Poly::new(coeffs.iter().map(|c| Zp::from_bigint(c, p)).collect(), Zp::new(0, p))
}

fn pth_root(f: &PolyP, p: u64) -> PolyP {
    let z = f.zero;
    let v = f.c.iter().step_by(p as usize).cloned().collect();
    Poly::new(v, z)
}

/// Squarefree decomposition over F_p: list of (squarefree factor, multiplicity).
pub fn squarefree_decomposition(f: &PolyP) -> Vec<(PolyP, u32)> {
    let p = f.zero.p;
    let mut out = Vec::new();
    sqf_rec(&f.monic(), p, 1, &mut out);
    out.sort_by_key(|(g, m)| (*m, g.c.len()));
    out
}

fn sqf_rec(f: &PolyP, p: u64, mult: u32, out: &mut Vec<(PolyP, u32)>) {
    if f.deg_i() <= 0 {
        return;
    }
    let d = f.derivative();
    if d.is_zero() {
        sqf_rec(&pth_root(f, p), p, mult * p as u32, out);
        return;
    }
    let mut c = f.gcd(&d);
    let mut w = f.exact_div(&c).unwrap();
    let mut i = 1;
    while w.deg_i() > 0 {
        let y = w.gcd(&c);
        let z = w.exact_div(&y).unwrap();
        if z.deg_i() > 0 {
            out.push((z.monic(), i * mult));
        }
        w = y;
        c = c.exact_div(&w).unwrap();
        i += 1;
    }
    if c.deg_i() > 0 {
        sqf_rec(&pth_root(&c, p), p, mult * p as u32, out);
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn distinct_degree(f: &PolyP) -> Vec<(PolyP, usize)> {
    let p = f.zero.p;
    let x = Poly::x(&f.zero);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 0;
    while rest.deg_i() >= 2 * (d as i64 + 1) {
        d += 1;
        h = h.powmod(p as u128, &rest);
        let g = h.sub(&x).gcd(&rest);
        if g.deg_i() > 0 {
            out.push((g.clone(), d));
            rest = rest.exact_div(&g).unwrap();
            h = h.rem(&rest);
        }
    }
    if rest.deg_i() > 0 {
        let dr = rest.degree().unwrap();
        out.push((rest, dr));
    }
    out
}

/// Splits a product of distinct degree-d irreducibles (Cantor–Zassenhaus).
pub fn equal_degree(f: &PolyP, d: usize, rng: &mut ChaCha8Rng) -> Vec<PolyP> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.monic()];
    }
    let p = f.zero.p;
    let z = f.zero;
    loop {
        let a = Poly::new((0..n).map(|_| Zp::new(rng.gen_range(0..p) as i128, p)).collect(), z);
        if a.deg_i() <= 0 {
            continue;
        }
        let g = if p == 2 {
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = t.mulmod(&t, f);
                acc = acc.add(&t);
            }
            acc.gcd(f)
        } else {
            let e = ((p as u128).pow(d as u32) - 1) / 2;
            let b = a.powmod(e, f).sub(&Poly::constant(z.one_like()));
            b.gcd(f)
        };
        if g.deg_i() > 0 && g.deg_i() < n as i64 {
            let h = f.exact_div(&g).unwrap();
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h.monic(), d, rng));
            return out;
        }
    }
}

/// Complete factorization of a polynomial over F_p into monic irreducibles with multiplicity.
pub fn factor_poly_p(f: &PolyP) -> Vec<(PolyP, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ f.zero.p);
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(f) {
        for (h, d) in distinct_degree(&g) {
            for q in equal_degree(&h, d, &mut rng) {
                out.push((q, m));
            }
        }
    }
    out.sort_by(|a, b| (a.0.c.len(), a.1, a.0.c.iter().map(|z| z.v).collect::<Vec<_>>()).cmp(&(
        b.0.c.len(),
        b.1,
        b.0.c.iter().map(|z| z.v).collect::<Vec<_>>(),
    )));
    out
}

/// Factors an integer polynomial modulo a prime p.
pub fn factor_mod_p(coeffs: &[BigInt], p: u64) -> Result<Vec<(PolyP, u32)>> {
    if !is_prime_u64(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let f = reduce_int_poly(coeffs, p);
    if f.is_zero() {
        return Err(Error::InvalidInput("polynomial vanishes modulo p".into()));
    }
    Ok(factor_poly_p(&f))
}

pub fn is_irreducible_p(f: &PolyP) -> bool {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    let fm = f.monic();
    let sq = squarefree_decomposition(&fm);
    if sq.len() != 1 || sq[0].1 != 1 {
        return false;
    }
    let dd = distinct_degree(&fm);
    dd.len() == 1 && dd[0].1 == n
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&a| BigInt::from(a)).collect()
    }

    fn product(fs: &[(PolyP, u32)], z: Zp) -> PolyP {
        let mut acc = Poly::constant(z.one_like());
        for (g, m) in fs {
            acc = acc.mul(&g.pow(*m));
        }
        acc
    }

    fn brute_irreducible_quadratics(p: u64) -> Vec<PolyP> {
        let z = Zp::new(0, p);
        let mut out = vec![];
        for b in 0..p {
            for c in 0..p {
                let q = Poly::new(vec![Zp::new(c as i128, p), Zp::new(b as i128, p), z.one_like()], z);
                if (0..p).all(|x| !q.eval(&Zp::new(x as i128, p)).is_zero_elt()) {
                    out.push(q);
                }
            }
        }
        out
    }

    #[test]
    fn x4_minus_5_mod_3_two_irreducible_quadratics() {
        let fs = factor_mod_p(&ints(&[-5, 0, 0, 0, 1]), 3).unwrap();
        assert_eq!(fs.len(), 2);
        let irr = brute_irreducible_quadratics(3);
        for (g, m) in &fs {
            assert_eq!(*m, 1);
            assert!(irr.contains(g));
        }
        assert_ne!(fs[0].0, fs[1].0);
    }

    #[test]
    fn x4_minus_5_mod_11() {
        let fs = factor_mod_p(&ints(&[-5, 0, 0, 0, 1]), 11).unwrap();
        let z = Zp::new(0, 11);
        let lin = |a: i128| Poly::new(vec![Zp::new(a, 11), z.one_like()], z);
        let quad = Poly::new(vec![Zp::new(4, 11), z, z.one_like()], z);
        let got: Vec<_> = fs.iter().map(|(g, _)| g.clone()).collect();
        assert_eq!(got.len(), 3);
        assert!(got.contains(&lin(-2)) && got.contains(&lin(2)) && got.contains(&quad));
    }

    #[test]
    fn x4_minus_5_mod_5_total_ramification() {
        let fs = factor_mod_p(&ints(&[-5, 0, 0, 0, 1]), 5).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].1, 4);
        assert_eq!(fs[0].0.deg_i(), 1);
    }

    #[test]
    fn composite_modulus_rejected() {
        assert!(factor_mod_p(&ints(&[1, 1]), 9).is_err());
    }

    #[test]
    fn char_two_and_pth_powers() {
        // (x^2+x+1)^2 (x+1)^3 over F_2 ; x^10 - 1 over F_5 has p-th power structure
        let z = Zp::new(0, 2);
        let a = Poly::new(vec![z.one_like(), z.one_like(), z.one_like()], z);
        let b = Poly::new(vec![z.one_like(), z.one_like()], z);
        let f = a.pow(2).mul(&b.pow(3));
        let fs = factor_poly_p(&f);
        assert_eq!(product(&fs, z), f);
        let g = reduce_int_poly(&ints(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]), 5);
        let gs = factor_poly_p(&g);
        assert_eq!(product(&gs, Zp::new(0, 5)), g);
        assert!(gs.iter().all(|(h, m)| *m == 5 && is_irreducible_p(h)));
    }

    proptest! {
        #[test]
        fn factorization_recombines(coeffs in proptest::collection::vec(-50i64..50, 2..9),
                                    pi in 0usize..8) {
            let p = [2u64, 3, 5, 7, 11, 13, 101, 65537][pi];
            let mut c = ints(&coeffs);
            c.push(BigInt::from(1));
            let f = reduce_int_poly(&c, p);
            let fs = factor_mod_p(&c, p).unwrap();
            prop_assert_eq!(product(&fs, f.zero), f.monic());
            for (g, _) in &fs {
                prop_assert!(is_irreducible_p(g));
                prop_assert!(g.lead().is_one_elt());
            }
        }
    }
}
