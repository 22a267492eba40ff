use super::numfield::{Field, NfElem};
use super::poly::Poly;
use super::scalar::Scalar;
use super::zfactor::{factor_over_q, QPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub type NfPoly = Poly<NfElem>;

pub fn nfpoly_from_q(field: &Field, f: &QPoly) -> NfPoly {
    Poly::new(f.c.iter().map(|c| NfElem::from_rational(field, c)).collect(), NfElem::zero(field))
}

/// Interpolates the polynomial of degree ≤ n through (i, ys[i]), i = 0..=n.
fn interpolate(ys: &[BigRational]) -> QPoly {
    let n = ys.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / BigRational::from_integer(BigInt::from(j));
        }
    }
    let z = BigRational::zero();
    let mut acc = Poly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = Poly::new(vec![BigRational::from_integer(BigInt::from(-(i as i64))), BigRational::from_integer(1.into())], z.clone());
        acc = acc.mul(&lin).add(&Poly::constant(dd[i].clone()));
    }
    acc
}

/// Norm to Q of a polynomial over K, by evaluation and interpolation.
pub fn norm_poly(g: &NfPoly) -> QPoly {
    let field = g.zero.field.clone();
    let d = g.degree().unwrap_or(0) * field.degree;
    let ys: Vec<BigRational> = (0..=d)
        .map(|x0| g.eval(&NfElem::from_int(&field, x0 as i64)).norm())
        .collect();
    interpolate(&ys)
}

/// Squarefree decomposition over a number field (characteristic zero Yun).
pub fn squarefree_nf(f: &NfPoly) -> Vec<(NfPoly, u32)> {
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

/// Factorization over K into monic irreducibles (Trager's norm method).
pub fn factor_nf(f: &NfPoly) -> Vec<(NfPoly, u32)> {
    let field = f.zero.field.clone();
    let mut out = Vec::new();
    for (g, m) in squarefree_nf(f) {
        if g.deg_i() == 1 {
            out.push((g, m));
            continue;
        }
        let theta = NfElem::generator(&field);
        for s in [0i64, 1, -1, 2, -2, 3, -3, 4, 5, 7] {
            let shift = theta.times(&NfElem::from_int(&field, s));
            let xs = Poly::new(vec![shift.negated(), NfElem::one(&field)], NfElem::zero(&field));
            let h = g.compose(&xs);
            let n = norm_poly(&h);
            if n.gcd(&n.derivative()).deg_i() > 0 {
                continue;
            }
            let back = Poly::new(vec![shift.clone(), NfElem::one(&field)], NfElem::zero(&field));
            for (ni, _) in factor_over_q(&n) {
                let gi = h.gcd(&nfpoly_from_q(&field, &ni));
                if gi.deg_i() > 0 {
                    out.push((gi.compose(&back).monic(), m));
                }
            }
            break;
        }
    }
    out
}

pub fn roots_nf(f: &NfPoly) -> Vec<NfElem> {
    factor_nf(f)
        .into_iter()
        .filter(|(g, _)| g.deg_i() == 1)
        .map(|(g, _)| g.c[0].negated())
        .collect()
}

pub fn sqrt_nf(a: &NfElem) -> Option<NfElem> {
    if a.is_zero_elt() {
        return Some(a.clone());
    }
    let f = Poly::new(vec![a.negated(), NfElem::zero(&a.field), NfElem::one(&a.field)], NfElem::zero(&a.field));
    roots_nf(&f).into_iter().next()
}

/// Minimal polynomial over Q of an element (via the norm of x − a and its irreducible factor).
pub fn minpoly(a: &NfElem) -> QPoly {
    let f = Poly::new(vec![a.negated(), NfElem::one(&a.field)], NfElem::zero(&a.field));
    let n = norm_poly(&f);
    let fs = factor_over_q(&n);
    fs.into_iter()
        .map(|(g, _)| g)
        .find(|g| nfpoly_from_q(&a.field, g).eval(a).is_zero_elt())
        .expect("minimal polynomial divides the norm")
}

/// Primitive element polynomial for Q(α, β) given minimal polynomials of α and β:
/// returns (k, Res_y(m1(y), m2(x − k y))) for the first k making it squarefree.
pub fn compositum_polynomial(m1: &QPoly, m2: &QPoly) -> (i64, QPoly) {
    let d1 = m1.degree().unwrap();
    let d2 = m2.degree().unwrap();
    for k in [1i64, -1, 2, -2, 3, -3, 4, 5] {
        let ys: Vec<BigRational> = (0..=(d1 * d2))
            .map(|x0| {
                let x0 = BigRational::from_integer(BigInt::from(x0 as i64));
                // m2(x0 − k y) as a polynomial in y
                let lin = Poly::new(vec![x0, BigRational::from_integer(BigInt::from(-k))], BigRational::zero());
                m1.resultant(&m2.compose(&lin))
            })
            .collect();
        let r = interpolate(&ys);
        if r.gcd(&r.derivative()).deg_i() == 0 {
            return (k, r.monic());
        }
    }
    panic!("no separating multiplier found");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::numfield::NumberField;
    use crate::arith::zfactor::qpoly_from_i64;

    #[test]
    fn square_roots_in_quartic_field() {
        let k = NumberField::from_i64(&[-5, 0, 0, 0, 1], "K", (1.495, 0.0)).unwrap();
        let g = NfElem::generator(&k);
        let s5 = g.times(&g);
        let r = sqrt_nf(&s5).unwrap();
        assert_eq!(r.times(&r), s5);
        assert!(sqrt_nf(&NfElem::from_int(&k, 5)).is_some());
        assert!(sqrt_nf(&NfElem::from_int(&k, -1)).is_none());
        assert!(sqrt_nf(&g).is_none());
    }

    #[test]
    fn factors_over_extension() {
        let k = NumberField::from_i64(&[-5, 0, 0, 0, 1], "K", (1.495, 0.0)).unwrap();
        // x^4 - 5 = (x - g)(x + g)(x^2 + g^2) over K
        let f = nfpoly_from_q(&k, &qpoly_from_i64(&[-5, 0, 0, 0, 1]));
        let fs = factor_nf(&f);
        let mut degs: Vec<i64> = fs.iter().map(|(h, _)| h.deg_i()).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 1, 2]);
        assert_eq!(roots_nf(&f).len(), 2);
    }

    #[test]
    fn compositum_of_i_and_fourth_root() {
        let (k, r) = compositum_polynomial(&qpoly_from_i64(&[-5, 0, 0, 0, 1]), &qpoly_from_i64(&[1, 0, 1]));
        assert_eq!(r.degree(), Some(8));
        assert_eq!(k.abs(), 1);
        assert!(crate::arith::zfactor::is_irreducible_q(&r));
    }

    #[test]
    fn minimal_polynomials() {
        let k = NumberField::from_i64(&[-5, 0, 0, 0, 1], "K", (1.495, 0.0)).unwrap();
        let g = NfElem::generator(&k);
        assert_eq!(minpoly(&g.times(&g)), qpoly_from_i64(&[-5, 0, 1]));
        assert_eq!(minpoly(&g.plus(&NfElem::one(&k))).degree(), Some(4));
    }
}
