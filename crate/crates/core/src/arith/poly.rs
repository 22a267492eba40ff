use super::scalar::Scalar;
use std::fmt;

/// Dense univariate polynomial, coefficients low to high, no trailing zeros.
///
/// `zero` pins the coefficient ring so the zero polynomial still knows its parent.
#[derive(Clone, PartialEq)]
pub struct Poly<F: Scalar> {
    pub c: Vec<F>,
    pub zero: F,
}

impl<F: Scalar> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.c)
    }
}

impl<F: Scalar> Poly<F> {
    pub fn new(mut c: Vec<F>, zero: F) -> Self {
        while c.last().is_some_and(|x| x.is_zero_elt()) {
            c.pop();
        }
        Poly { c, zero }
    }
    pub fn from_coeffs(c: Vec<F>) -> Self {
        let zero = c.first().expect("nonempty coefficient list").zero_like();
        Poly::new(c, zero)
    }
    pub fn zero(z: &F) -> Self {
        Poly { c: vec![], zero: z.zero_like() }
    }
    pub fn constant(a: F) -> Self {
        let z = a.zero_like();
        Poly::new(vec![a], z)
    }
    pub fn x(z: &F) -> Self {
        Poly { c: vec![z.zero_like(), z.one_like()], zero: z.zero_like() }
    }
    pub fn monomial(a: F, k: usize) -> Self {
        let z = a.zero_like();
        let mut c = vec![z.clone(); k];
        c.push(a);
        Poly::new(c, z)
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }
    pub fn deg_i(&self) -> i64 {
        self.c.len() as i64 - 1
    }
    pub fn lead(&self) -> F {
        self.c.last().cloned().unwrap_or_else(|| self.zero.clone())
    }
    pub fn coeff(&self, i: usize) -> F {
        self.c.get(i).cloned().unwrap_or_else(|| self.zero.clone())
    }
    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let v = (0..n).map(|i| self.coeff(i).plus(&o.coeff(i))).collect();
        Poly::new(v, self.zero.clone())
    }
    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let v = (0..n).map(|i| self.coeff(i).minus(&o.coeff(i))).collect();
        Poly::new(v, self.zero.clone())
    }
    pub fn neg(&self) -> Self {
        Poly::new(self.c.iter().map(|a| a.negated()).collect(), self.zero.clone())
    }
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.zero);
        }
        let mut v = vec![self.zero.clone(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero_elt() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                v[i + j] = v[i + j].plus(&a.times(b));
            }
        }
        Poly::new(v, self.zero.clone())
    }
    pub fn scale(&self, a: &F) -> Self {
        Poly::new(self.c.iter().map(|x| x.times(a)).collect(), self.zero.clone())
    }
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.zero.clone(); k];
        v.extend(self.c.iter().cloned());
        Poly::new(v, self.zero.clone())
    }
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::constant(self.zero.one_like());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
    pub fn eval(&self, x: &F) -> F {
        let mut acc = self.zero.clone();
        for a in self.c.iter().rev() {
            acc = acc.times(x).plus(a);
        }
        acc
    }
    /// Evaluation at an element of a ring the coefficients embed into.
    pub fn eval_with<G: Scalar>(&self, x: &G, embed: impl Fn(&F) -> G) -> G {
        let mut acc = x.zero_like();
        for a in self.c.iter().rev() {
            acc = acc.times(x).plus(&embed(a));
        }
        acc
    }
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Poly::zero(&self.zero);
        for a in self.c.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(a.clone()));
        }
        acc
    }
    pub fn derivative(&self) -> Self {
        let v = self.c.iter().enumerate().skip(1).map(|(i, a)| a.times(&a.from_int_like(i as i64))).collect();
        Poly::new(v, self.zero.clone())
    }
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().inverse().expect("leading coefficient invertible");
        self.scale(&inv)
    }
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.c.len() - 1;
        let inv = d.lead().inverse().expect("leading coefficient invertible");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(&self.zero), self.clone());
        }
        let mut q = vec![self.zero.clone(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = r[k + dd].times(&inv);
            if !t.is_zero_elt() {
                for (j, b) in d.c.iter().enumerate() {
                    r[k + j] = r[k + j].minus(&t.times(b));
                }
            }
            q[k] = t;
        }
        r.truncate(dd);
        (Poly::new(q, self.zero.clone()), Poly::new(r, self.zero.clone()))
    }
    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
    /// Extended gcd: returns (g, s, t) with s·self + t·o = g, g monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let one = Poly::constant(self.zero.one_like());
        let z = Poly::zero(&self.zero);
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (one.clone(), z.clone());
        let (mut t0, mut t1) = (z, one);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = r1;
            r1 = r;
            let s2 = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s2;
            let t2 = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lead().inverse().unwrap();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }
    pub fn mulmod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }
    pub fn powmod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Poly::constant(self.zero.one_like()).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            base = base.mulmod(&base, m);
            e >>= 1;
        }
        acc
    }
    pub fn map<G: Scalar>(&self, zero: &G, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.c.iter().map(f).collect(), zero.zero_like())
    }
    /// Resultant by the subresultant-free Euclidean recurrence (valid over a field).
    pub fn resultant(&self, o: &Self) -> F {
        let one = self.zero.one_like();
        if self.is_zero() || o.is_zero() {
            return self.zero.clone();
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        let mut acc = one.clone();
        loop {
            let da = a.c.len() - 1;
            let db = b.c.len() - 1;
            if db == 0 {
                return acc.times(&b.lead().pow_u(da as u64));
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return self.zero.clone();
            }
            let dr = r.c.len() - 1;
            if da % 2 == 1 && db % 2 == 1 {
                acc = acc.negated();
            }
            acc = acc.times(&b.lead().pow_u((da - dr) as u64));
            a = b;
            b = r;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::scalar::{rat, Zp};
    use num_rational::BigRational;

    fn qp(v: &[i64]) -> Poly<BigRational> {
        Poly::from_coeffs(v.iter().map(|&a| rat(a, 1)).collect())
    }

    #[test]
    fn divrem_reconstructs() {
        let a = qp(&[3, 0, -2, 5, 1]);
        let b = qp(&[1, 2, 3]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.deg_i() < 2);
    }

    #[test]
    fn gcd_of_products() {
        let f = qp(&[-1, 1]).mul(&qp(&[2, 0, 1]));
        let g = qp(&[-1, 1]).mul(&qp(&[3, 1]));
        assert_eq!(f.gcd(&g), qp(&[-1, 1]));
        let (h, s, t) = f.xgcd(&g);
        assert_eq!(s.mul(&f).add(&t.mul(&g)), h);
    }

    #[test]
    fn resultant_of_linear_factors() {
        // Res(x-2, x^2+1) = 5, Res(x^2-5, x^2-4x+4) = (2^2-5)^2 = 1
        assert_eq!(qp(&[-2, 1]).resultant(&qp(&[1, 0, 1])), rat(5, 1));
        assert_eq!(qp(&[-5, 0, 1]).resultant(&qp(&[4, -4, 1])), rat(1, 1));
    }

    #[test]
    fn powmod_fermat() {
        let p = 7;
        let m = Poly::from_coeffs(vec![Zp::new(1, p), Zp::new(0, p), Zp::new(1, p)]);
        let x = Poly::x(&Zp::new(0, p));
        // x^(p^2) = x in F_7[x]/(x^2+1) since -1 is a non-square mod 7
        assert_eq!(x.powmod(49, &m), x);
    }
}
