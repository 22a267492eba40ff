use super::bigfloat::BigReal;
use crate::arith::scalar::Scalar;
use std::fmt;

#[derive(Clone, PartialEq)]
pub struct BigComplex {
    pub re: BigReal,
    pub im: BigReal,
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}i)", self.re, self.im)
    }
}

impl BigComplex {
    pub fn new(re: BigReal, im: BigReal) -> Self {
        BigComplex { re, im }
    }
    pub fn from_real(re: BigReal) -> Self {
        let p = re.prec();
        BigComplex { re, im: BigReal::zero(p) }
    }
    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        BigComplex { re: BigReal::from_f64(re, prec), im: BigReal::from_f64(im, prec) }
    }
    pub fn from_i64(n: i64, prec: u32) -> Self {
        BigComplex::from_real(BigReal::from_i64(n, prec))
    }
    pub fn zero(prec: u32) -> Self {
        BigComplex::from_i64(0, prec)
    }
    pub fn one(prec: u32) -> Self {
        BigComplex::from_i64(1, prec)
    }
    pub fn i(prec: u32) -> Self {
        BigComplex { re: BigReal::zero(prec), im: BigReal::one(prec) }
    }
    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }
    pub fn with_prec(&self, p: u32) -> Self {
        BigComplex { re: self.re.with_prec(p), im: self.im.with_prec(p) }
    }
    pub fn add(&self, o: &Self) -> Self {
        BigComplex { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }
    pub fn sub(&self, o: &Self) -> Self {
        BigComplex { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }
    pub fn mul(&self, o: &Self) -> Self {
        BigComplex {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }
    pub fn scale(&self, r: &BigReal) -> Self {
        BigComplex { re: self.re.mul(r), im: self.im.mul(r) }
    }
    pub fn mul_2exp(&self, k: i64) -> Self {
        BigComplex { re: self.re.mul_2exp(k), im: self.im.mul_2exp(k) }
    }
    pub fn neg(&self) -> Self {
        BigComplex { re: self.re.neg(), im: self.im.neg() }
    }
    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: self.im.neg() }
    }
    pub fn mul_i(&self) -> Self {
        BigComplex { re: self.im.neg(), im: self.re.clone() }
    }
    pub fn norm_sqr(&self) -> BigReal {
        self.re.sqr().add(&self.im.sqr())
    }
    pub fn abs(&self) -> BigReal {
        self.norm_sqr().sqrt()
    }
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        BigComplex { re: self.re.div(&n), im: self.im.neg().div(&n) }
    }
    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.recip())
    }
    pub fn sqr(&self) -> Self {
        self.mul(self)
    }
    pub fn powi(&self, k: u32) -> Self {
        self.pow_u(k as u64)
    }
    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let r = self.abs();
        let a = r.add(&self.re).mul_2exp(-1);
        let b = r.sub(&self.re).mul_2exp(-1);
        let a = if a.is_negative() { BigReal::zero(a.prec()) } else { a.sqrt() };
        let b = if b.is_negative() { BigReal::zero(b.prec()) } else { b.sqrt() };
        let b = if self.im.is_negative() { b.neg() } else { b };
        BigComplex { re: a, im: b }
    }
    pub fn exp(&self) -> Self {
        let m = self.re.exp();
        let (c, s) = self.im.cos_sin();
        BigComplex { re: m.mul(&c), im: m.mul(&s) }
    }
    pub fn ln(&self) -> Self {
        BigComplex { re: self.abs().ln(), im: BigReal::atan2(&self.im, &self.re) }
    }
    pub fn to_c64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
    /// log2 of the modulus (approximate), very negative for zero.
    pub fn mag_exponent(&self) -> i64 {
        self.re.exponent().max(self.im.exponent())
    }
}

impl Scalar for BigComplex {
    fn zero_like(&self) -> Self {
        BigComplex::zero(self.prec())
    }
    fn one_like(&self) -> Self {
        BigComplex::one(self.prec())
    }
    fn from_int_like(&self, n: i64) -> Self {
        BigComplex::from_i64(n, self.prec())
    }
    fn is_zero_elt(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_identity_and_roots() {
        let p = 200;
        let pi = BigReal::pi(p);
        let z = BigComplex::new(BigReal::zero(p), pi.clone()).exp();
        assert!(z.add(&BigComplex::one(p)).abs().exponent() < -190);
        let w = BigComplex::from_f64(-3.0, 4.0, p).sqrt();
        assert!(w.sub(&BigComplex::from_f64(1.0, 2.0, p)).abs().exponent() < -190);
        let l = BigComplex::from_f64(0.0, 1.0, p).ln();
        assert!(l.im.sub(&pi.mul_2exp(-1)).abs().exponent() < -190);
    }
}
