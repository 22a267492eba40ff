use super::scalar::Scalar;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::sync::Arc;

/// Residue modulo an arbitrary positive integer (used for Hensel lifting modulo p^k).
#[derive(Clone, Debug)]
pub struct Zn {
    pub v: BigInt,
    pub m: Arc<BigInt>,
}

impl PartialEq for Zn {
    fn eq(&self, o: &Self) -> bool {
        self.v == o.v
    }
}

impl Zn {
    pub fn new(v: BigInt, m: &Arc<BigInt>) -> Self {
        Zn { v: v.mod_floor(m), m: m.clone() }
    }
    pub fn symmetric(&self) -> BigInt {
        let half: BigInt = &*self.m >> 1;
        if self.v > half {
            &self.v - &*self.m
        } else {
            self.v.clone()
        }
    }
}

impl Scalar for Zn {
    fn zero_like(&self) -> Self {
        Zn { v: BigInt::zero(), m: self.m.clone() }
    }
    fn one_like(&self) -> Self {
        Zn::new(BigInt::one(), &self.m)
    }
    fn from_int_like(&self, n: i64) -> Self {
        Zn::new(BigInt::from(n), &self.m)
    }
    fn is_zero_elt(&self) -> bool {
        self.v.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        Zn::new(&self.v + &o.v, &self.m)
    }
    fn minus(&self, o: &Self) -> Self {
        Zn::new(&self.v - &o.v, &self.m)
    }
    fn times(&self, o: &Self) -> Self {
        Zn::new(&self.v * &o.v, &self.m)
    }
    fn negated(&self) -> Self {
        Zn::new(-&self.v, &self.m)
    }
    fn inverse(&self) -> Option<Self> {
        let e = self.v.extended_gcd(&self.m);
        if e.gcd.abs().is_one() {
            Some(Zn::new(e.x * e.gcd, &self.m))
        } else {
            None
        }
    }
}
