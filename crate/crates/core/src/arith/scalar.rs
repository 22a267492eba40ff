use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;

/// Field element interface shared by rationals, residues, number-field elements and big complex numbers.
///
/// Elements know enough about their parent (modulus, field, precision) to build
/// constants of the same kind, so polynomials never need a separate context.
pub trait Scalar: Clone + Debug + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_int_like(&self, n: i64) -> Self;
    fn is_zero_elt(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn inverse(&self) -> Option<Self>;

    fn is_one_elt(&self) -> bool {
        *self == self.one_like()
    }
    fn divided(&self, o: &Self) -> Option<Self> {
        o.inverse().map(|i| self.times(&i))
    }
    fn pow_u(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.times(&base);
            e >>= 1;
        }
        acc
    }
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn from_int_like(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero_elt(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Residue modulo a word-sized prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Zp {
    pub v: u64,
    pub p: u64,
}

impl Zp {
    pub fn new(v: i128, p: u64) -> Self {
        Zp { v: v.rem_euclid(p as i128) as u64, p }
    }
    pub fn from_bigint(v: &BigInt, p: u64) -> Self {
        let r = v % BigInt::from(p);
        let r: i128 = r.try_into().expect("residue fits");
        Zp::new(r, p)
    }
    pub fn from_rational(q: &BigRational, p: u64) -> Option<Self> {
        let d = Zp::from_bigint(q.denom(), p);
        if d.v == 0 {
            return None;
        }
        Some(Zp::from_bigint(q.numer(), p).times(&d.inverse()?))
    }
    /// Symmetric lift to (−p/2, p/2].
    pub fn lift(&self) -> i64 {
        if self.v > self.p / 2 {
            self.v as i64 - self.p as i64
        } else {
            self.v as i64
        }
    }
    pub fn legendre(&self) -> i32 {
        if self.v == 0 {
            return 0;
        }
        if self.pow_u((self.p - 1) / 2).v == 1 {
            1
        } else {
            -1
        }
    }
}

impl Scalar for Zp {
    fn zero_like(&self) -> Self {
        Zp { v: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Zp { v: 1 % self.p, p: self.p }
    }
    fn from_int_like(&self, n: i64) -> Self {
        Zp::new(n as i128, self.p)
    }
    fn is_zero_elt(&self) -> bool {
        self.v == 0
    }
    fn plus(&self, o: &Self) -> Self {
        let s = self.v + o.v;
        Zp { v: if s >= self.p { s - self.p } else { s }, p: self.p }
    }
    fn minus(&self, o: &Self) -> Self {
        Zp { v: if self.v >= o.v { self.v - o.v } else { self.v + self.p - o.v }, p: self.p }
    }
    fn times(&self, o: &Self) -> Self {
        Zp { v: ((self.v as u128 * o.v as u128) % self.p as u128) as u64, p: self.p }
    }
    fn negated(&self) -> Self {
        Zp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
    fn inverse(&self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        let (mut a, mut b) = (self.v as i128, self.p as i128);
        let (mut x0, mut x1) = (1i128, 0i128);
        while b != 0 {
            let q = a / b;
            (a, b) = (b, a - q * b);
            (x0, x1) = (x1, x0 - q * x1);
        }
        Some(Zp::new(x0, self.p))
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_abs_height(q: &BigRational) -> BigInt {
    std::cmp::max(q.numer().abs(), q.denom().clone())
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for d in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % d == 0 {
            return n == d;
        }
    }
    let (mut dd, mut s) = (n - 1, 0);
    while dd % 2 == 0 {
        dd /= 2;
        s += 1;
    }
    let mulm = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powm = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulm(r, a);
            }
            a = mulm(a, a);
            e >>= 1;
        }
        r
    };
    'w: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm(a, dd);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulm(x, x);
            if x == n - 1 {
                continue 'w;
            }
        }
        return false;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return vec![];
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zp_inverse_roundtrip() {
        for v in 1..13 {
            let a = Zp::new(v, 13);
            assert_eq!(a.times(&a.inverse().unwrap()).v, 1);
        }
    }

    #[test]
    fn primality_matches_sieve() {
        let ps = primes_up_to(2000);
        for n in 0..2000u64 {
            assert_eq!(is_prime_u64(n), ps.binary_search(&n).is_ok(), "{n}");
        }
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007 * 3));
    }

    #[test]
    fn legendre_symbol() {
        assert_eq!(Zp::new(5, 11).legendre(), 1);
        assert_eq!(Zp::new(-4, 11).legendre(), -1);
    }
}
