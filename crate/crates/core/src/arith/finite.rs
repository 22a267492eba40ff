use super::modp::{is_irreducible_p, PolyP};
use super::poly::Poly;
use super::scalar::{is_prime_u64, Zp};
use crate::error::{Error, Result};
use rand::Rng;

pub const MAXF: usize = 8;

/// Element of F_p[x]/(modulus); coordinates are meaningful up to the field's degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FqElem(pub [u64; MAXF]);

/// Finite field F_{p^f} presented as F_p[x]/(modulus) with a monic irreducible modulus.
#[derive(Clone, Debug)]
pub struct FiniteField {
    pub p: u64,
    pub f: usize,
    pub modulus: Vec<u64>,
    pub q: u128,
    nonresidue: FqElem,
}

impl FiniteField {
    pub fn with_modulus(modulus: &PolyP) -> Result<Self> {
        let p = modulus.zero.p;
        if !is_prime_u64(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        let f = modulus.degree().unwrap_or(0);
        if f == 0 || f > MAXF {
            return Err(Error::InvalidInput(format!("extension degree {f} unsupported")));
        }
        if !is_irreducible_p(modulus) {
            return Err(Error::InvalidInput("modulus not irreducible".into()));
        }
        let m = modulus.monic();
        let mut ff = FiniteField {
            p,
            f,
            modulus: m.c.iter().map(|a| a.v).collect(),
            q: (p as u128).pow(f as u32),
            nonresidue: FqElem([0; MAXF]),
        };
        if p != 2 {
            let mut i: u128 = 2;
            loop {
                let c = ff.from_index(i);
                if !ff.is_zero(&c) && !ff.is_square(&c) {
                    ff.nonresidue = c;
                    break;
                }
                i += 1;
            }
        }
        Ok(ff)
    }

    /// Field of order p^f using the lexicographically first monic irreducible modulus.
    pub fn new(p: u64, f: usize) -> Result<Self> {
        let z = Zp::new(0, p);
        if f == 1 {
            return FiniteField::with_modulus(&Poly::new(vec![z, Zp::new(1, p)], z));
        }
        let total = (p as u128).pow(f as u32);
        for idx in 0..total {
            let mut c = Vec::with_capacity(f + 1);
            let mut t = idx;
            for _ in 0..f {
                c.push(Zp::new((t % p as u128) as i128, p));
                t /= p as u128;
            }
            c.push(Zp::new(1, p));
            let m = Poly::new(c, z);
            if is_irreducible_p(&m) {
                return FiniteField::with_modulus(&m);
            }
        }
        Err(Error::InvalidInput("no irreducible modulus".into()))
    }

    pub fn nonresidue(&self) -> FqElem {
        self.nonresidue
    }
    pub fn zero(&self) -> FqElem {
        FqElem([0; MAXF])
    }
    pub fn one(&self) -> FqElem {
        self.from_u64(1)
    }
    pub fn from_u64(&self, a: u64) -> FqElem {
        let mut c = [0; MAXF];
        c[0] = a % self.p;
        FqElem(c)
    }
    pub fn from_i64(&self, a: i64) -> FqElem {
        let mut c = [0; MAXF];
        c[0] = a.rem_euclid(self.p as i64) as u64;
        FqElem(c)
    }
    pub fn from_zp_coords(&self, v: &[Zp]) -> FqElem {
        let mut c = [0; MAXF];
        for (i, a) in v.iter().enumerate() {
            c[i] = a.v;
        }
        FqElem(c)
    }
    pub fn generator(&self) -> FqElem {
        if self.f == 1 {
            return self.from_u64((self.p - self.modulus[0]) % self.p);
        }
        let mut c = [0; MAXF];
        c[1] = 1;
        FqElem(c)
    }
    pub fn from_index(&self, mut idx: u128) -> FqElem {
        let mut c = [0; MAXF];
        for ci in c.iter_mut().take(self.f) {
            *ci = (idx % self.p as u128) as u64;
            idx /= self.p as u128;
        }
        FqElem(c)
    }
    pub fn index(&self, a: &FqElem) -> u128 {
        let mut idx = 0u128;
        for i in (0..self.f).rev() {
            idx = idx * self.p as u128 + a.0[i] as u128;
        }
        idx
    }
    pub fn is_zero(&self, a: &FqElem) -> bool {
        a.0[..self.f].iter().all(|&x| x == 0)
    }
    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let mut c = [0; MAXF];
        for i in 0..self.f {
            let s = a.0[i] + b.0[i];
            c[i] = if s >= self.p { s - self.p } else { s };
        }
        FqElem(c)
    }
    pub fn neg(&self, a: &FqElem) -> FqElem {
        let mut c = [0; MAXF];
        for i in 0..self.f {
            c[i] = if a.0[i] == 0 { 0 } else { self.p - a.0[i] };
        }
        FqElem(c)
    }
    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.add(a, &self.neg(b))
    }
    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let f = self.f;
        let p = self.p as u128;
        if f == 1 {
            let mut c = [0; MAXF];
            c[0] = ((a.0[0] as u128 * b.0[0] as u128) % p) as u64;
            return FqElem(c);
        }
        let mut t = [0u128; 2 * MAXF];
        for i in 0..f {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..f {
                t[i + j] += a.0[i] as u128 * b.0[j] as u128;
            }
        }
        for k in (f..2 * f - 1).rev() {
            let c = t[k] % p;
            if c == 0 {
                continue;
            }
            for j in 0..f {
                let m = self.modulus[j] as u128;
                if m != 0 {
                    t[k - f + j] += (p - m) * c;
                }
            }
        }
        let mut c = [0; MAXF];
        for i in 0..f {
            c[i] = (t[i] % p) as u64;
        }
        FqElem(c)
    }
    pub fn scale(&self, a: &FqElem, k: u64) -> FqElem {
        self.mul(a, &self.from_u64(k))
    }
    pub fn pow(&self, a: &FqElem, mut e: u128) -> FqElem {
        let mut base = *a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
    pub fn inv(&self, a: &FqElem) -> Option<FqElem> {
        if self.is_zero(a) {
            None
        } else {
            Some(self.pow(a, self.q - 2))
        }
    }
    pub fn is_square(&self, a: &FqElem) -> bool {
        if self.is_zero(a) || self.p == 2 {
            return true;
        }
        self.pow(a, (self.q - 1) / 2) == self.one()
    }
    /// Quadratic character: 0, 1 or −1.
    pub fn chi(&self, a: &FqElem) -> i32 {
        if self.is_zero(a) {
            0
        } else if self.is_square(a) {
            1
        } else {
            -1
        }
    }
    /// Square root by Tonelli–Shanks (odd characteristic).
    pub fn sqrt(&self, a: &FqElem) -> Option<FqElem> {
        if self.is_zero(a) {
            return Some(*a);
        }
        if self.p == 2 {
            return Some(self.pow(a, self.q / 2));
        }
        if !self.is_square(a) {
            return None;
        }
        let mut s = 0;
        let mut t = self.q - 1;
        while t % 2 == 0 {
            t /= 2;
            s += 1;
        }
        let mut m = s;
        let mut c = self.pow(&self.nonresidue, t);
        let mut x = self.pow(a, t.div_ceil(2));
        let mut b = self.pow(a, t);
        let one = self.one();
        while b != one {
            let mut i = 0;
            let mut bb = b;
            while bb != one {
                bb = self.mul(&bb, &bb);
                i += 1;
            }
            let mut w = c;
            for _ in 0..(m - i - 1) {
                w = self.mul(&w, &w);
            }
            x = self.mul(&x, &w);
            c = self.mul(&w, &w);
            b = self.mul(&b, &c);
            m = i;
        }
        Some(x)
    }
    pub fn random(&self, rng: &mut impl Rng) -> FqElem {
        let mut c = [0; MAXF];
        for ci in c.iter_mut().take(self.f) {
            *ci = rng.gen_range(0..self.p);
        }
        FqElem(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn multiplicative_group_order() {
        for (p, f) in [(3u64, 2usize), (5, 3), (7, 2), (2, 4), (11, 4)] {
            let k = FiniteField::new(p, f).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(p);
            for _ in 0..20 {
                let a = k.random(&mut rng);
                if k.is_zero(&a) {
                    continue;
                }
                assert_eq!(k.pow(&a, k.q - 1), k.one());
                assert_eq!(k.mul(&a, &k.inv(&a).unwrap()), k.one());
            }
        }
    }

    #[test]
    fn square_roots() {
        let k = FiniteField::new(13, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut squares = 0;
        for _ in 0..50 {
            let a = k.random(&mut rng);
            if let Some(r) = k.sqrt(&a) {
                assert_eq!(k.mul(&r, &r), a);
                squares += 1;
            }
        }
        assert!(squares > 10 && squares < 40);
    }

    #[test]
    fn index_roundtrip() {
        let k = FiniteField::new(5, 2).unwrap();
        for i in 0..25 {
            assert_eq!(k.index(&k.from_index(i)), i);
        }
    }
}
