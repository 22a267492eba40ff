use super::poly::Poly;
use super::scalar::Scalar;
use super::zfactor::{factor_over_q, qpoly_from_ints, QPoly};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use std::fmt;
use std::sync::Arc;

/// Absolute number field Q[x]/(m(x)) with a designated complex embedding of the generator.
#[derive(Debug, PartialEq)]
pub struct NumberField {
    pub modulus: Vec<BigInt>,
    pub degree: usize,
    pub label: String,
    /// Approximate image of the generator; refined to any precision by Newton iteration.
    pub embedding: (f64, f64),
}

pub type Field = Arc<NumberField>;

fn fmt_int_poly(c: &[BigInt]) -> String {
    let mut terms = Vec::new();
    for (i, a) in c.iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let t = match i {
            0 => format!("{a}"),
            1 => format!("{a}*x"),
            _ => format!("{a}*x^{i}"),
        };
        terms.push(t);
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

impl NumberField {
    /// Builds the field after an exact irreducibility check of the modulus.
    pub fn new(modulus: Vec<BigInt>, label: &str, embedding: (f64, f64)) -> Result<Field> {
        let d = modulus.len().checked_sub(1).filter(|&d| d >= 1);
        let d = d.ok_or_else(|| Error::InvalidInput("modulus must have degree >= 1".into()))?;
        if !modulus[d].is_one() {
            return Err(Error::InvalidInput("modulus must be monic".into()));
        }
        let fs = factor_over_q(&qpoly_from_ints(&modulus));
        if fs.len() != 1 || fs[0].1 != 1 {
            let g = super::zfactor::primitive_int(&fs[0].0);
            return Err(Error::Reducible(fmt_int_poly(&g)));
        }
        Ok(Arc::new(NumberField { modulus, degree: d, label: label.into(), embedding }))
    }

    pub fn from_i64(modulus: &[i64], label: &str, embedding: (f64, f64)) -> Result<Field> {
        NumberField::new(modulus.iter().map(|&a| BigInt::from(a)).collect(), label, embedding)
    }

    pub fn modulus_qpoly(&self) -> QPoly {
        qpoly_from_ints(&self.modulus)
    }

    pub fn modulus_string(&self) -> String {
        fmt_int_poly(&self.modulus)
    }
}

pub fn rational_field() -> Field {
    Arc::new(NumberField { modulus: vec![BigInt::zero(), BigInt::one()], degree: 1, label: "Q".into(), embedding: (0.0, 0.0) })
}

/// Element stored as integer coordinates over a common positive denominator.
#[derive(Clone)]
pub struct NfElem {
    pub field: Field,
    pub num: Vec<BigInt>,
    pub den: BigInt,
}

impl fmt::Debug for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => format!("{c}"),
                1 => format!("({c})*a"),
                _ => format!("({c})*a^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl PartialEq for NfElem {
    fn eq(&self, o: &Self) -> bool {
        self.num == o.num && self.den == o.den
    }
}

impl NfElem {
    fn normalized(field: &Field, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for a in num.iter_mut() {
                *a = -&*a;
            }
        }
        let mut g = den.clone();
        for a in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(a);
        }
        if !g.is_one() && !g.is_zero() {
            for a in num.iter_mut() {
                *a = &*a / &g;
            }
            den = den / &g;
        }
        NfElem { field: field.clone(), num, den }
    }

    pub fn from_rational(field: &Field, q: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); field.degree];
        num[0] = q.numer().clone();
        NfElem::normalized(field, num, q.denom().clone())
    }

    pub fn from_int(field: &Field, n: i64) -> Self {
        NfElem::from_rational(field, &BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero(field: &Field) -> Self {
        NfElem::from_int(field, 0)
    }

    pub fn one(field: &Field) -> Self {
        NfElem::from_int(field, 1)
    }

    pub fn generator(field: &Field) -> Self {
        if field.degree == 1 {
            return NfElem::from_rational(field, &BigRational::from_integer(-field.modulus[0].clone()));
        }
        let mut num = vec![BigInt::zero(); field.degree];
        num[1] = BigInt::one();
        NfElem { field: field.clone(), num, den: BigInt::one() }
    }

    pub fn from_coords(field: &Field, coords: &[BigRational]) -> Self {
        assert_eq!(coords.len(), field.degree, "coordinate count");
        let mut den = BigInt::one();
        for c in coords {
            den = den.lcm(c.denom());
        }
        let num = coords.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
        NfElem::normalized(field, num, den)
    }

    pub fn from_i64_coords(field: &Field, num: &[i64], den: i64) -> Self {
        let mut v: Vec<BigInt> = num.iter().map(|&a| BigInt::from(a)).collect();
        v.resize(field.degree, BigInt::zero());
        NfElem::normalized(field, v, BigInt::from(den))
    }

    /// Reduces an arbitrary-length polynomial in the generator.
    pub fn from_qpoly(field: &Field, p: &QPoly) -> Self {
        let r = p.rem(&field.modulus_qpoly());
        let mut coords = vec![BigRational::zero(); field.degree];
        for (i, c) in r.c.iter().enumerate() {
            coords[i] = c.clone();
        }
        NfElem::from_coords(field, &coords)
    }

    pub fn coords(&self) -> Vec<BigRational> {
        self.num.iter().map(|a| BigRational::new(a.clone(), self.den.clone())).collect()
    }

    pub fn to_qpoly(&self) -> QPoly {
        Poly::new(self.coords(), BigRational::zero())
    }

    pub fn is_rational(&self) -> bool {
        self.num.iter().skip(1).all(|a| a.is_zero())
    }

    pub fn rational_part(&self) -> BigRational {
        BigRational::new(self.num[0].clone(), self.den.clone())
    }

    pub fn same_field(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.field, &o.field) || *self.field == *o.field
    }

    fn reduce_product(&self, mut prod: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.field.degree;
        let m = &self.field.modulus;
        for k in (d..prod.len()).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for j in 0..d {
                if !m[j].is_zero() {
                    prod[k - d + j] -= &c * &m[j];
                }
            }
        }
        prod.truncate(d);
        prod.resize(d, BigInt::zero());
        prod
    }

    /// Absolute norm, the resultant of the modulus with the element's polynomial.
    pub fn norm(&self) -> BigRational {
        let a = self.to_qpoly();
        if a.is_zero() {
            return BigRational::zero();
        }
        self.field.modulus_qpoly().resultant(&a)
    }

    pub fn trace(&self) -> BigRational {
        let mut t = BigRational::zero();
        let mut b = NfElem::one(&self.field);
        for i in 0..self.field.degree {
            let c = self.times(&b);
            t += c.coords()[i].clone();
            b = b.times(&NfElem::generator(&self.field));
        }
        t
    }

    /// Image under the ring map sending the generator to `image` (coefficients interpreted as rationals).
    pub fn substitute(&self, image: &NfElem) -> NfElem {
        let mut acc = NfElem::zero(&image.field);
        for c in self.coords().iter().rev() {
            acc = acc.times(image).plus(&NfElem::from_rational(&image.field, c));
        }
        acc
    }

    pub fn random(field: &Field, rng: &mut impl Rng, bound: i64) -> Self {
        let num: Vec<BigInt> = (0..field.degree).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
        let den = BigInt::from(rng.gen_range(1..=bound.max(1)));
        NfElem::normalized(field, num, den)
    }

    /// Naive height: max |num_i|, den.
    pub fn height(&self) -> BigInt {
        let mut h = self.den.clone();
        for a in &self.num {
            if a.abs() > h {
                h = a.abs();
            }
        }
        h
    }
}

impl Scalar for NfElem {
    fn zero_like(&self) -> Self {
        NfElem::zero(&self.field)
    }
    fn one_like(&self) -> Self {
        NfElem::one(&self.field)
    }
    fn from_int_like(&self, n: i64) -> Self {
        NfElem::from_int(&self.field, n)
    }
    fn is_zero_elt(&self) -> bool {
        self.num.iter().all(|a| a.is_zero())
    }
    fn plus(&self, o: &Self) -> Self {
        if self.den == o.den {
            let num = self.num.iter().zip(&o.num).map(|(a, b)| a + b).collect();
            return NfElem::normalized(&self.field, num, self.den.clone());
        }
        let num = self.num.iter().zip(&o.num).map(|(a, b)| a * &o.den + b * &self.den).collect();
        NfElem::normalized(&self.field, num, &self.den * &o.den)
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negated())
    }
    fn times(&self, o: &Self) -> Self {
        let d = self.field.degree;
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let num = self.reduce_product(prod);
        NfElem::normalized(&self.field, num, &self.den * &o.den)
    }
    fn negated(&self) -> Self {
        NfElem { field: self.field.clone(), num: self.num.iter().map(|a| -a).collect(), den: self.den.clone() }
    }
    fn inverse(&self) -> Option<Self> {
        if Scalar::is_zero_elt(self) {
            return None;
        }
        let (g, s, _) = self.to_qpoly().xgcd(&self.field.modulus_qpoly());
        debug_assert_eq!(g.deg_i(), 0);
        Some(NfElem::from_qpoly(&self.field, &s))
    }
}

/// Field automorphism determined by the image of the generator.
#[derive(Clone, Debug)]
pub struct FieldAutomorphism {
    pub field: Field,
    pub image: NfElem,
}

impl FieldAutomorphism {
    pub fn from_image(field: &Field, image: NfElem) -> Result<Self> {
        if !image.same_field(&NfElem::one(field)) {
            return Err(Error::NotAutomorphism("image lies in a different field".into()));
        }
        let m = field.modulus_qpoly();
        let val = NfElem::from_rational(field, &BigRational::zero());
        let mut acc = val;
        for c in m.c.iter().rev() {
            acc = acc.times(&image).plus(&NfElem::from_rational(field, c));
        }
        if !Scalar::is_zero_elt(&acc) {
            return Err(Error::NotAutomorphism(format!("modulus evaluated at image is {acc}")));
        }
        Ok(FieldAutomorphism { field: field.clone(), image })
    }

    pub fn identity(field: &Field) -> Self {
        FieldAutomorphism { field: field.clone(), image: NfElem::generator(field) }
    }

    pub fn apply(&self, a: &NfElem) -> NfElem {
        a.substitute(&self.image)
    }

    pub fn compose(&self, inner: &Self) -> Self {
        FieldAutomorphism { field: self.field.clone(), image: self.apply(&inner.image) }
    }

    /// Randomized check that the map respects sums and products.
    pub fn spot_check(&self, rng: &mut impl Rng, trials: usize) -> bool {
        (0..trials).all(|_| {
            let a = NfElem::random(&self.field, rng, 20);
            let b = NfElem::random(&self.field, rng, 20);
            self.apply(&a.times(&b)) == self.apply(&a).times(&self.apply(&b))
                && self.apply(&a.plus(&b)) == self.apply(&a).plus(&self.apply(&b))
        })
    }
}
