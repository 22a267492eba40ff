use crate::arith::nfpoly::roots_nf;
use crate::arith::numfield::{Field, FieldAutomorphism, NfElem};
use crate::arith::poly::Poly;
use crate::arith::scalar::Scalar;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;

/// Long Weierstrass model y² + a1xy + a3y = x³ + a2x² + a4x + a6 over a number field.
#[derive(Clone, Debug, PartialEq)]
pub struct EllipticCurve {
    pub field: Field,
    pub a1: NfElem,
    pub a2: NfElem,
    pub a3: NfElem,
    pub a4: NfElem,
    pub a6: NfElem,
}

/// Change of variables x = u²x' + r, y = u³y' + su²x' + t.
#[derive(Clone, Debug, PartialEq)]
pub struct Isomorphism {
    pub u: NfElem,
    pub r: NfElem,
    pub s: NfElem,
    pub t: NfElem,
}

fn int(f: &Field, n: i64) -> NfElem {
    NfElem::from_int(f, n)
}

impl EllipticCurve {
    pub fn new(field: &Field, a: [NfElem; 5]) -> Result<Self> {
        let [a1, a2, a3, a4, a6] = a;
        let e = EllipticCurve { field: field.clone(), a1, a2, a3, a4, a6 };
        if e.discriminant().is_zero_elt() {
            return Err(Error::Singular);
        }
        Ok(e)
    }
    /// Short form y² = x³ + a2x² + a4x + a6.
    pub fn from_a246(field: &Field, a2: NfElem, a4: NfElem, a6: NfElem) -> Result<Self> {
        EllipticCurve::new(field, [NfElem::zero(field), a2, NfElem::zero(field), a4, a6])
    }
    pub fn from_rationals(field: &Field, a: [(i64, i64); 5]) -> Result<Self> {
        let c = a.map(|(n, d)| NfElem::from_rational(field, &BigRational::new(BigInt::from(n), BigInt::from(d))));
        EllipticCurve::new(field, c)
    }
    pub fn coeffs(&self) -> [NfElem; 5] {
        [self.a1.clone(), self.a2.clone(), self.a3.clone(), self.a4.clone(), self.a6.clone()]
    }
    pub fn b2(&self) -> NfElem {
        self.a1.times(&self.a1).plus(&self.a2.times(&int(&self.field, 4)))
    }
    pub fn b4(&self) -> NfElem {
        self.a1.times(&self.a3).plus(&self.a4.times(&int(&self.field, 2)))
    }
    pub fn b6(&self) -> NfElem {
        self.a3.times(&self.a3).plus(&self.a6.times(&int(&self.field, 4)))
    }
    pub fn b8(&self) -> NfElem {
        let a1s = self.a1.times(&self.a1);
        a1s.times(&self.a6)
            .plus(&self.a2.times(&self.a6).times(&int(&self.field, 4)))
            .minus(&self.a1.times(&self.a3).times(&self.a4))
            .plus(&self.a2.times(&self.a3).times(&self.a3))
            .minus(&self.a4.times(&self.a4))
    }
    pub fn c4(&self) -> NfElem {
        let b2 = self.b2();
        b2.times(&b2).minus(&self.b4().times(&int(&self.field, 24)))
    }
    pub fn c6(&self) -> NfElem {
        let b2 = self.b2();
        b2.pow_u(3).negated().plus(&b2.times(&self.b4()).times(&int(&self.field, 36))).minus(&self.b6().times(&int(&self.field, 216)))
    }
    pub fn discriminant(&self) -> NfElem {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        b2.times(&b2).times(&b8).negated()
            .minus(&b4.pow_u(3).times(&int(&self.field, 8)))
            .minus(&b6.times(&b6).times(&int(&self.field, 27)))
            .plus(&b2.times(&b4).times(&b6).times(&int(&self.field, 9)))
    }
    pub fn j_invariant(&self) -> Result<NfElem> {
        let d = self.discriminant();
        if d.is_zero_elt() {
            return Err(Error::Singular);
        }
        Ok(self.c4().pow_u(3).divided(&d).unwrap())
    }
    /// Curve with coefficients in the primed coordinates of the given change of variables.
    pub fn transform(&self, iso: &Isomorphism) -> Self {
        let Isomorphism { u, r, s, t } = iso;
        let f = &self.field;
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let ui = u.inverse().expect("u nonzero");
        let two = int(f, 2);
        let three = int(f, 3);
        let n1 = a1.plus(&s.times(&two));
        let n2 = a2.minus(&s.times(a1)).plus(&r.times(&three)).minus(&s.times(s));
        let n3 = a3.plus(&r.times(a1)).plus(&t.times(&two));
        let n4 = a4
            .minus(&s.times(a3))
            .plus(&two.times(r).times(a2))
            .minus(&t.plus(&r.times(s)).times(a1))
            .plus(&three.times(r).times(r))
            .minus(&two.times(s).times(t));
        let n6 = a6.plus(&r.times(a4)).plus(&r.times(r).times(a2)).plus(&r.pow_u(3)).minus(&t.times(a3)).minus(&t.times(t)).minus(&r.times(t).times(a1));
        EllipticCurve {
            field: f.clone(),
            a1: n1.times(&ui),
            a2: n2.times(&ui.pow_u(2)),
            a3: n3.times(&ui.pow_u(3)),
            a4: n4.times(&ui.pow_u(4)),
            a6: n6.times(&ui.pow_u(6)),
        }
    }
    pub fn conjugate(&self, sigma: &FieldAutomorphism) -> Self {
        let c = self.coeffs().map(|a| sigma.apply(&a));
        let [a1, a2, a3, a4, a6] = c;
        EllipticCurve { field: self.field.clone(), a1, a2, a3, a4, a6 }
    }
    /// Base change along a field embedding given by the image of the generator.
    pub fn base_change(&self, target: &Field, gen_image: &NfElem) -> Self {
        let c = self.coeffs().map(|a| a.substitute(gen_image));
        let [a1, a2, a3, a4, a6] = c;
        EllipticCurve { field: target.clone(), a1, a2, a3, a4, a6 }
    }
    /// Model with a1 = a3 = 0 (completing the square).
    pub fn short_model(&self) -> (Self, Isomorphism) {
        let f = &self.field;
        let half = NfElem::from_rational(f, &BigRational::new(1.into(), 2.into()));
        let iso = Isomorphism {
            u: NfElem::one(f),
            r: NfElem::zero(f),
            s: self.a1.times(&half).negated(),
            t: self.a3.times(&half).negated(),
        };
        (self.transform(&iso), iso)
    }
    /// Quadratic twist d·y² = x³ + a2x² + a4x + a6, returned as y² = x³ + d a2 x² + d² a4 x + d³ a6.
    pub fn quadratic_twist(&self, d: &NfElem) -> Result<Self> {
        if d.is_zero_elt() {
            return Err(Error::InvalidInput("twist by zero".into()));
        }
        let (s, _) = self.short_model();
        EllipticCurve::from_a246(&self.field, s.a2.times(d), s.a4.times(&d.pow_u(2)), s.a6.times(&d.pow_u(3)))
    }
    pub fn is_short(&self) -> bool {
        self.a1.is_zero_elt() && self.a3.is_zero_elt()
    }
    /// y² + a1xy + a3y − (x³ + a2x² + a4x + a6) at a point.
    pub fn equation_at<S: Scalar>(&self, x: &S, y: &S, emb: impl Fn(&NfElem) -> S) -> S {
        let lhs = y.times(y).plus(&emb(&self.a1).times(x).times(y)).plus(&emb(&self.a3).times(y));
        let rhs = x.times(x).times(x).plus(&emb(&self.a2).times(x).times(x)).plus(&emb(&self.a4).times(x)).plus(&emb(&self.a6));
        lhs.minus(&rhs)
    }
}

/// Exact isomorphism search between two curves over the same field.
pub fn isomorphism_test(e1: &EllipticCurve, e2: &EllipticCurve) -> Option<Isomorphism> {
    let f = &e1.field;
    if !e1.a1.same_field(&e2.a1) {
        return None;
    }
    if e1.j_invariant().ok()? != e2.j_invariant().ok()? {
        return None;
    }
    let (c4a, c6a, c4b, c6b) = (e1.c4(), e1.c6(), e2.c4(), e2.c6());
    let z = NfElem::zero(f);
    // u-candidates from u^k = ratio for the appropriate k
    let (k, ratio) = if c4a.is_zero_elt() {
        (6usize, c6a.divided(&c6b)?)
    } else if c6a.is_zero_elt() {
        (4, c4a.divided(&c4b)?)
    } else {
        (2, c6a.divided(&c6b)?.times(&c4b.divided(&c4a)?))
    };
    let mut coeffs = vec![ratio.negated()];
    coeffs.extend((1..k).map(|_| z.clone()));
    coeffs.push(NfElem::one(f));
    let us = roots_nf(&Poly::new(coeffs, z));
    let half = NfElem::from_rational(f, &BigRational::new(1.into(), 2.into()));
    let third = NfElem::from_rational(f, &BigRational::new(1.into(), 3.into()));
    for u in us {
        let s = u.times(&e2.a1).minus(&e1.a1).times(&half);
        let r = u.pow_u(2).times(&e2.a2).minus(&e1.a2).plus(&s.times(&e1.a1)).plus(&s.times(&s)).times(&third);
        let t = u.pow_u(3).times(&e2.a3).minus(&e1.a3).minus(&r.times(&e1.a1)).times(&half);
        let iso = Isomorphism { u, r, s, t };
        if e1.transform(&iso) == *e2 {
            return Some(iso);
        }
    }
    None
}

/// Built-in Hilbert class polynomials (discriminant, coefficients low to high).
pub fn hilbert_class_polynomials() -> Vec<(i64, Vec<i64>)> {
    vec![(-4, vec![-1728, 1]), (-20, vec![-681472000, -1264000, 1])]
}

/// CM discriminant whose class polynomial vanishes exactly at j, if any in the table.
pub fn cm_discriminant_check(j: &NfElem) -> Option<i64> {
    for (d, coeffs) in hilbert_class_polynomials() {
        let val = coeffs.iter().rev().fold(NfElem::zero(&j.field), |acc, &c| acc.times(j).plus(&NfElem::from_int(&j.field, c)));
        if val.is_zero_elt() {
            return Some(d);
        }
    }
    None
}
