//! Rational maps out of y² = f(x), stored as (a(x) + b(x)·y) / c(x).

use crate::arith::finite::{FiniteField, FqElem};
use crate::arith::nfpoly::NfPoly;
use crate::arith::numfield::{Field, FieldAutomorphism, NfElem};
use crate::arith::poly::Poly;
use crate::arith::scalar::Scalar;
use crate::curves::counting::ResidueField;
use crate::curves::elliptic::EllipticCurve;
use crate::error::{Error, Result};
use rand::Rng;

/// Element (a + b·y)/c of the function field K(x)[y]/(y² − f).
#[derive(Clone, Debug)]
pub struct CurveFn {
    pub a: NfPoly,
    pub b: NfPoly,
    pub c: NfPoly,
}

fn pz(field: &Field) -> NfPoly {
    Poly::zero(&NfElem::zero(field))
}
fn pc(e: NfElem) -> NfPoly {
    Poly::constant(e)
}

impl CurveFn {
    pub fn new(a: NfPoly, b: NfPoly, c: NfPoly) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(CurveFn { a, b, c })
    }
    pub fn constant(e: NfElem) -> Self {
        let f = e.field.clone();
        CurveFn { a: pc(e), b: pz(&f), c: pc(NfElem::one(&f)) }
    }
    pub fn x(field: &Field) -> Self {
        CurveFn { a: Poly::x(&NfElem::zero(field)), b: pz(field), c: pc(NfElem::one(field)) }
    }
    pub fn y(field: &Field) -> Self {
        CurveFn { a: pz(field), b: pc(NfElem::one(field)), c: pc(NfElem::one(field)) }
    }
    pub fn field(&self) -> Field {
        self.c.zero.field.clone()
    }
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    pub fn add(&self, o: &Self) -> Self {
        CurveFn {
            a: self.a.mul(&o.c).add(&o.a.mul(&self.c)),
            b: self.b.mul(&o.c).add(&o.b.mul(&self.c)),
            c: self.c.mul(&o.c),
        }
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn neg(&self) -> Self {
        CurveFn { a: self.a.neg(), b: self.b.neg(), c: self.c.clone() }
    }
    pub fn mul(&self, o: &Self, f: &NfPoly) -> Self {
        CurveFn {
            a: self.a.mul(&o.a).add(&self.b.mul(&o.b).mul(f)),
            b: self.a.mul(&o.b).add(&self.b.mul(&o.a)),
            c: self.c.mul(&o.c),
        }
    }
    /// c(a − b·y)/(a² − b²f).
    pub fn inv(&self, f: &NfPoly) -> Result<Self> {
        let n = self.a.mul(&self.a).sub(&self.b.mul(&self.b).mul(f));
        if n.is_zero() {
            return Err(Error::InvalidInput("inverse of zero function".into()));
        }
        Ok(CurveFn { a: self.c.mul(&self.a), b: self.c.mul(&self.b).neg(), c: n })
    }
    pub fn eq_fn(&self, o: &Self) -> bool {
        self.a.mul(&o.c) == o.a.mul(&self.c) && self.b.mul(&o.c) == o.b.mul(&self.c)
    }
    /// Cancels gcd(a, b, c) and makes c monic.
    pub fn reduced(&self) -> Self {
        let g = if self.b.is_zero() { self.a.gcd(&self.c) } else { self.a.gcd(&self.b).gcd(&self.c) };
        let g = if self.is_zero() { self.c.clone() } else { g };
        let (a, b, c) = (
            self.a.exact_div(&g).unwrap(),
            self.b.exact_div(&g).unwrap(),
            self.c.exact_div(&g).unwrap(),
        );
        let l = c.lead().inverse().unwrap();
        CurveFn { a: a.scale(&l), b: b.scale(&l), c: c.scale(&l) }
    }
    /// Evaluates p(self) for a polynomial p over the same field.
    pub fn apply_poly(&self, p: &NfPoly, f: &NfPoly) -> Self {
        let field = self.field();
        let mut acc = CurveFn::constant(NfElem::zero(&field));
        for k in (0..p.c.len()).rev() {
            acc = acc.mul(self, f).add(&CurveFn::constant(p.c[k].clone()));
        }
        acc
    }
    pub fn conjugate(&self, s: &FieldAutomorphism) -> Self {
        let m = |p: &NfPoly| p.map(&p.zero, |e| s.apply(e));
        CurveFn { a: m(&self.a), b: m(&self.b), c: m(&self.c) }
    }
    pub fn eval_mod(&self, rf: &ResidueField, x: &FqElem, y: &FqElem) -> Option<FqElem> {
        let fq = &rf.fq;
        let ev = |p: &NfPoly| -> Option<FqElem> {
            let mut acc = fq.zero();
            for k in (0..p.c.len()).rev() {
                acc = fq.add(&fq.mul(&acc, x), &rf.reduce(&p.c[k])?);
            }
            Some(acc)
        };
        let num = fq.add(&ev(&self.a)?, &fq.mul(&ev(&self.b)?, y));
        Some(fq.mul(&num, &fq.inv(&ev(&self.c)?)?))
    }
}

#[derive(Clone, Debug)]
pub enum MapTarget {
    Elliptic(EllipticCurve),
    /// y² = g(x) over the map's field.
    Hyperelliptic(NfPoly),
}

impl MapTarget {
    fn conjugate(&self, s: &FieldAutomorphism) -> Self {
        match self {
            MapTarget::Elliptic(e) => MapTarget::Elliptic(e.conjugate(s)),
            MapTarget::Hyperelliptic(g) => MapTarget::Hyperelliptic(g.map(&g.zero, |e| s.apply(e))),
        }
    }
    fn same_as(&self, o: &MapTarget) -> bool {
        match (self, o) {
            (MapTarget::Elliptic(a), MapTarget::Elliptic(b)) => a.coeffs() == b.coeffs(),
            (MapTarget::Hyperelliptic(a), MapTarget::Hyperelliptic(b)) => a == b,
            _ => false,
        }
    }
}

/// (x, y) ↦ (X, Y) from y² = f(x) to a target curve, all over one number field.
#[derive(Clone, Debug)]
pub struct RationalMap {
    pub label: String,
    pub field: Field,
    pub source: NfPoly,
    pub target: MapTarget,
    pub x: CurveFn,
    pub y: CurveFn,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MorphismCertificate {
    pub label: String,
    pub field_degree: usize,
    pub cleared_degree: usize,
}

impl RationalMap {
    pub fn new(label: &str, source: NfPoly, target: MapTarget, x: CurveFn, y: CurveFn) -> Self {
        let field = source.zero.field.clone();
        RationalMap { label: label.into(), field, source, target, x, y }
    }
    pub fn identity(source: &NfPoly) -> Self {
        let field = source.zero.field.clone();
        RationalMap::new(
            "id",
            source.clone(),
            MapTarget::Hyperelliptic(source.clone()),
            CurveFn::x(&field),
            CurveFn::y(&field),
        )
    }
    /// Target equation evaluated at (X, Y), as a function on the source.
    pub fn residual(&self) -> CurveFn {
        let f = &self.source;
        let (x, y) = (&self.x, &self.y);
        match &self.target {
            MapTarget::Hyperelliptic(g) => y.mul(y, f).sub(&x.apply_poly(g, f)),
            MapTarget::Elliptic(e) => {
                let [a1, a2, a3, a4, a6] = e.coeffs();
                let z = NfElem::zero(&self.field);
                let cubic = Poly::new(vec![a6, a4, a2, z.one_like()], z);
                let lhs = y.mul(y, f).add(&CurveFn::constant(a1).mul(x, f).add(&CurveFn::constant(a3)).mul(y, f));
                lhs.sub(&x.apply_poly(&cubic, f))
            }
        }
    }
    pub fn verify_morphism(&self) -> Result<MorphismCertificate> {
        let r = self.residual();
        if !r.is_zero() {
            let show = |p: &NfPoly| p.c.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ");
            return Err(Error::NotMorphism(format!("a = [{}], b = [{}]", show(&r.a), show(&r.b))));
        }
        Ok(MorphismCertificate {
            label: self.label.clone(),
            field_degree: self.field.degree,
            cleared_degree: r.c.degree().unwrap_or(0),
        })
    }
    /// outer ∘ self.
    pub fn then(&self, outer: &RationalMap) -> Result<RationalMap> {
        compose(outer, self)
    }
    pub fn galois_conjugate(&self, s: &FieldAutomorphism) -> RationalMap {
        RationalMap {
            label: format!("{}^s", self.label),
            field: self.field.clone(),
            source: self.source.map(&self.source.zero, |e| s.apply(e)),
            target: self.target.conjugate(s),
            x: self.x.conjugate(s),
            y: self.y.conjugate(s),
        }
    }
    pub fn eq_map(&self, o: &RationalMap) -> bool {
        self.source == o.source && self.target.same_as(&o.target) && self.x.eq_fn(&o.x) && self.y.eq_fn(&o.y)
    }
    /// Number of distinct roots in x of the fiber of X over t (generic t).
    fn fiber_x_count(&self, t: &NfElem) -> usize {
        let x = self.x.reduced();
        let tc = x.c.scale(t);
        let n = if x.b.is_zero() {
            x.a.sub(&tc)
        } else {
            let u = tc.sub(&x.a);
            u.mul(&u).sub(&x.b.mul(&x.b).mul(&self.source))
        };
        if n.is_zero() {
            return 0;
        }
        let sq = n.gcd(&n.derivative());
        let mut distinct = n.degree().unwrap() - sq.degree().unwrap();
        if x.b.is_zero() {
            // each x-root carries the two points (x, ±y)
            distinct *= 2;
        }
        distinct
    }
    /// Degree of the induced extension of function fields, via two generic fibers of X.
    pub fn degree(&self, rng: &mut impl Rng) -> Result<usize> {
        let x = self.x.reduced();
        if x.b.is_zero() && x.a.deg_i() <= 0 && x.c.deg_i() <= 0 {
            return Err(Error::ConstantMap);
        }
        let pick = |rng: &mut _| NfElem::from_int(&self.field, rng_int(rng));
        let d1 = self.fiber_x_count(&pick(rng));
        let d2 = self.fiber_x_count(&pick(rng));
        if d1 != d2 {
            return Err(Error::Ambiguous(format!("fiber sizes {d1} and {d2} disagree")));
        }
        if d1 == 0 {
            return Err(Error::ConstantMap);
        }
        // X has degree 2 on the target
        Ok(d1 / 2)
    }
    /// Image of an affine point over a residue field, when defined.
    pub fn eval_mod(&self, rf: &ResidueField, x: &FqElem, y: &FqElem) -> Option<(FqElem, FqElem)> {
        Some((self.x.eval_mod(rf, x, y)?, self.y.eval_mod(rf, x, y)?))
    }
    pub fn source_point_mod(&self, rf: &ResidueField, rng: &mut impl Rng) -> Option<(FqElem, FqElem)> {
        let fq: &FiniteField = &rf.fq;
        for _ in 0..200 {
            let x = fq.random(rng);
            let v = eval_poly_mod(rf, &self.source, &x)?;
            if let Some(y) = fq.sqrt(&v) {
                return Some((x, y));
            }
        }
        None
    }
    pub fn target_equation_mod(&self, rf: &ResidueField, x: &FqElem, y: &FqElem) -> Option<FqElem> {
        let fq = &rf.fq;
        match &self.target {
            MapTarget::Hyperelliptic(g) => Some(fq.sub(&fq.mul(y, y), &eval_poly_mod(rf, g, x)?)),
            MapTarget::Elliptic(e) => {
                let mut a = [fq.zero(); 5];
                for (i, c) in e.coeffs().iter().enumerate() {
                    a[i] = rf.reduce(c)?;
                }
                let lhs = fq.add(&fq.mul(y, y), &fq.mul(y, &fq.add(&fq.mul(&a[0], x), &a[2])));
                let rhs = eval_fq(fq, &[a[4], a[3], a[1], fq.one()], x);
                Some(fq.sub(&lhs, &rhs))
            }
        }
    }
}

fn rng_int(rng: &mut impl Rng) -> i64 {
    rng.gen_range(-1000..=1000)
}

fn eval_fq(fq: &FiniteField, c: &[FqElem], x: &FqElem) -> FqElem {
    c.iter().rev().fold(fq.zero(), |acc, a| fq.add(&fq.mul(&acc, x), a))
}

fn eval_poly_mod(rf: &ResidueField, p: &NfPoly, x: &FqElem) -> Option<FqElem> {
    let c: Option<Vec<FqElem>> = p.c.iter().map(|e| rf.reduce(e)).collect();
    Some(eval_fq(&rf.fq, &c?, x))
}

/// outer ∘ inner, reduced when the field is small enough for cheap gcds.
pub fn compose(outer: &RationalMap, inner: &RationalMap) -> Result<RationalMap> {
    match &inner.target {
        MapTarget::Hyperelliptic(g) if *g == outer.source => {}
        _ => return Err(Error::Incompatible(format!("{} does not land on the source of {}", inner.label, outer.label))),
    }
    let f = &inner.source;
    let sub = |h: &CurveFn| -> Result<CurveFn> {
        let a = inner.x.apply_poly(&h.a, f);
        let b = inner.x.apply_poly(&h.b, f).mul(&inner.y, f);
        let c = inner.x.apply_poly(&h.c, f);
        Ok(a.add(&b).mul(&c.inv(f)?, f))
    };
    let (mut x, mut y) = (sub(&outer.x)?, sub(&outer.y)?);
    if inner.field.degree <= 8 {
        x = x.reduced();
        y = y.reduced();
    }
    Ok(RationalMap {
        label: format!("{}*{}", outer.label, inner.label),
        field: inner.field.clone(),
        source: inner.source.clone(),
        target: outer.target.clone(),
        x,
        y,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{curve_e, curve_e_sigma, iota, map16, phi, sigma};
    use crate::curves::counting::primes_above;
    use crate::curves::elliptic::isomorphism_test;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn phi_is_a_morphism_of_degree_two() {
        let m = phi();
        let cert = m.verify_morphism().unwrap();
        assert_eq!(cert.field_degree, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(m.degree(&mut rng).unwrap(), 2);
        assert_eq!(iota().degree(&mut rng).unwrap(), 1);
        iota().verify_morphism().unwrap();
    }

    #[test]
    fn perturbed_phi_fails() {
        let mut m = phi();
        m.x.a.c[0] = NfElem::from_int(&m.field, 2);
        assert!(matches!(m.verify_morphism(), Err(Error::NotMorphism(_))));
    }

    #[test]
    fn iota_is_an_involution_and_phi_factors_through_it() {
        let i = iota();
        let ii = compose(&i, &i).unwrap();
        assert!(ii.eq_map(&RationalMap::identity(&i.source)));
        let pi = compose(&phi(), &i).unwrap();
        assert!(pi.eq_map(&phi()));
        let idphi = compose(&phi(), &RationalMap::identity(&i.source)).unwrap();
        assert!(idphi.eq_map(&phi()));
        assert!(compose(&i, &phi()).is_err());
    }

    #[test]
    fn conjugate_map_lands_on_conjugate_curve() {
        let s = sigma();
        let ps = phi().galois_conjugate(&s);
        ps.verify_morphism().unwrap();
        match &ps.target {
            MapTarget::Elliptic(e) => assert_eq!(e.coeffs(), curve_e_sigma().coeffs()),
            _ => unreachable!(),
        }
        assert!(isomorphism_test(&curve_e(), &curve_e_sigma()).is_none());
        assert!(ps.galois_conjugate(&s).eq_map(&phi()));
        let id = FieldAutomorphism::identity(&phi().field);
        assert!(phi().galois_conjugate(&id).eq_map(&phi()));
    }

    #[test]
    fn phi_on_points_over_residue_fields() {
        let m = phi();
        let i = iota();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [11u64, 101] {
            for rf in primes_above(&m.field, p).unwrap() {
                let mut checked = 0;
                while checked < 50 {
                    let (x, y) = m.source_point_mod(&rf, &mut rng).unwrap();
                    let Some((u, v)) = m.eval_mod(&rf, &x, &y) else { continue };
                    assert!(rf.fq.is_zero(&m.target_equation_mod(&rf, &u, &v).unwrap()));
                    let (x2, y2) = i.eval_mod(&rf, &x, &y).unwrap();
                    assert_eq!(m.eval_mod(&rf, &x2, &y2), Some((u, v)));
                    checked += 1;
                }
            }
        }
    }

    #[test]
    fn degree_sixteen_map_is_a_morphism() {
        let m = map16();
        m.verify_morphism().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        // fiber count of X at two random values
        assert_eq!(m.degree(&mut rng).unwrap(), 4);
    }
}
