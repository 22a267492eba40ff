//! Named fields, curves and maps that ship with the crate.

use crate::arith::nfpoly::{nfpoly_from_q, NfPoly};
use crate::arith::numfield::{Field, FieldAutomorphism, NfElem, NumberField};
use crate::arith::poly::Poly;
use crate::arith::scalar::{rat, Scalar};
use crate::curves::elliptic::EllipticCurve;
use crate::curves::hyperelliptic::HyperellipticCurve;
use crate::maps::{CurveFn, MapTarget, RationalMap};
use num_rational::BigRational;
use std::sync::OnceLock;

pub const FOURTH_ROOT_5: f64 = 1.4953487812212205;
pub const EIGHTH_ROOT_5: f64 = 1.2228445449938519;

/// K = Q(g), g⁴ = 5, g ↦ the positive real fourth root.
pub fn field_k() -> Field {
    static F: OnceLock<Field> = OnceLock::new();
    F.get_or_init(|| NumberField::from_i64(&[-5, 0, 0, 0, 1], "Q(5^(1/4))", (FOURTH_ROOT_5, 0.0)).unwrap())
        .clone()
}

pub fn field_sqrt5() -> Field {
    static F: OnceLock<Field> = OnceLock::new();
    F.get_or_init(|| NumberField::from_i64(&[-5, 0, 1], "Q(sqrt5)", (5f64.sqrt(), 0.0)).unwrap()).clone()
}

/// Q(i, 5^(1/4)) generated by g + i.
pub fn field_l8() -> Field {
    static F: OnceLock<Field> = OnceLock::new();
    F.get_or_init(|| {
        NumberField::from_i64(&[16, 0, 64, 0, -4, 0, 4, 0, 1], "Q(i,5^(1/4))", (FOURTH_ROOT_5, 1.0)).unwrap()
    })
    .clone()
}

/// Q(i, 5^(1/8)) generated by r + i.
pub fn field_l16() -> Field {
    static F: OnceLock<Field> = OnceLock::new();
    F.get_or_init(|| {
        NumberField::from_i64(
            &[16, 0, 288, 0, -672, 0, 336, 0, 60, 0, 56, 0, 28, 0, 8, 0, 1],
            "Q(i,5^(1/8))",
            (EIGHTH_ROOT_5, 1.0),
        )
        .unwrap()
    })
    .clone()
}

fn coords(field: &Field, c: &[(i64, i64)]) -> NfElem {
    let v: Vec<BigRational> = c.iter().map(|&(n, d)| rat(n, d)).collect();
    NfElem::from_coords(field, &v)
}

/// (g, i) inside the degree-8 field.
pub fn l8_generators() -> (NfElem, NfElem) {
    let l = field_l8();
    let g = coords(&l, &[(0, 1), (53, 18), (0, 1), (-5, 18), (0, 1), (1, 9), (0, 1), (5, 144)]);
    let i = coords(&l, &[(0, 1), (-35, 18), (0, 1), (5, 18), (0, 1), (-1, 9), (0, 1), (-5, 144)]);
    (g, i)
}

/// (r, i) inside the degree-16 field, r⁸ = 5.
pub fn l16_generators() -> (NfElem, NfElem) {
    let l = field_l16();
    let r = [
        (850051, 165011),
        (-4424325, 660044),
        (819099, 660044),
        (-50385, 330022),
        (141175, 1320088),
        (139725, 1320088),
        (26325, 660044),
        (30759, 5280352),
    ];
    let odd = |v: &[(i64, i64)], sign: i64, first: Option<(i64, i64)>| {
        let mut c = vec![(0, 1); 16];
        for (k, &(n, d)) in v.iter().enumerate() {
            c[2 * k + 1] = (sign * n, d);
        }
        if let Some(f) = first {
            c[1] = f;
        }
        coords(&l, &c)
    };
    (odd(&r, 1, None), odd(&r, -1, Some((-685040, 165011))))
}

/// g ↦ −g on K.
pub fn sigma() -> FieldAutomorphism {
    let k = field_k();
    FieldAutomorphism::from_image(&k, NfElem::generator(&k).negated()).unwrap()
}

/// y² = x³ + g x² − (5 + 3g²) x + g(5 + g²) over K.
pub fn curve_e() -> EllipticCurve {
    let k = field_k();
    let e = |c: &[i64]| NfElem::from_i64_coords(&k, c, 1);
    EllipticCurve::from_a246(&k, e(&[0, 1, 0, 0]), e(&[-5, 0, -3, 0]), e(&[0, 5, 0, 1])).unwrap()
}

pub fn curve_e_sigma() -> EllipticCurve {
    curve_e().conjugate(&sigma())
}

/// y² = x³ − x² + (√5 − 3) x + (√5 − 1) over Q(√5), the target of the degree-16-field map.
pub fn curve_e_orig() -> EllipticCurve {
    let k = field_sqrt5();
    let e = |c: &[i64]| NfElem::from_i64_coords(&k, c, 1);
    EllipticCurve::from_a246(&k, e(&[-1, 0]), e(&[-3, 1]), e(&[-1, 1])).unwrap()
}

/// y² = x⁵ − x³ + x/5.
pub fn curve_h() -> HyperellipticCurve {
    HyperellipticCurve::from_rationals(&[(0, 1), (1, 5), (0, 1), (-1, 1), (0, 1), (1, 1)], "H").unwrap()
}

/// y² = x⁵ − 5x³ + 5x.
pub fn curve_hprime() -> HyperellipticCurve {
    HyperellipticCurve::from_rationals(&[(0, 1), (5, 1), (0, 1), (-5, 1), (0, 1), (1, 1)], "H'").unwrap()
}

/// y² = x⁵ + x³ + x/5, the source of the degree-16-field map.
pub fn curve_h_orig() -> HyperellipticCurve {
    HyperellipticCurve::from_rationals(&[(0, 1), (1, 5), (0, 1), (1, 1), (0, 1), (1, 1)], "H0").unwrap()
}

pub fn h_over(c: &HyperellipticCurve, field: &Field) -> NfPoly {
    nfpoly_from_q(field, &c.f)
}

fn poly(c: Vec<NfElem>) -> NfPoly {
    let z = c[0].zero_like();
    Poly::new(c, z)
}

/// φ: H_K → E, x ↦ (√5x² − gx + 1)/x, y ↦ (−g³xy + √5y)/x².
pub fn phi() -> RationalMap {
    let k = field_k();
    let g = NfElem::generator(&k);
    let (z, one) = (NfElem::zero(&k), NfElem::one(&k));
    let g2 = g.pow_u(2);
    let g3 = g.pow_u(3);
    let x = CurveFn::new(
        poly(vec![one.clone(), g.negated(), g2.clone()]),
        poly(vec![z.clone()]),
        poly(vec![z.clone(), one.clone()]),
    )
    .unwrap();
    let y = CurveFn::new(poly(vec![z.clone()]), poly(vec![g2, g3.negated()]), poly(vec![z.clone(), z, one])).unwrap();
    RationalMap::new("phi", h_over(&curve_h(), &k), MapTarget::Elliptic(curve_e()), x, y)
}

/// ι: x ↦ 1/(√5x), y ↦ −y/(g³x³), an involution of H_K.
pub fn iota() -> RationalMap {
    let k = field_k();
    let g = NfElem::generator(&k);
    let (z, one) = (NfElem::zero(&k), NfElem::one(&k));
    let x = CurveFn::new(poly(vec![one.clone()]), poly(vec![z.clone()]), poly(vec![z.clone(), g.pow_u(2)])).unwrap();
    let y = CurveFn::new(
        poly(vec![z.clone()]),
        poly(vec![one.negated()]),
        poly(vec![z.clone(), z.clone(), z, g.pow_u(3)]),
    )
    .unwrap();
    let h = h_over(&curve_h(), &k);
    RationalMap::new("iota", h.clone(), MapTarget::Hyperelliptic(h), x, y)
}

/// The degree-16-field map y² = x⁵ + x³ + x/5 → E_orig, with ε = 1 − i, δ = 1 + i.
pub fn map16() -> RationalMap {
    let l = field_l16();
    let (r, i) = l16_generators();
    let q = |n: i64, d: i64| NfElem::from_rational(&l, &rat(n, d));
    let one = NfElem::one(&l);
    let z = NfElem::zero(&l);
    let eps = one.minus(&i);
    let dl = one.plus(&i);
    let rp = |k: u64| r.pow_u(k);
    let x_num = poly(vec![
        q(1, 10).times(&i).times(&rp(2)),
        q(1, 5).times(&rp(4)),
        q(-1, 2).times(&i).times(&q(4, 5).times(&rp(6)).minus(&rp(2))),
        one.negated(),
        q(1, 2).times(&i).times(&rp(2)),
    ]);
    let x_den = poly(vec![z.clone(), q(-1, 5).times(&rp(4)), q(2, 5).times(&i).times(&rp(6)), one.clone()]);
    let y_num = poly(vec![
        q(1, 20).times(&eps).times(&rp(3)),
        q(-1, 5).times(&dl).times(&rp(5)),
        q(-1, 4).times(&eps).times(&q(4, 5).times(&rp(7)).plus(&rp(3))),
        dl.times(&r),
        q(1, 4).times(&eps).times(&rp(3)),
    ]);
    let y_den = poly(vec![
        z.clone(),
        z.clone(),
        q(-1, 5).times(&i).times(&rp(2)),
        q(-3, 5).times(&rp(4)),
        q(3, 5).times(&i).times(&rp(6)),
        one,
    ]);
    let x = CurveFn::new(x_num, poly(vec![z.clone()]), x_den).unwrap();
    let y = CurveFn::new(poly(vec![z]), y_num, y_den).unwrap();
    let target = curve_e_orig().base_change(&l, &rp(4));
    RationalMap::new("map16", h_over(&curve_h_orig(), &l), MapTarget::Elliptic(target), x, y)
}
