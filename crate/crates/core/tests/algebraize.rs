use bsd_core::algebraize::*;
use bsd_core::arith::numfield::NfElem;
use bsd_core::arith::poly::Poly;
use bsd_core::builtin::{field_k, field_sqrt5, phi};
use bsd_core::maps::{CurveFn, RationalMap};
use bsd_core::numeric::{digits_to_bits, BigComplex, BigReal};
use bsd_core::Error;

fn oracle(digits: u32) -> NumericOracle {
    NumericOracle::new(phi(), digits_to_bits(digits) + 64)
}

fn x_shape() -> MapShape {
    MapShape::for_component(2, 1, Component::X)
}

fn y_shape() -> MapShape {
    MapShape::for_component(1, 2, Component::Y)
}

#[test]
fn samples_lie_on_the_curve() {
    let o = oracle(40);
    let s = sample_map_values(&o, Component::X, &MapShape::new(2, 1, Parity::Full), 0, 3).unwrap();
    assert_eq!(s.len(), 6);
    for p in &s {
        let r = p.beta.sqr().sub(&o.source_rhs(&p.alpha)).abs();
        assert!(r.is_zero() || r.to_f64() < 1e-35);
    }
}

#[test]
fn pole_sample_rejected() {
    let o = oracle(40);
    let zero = BigComplex::from_f64(0.0, 0.0, 200);
    assert!(sample_at(&o, Component::X, &zero).is_err());
}

#[test]
fn true_coefficients_in_kernel() {
    let o = oracle(40);
    let s = sample_map_values(&o, Component::X, &x_shape(), 4, 5).unwrap();
    let a = build_relation_matrix(&s, &x_shape());
    // (1 − g·x + √5·x²) / x
    let g = BigComplex::from_real(BigReal::from_i64(5, 300).sqrt().sqrt());
    let v = [BigComplex::one(300), g.neg(), g.sqr(), BigComplex::zero(300), BigComplex::one(300)];
    for row in &a {
        let r = row.iter().zip(&v).fold(BigComplex::zero(300), |acc, (x, y)| acc.add(&x.mul(y)));
        assert!(r.is_zero() || r.abs().to_f64() < 1e-30, "{:e}", r.abs().to_f64());
    }
}

fn dim(shape: MapShape, c: Component) -> usize {
    let o = oracle(40);
    let s = sample_map_values(&o, c, &shape, 4, 11).unwrap();
    kernel_of_samples(&s, &shape, &default_rank_tol(40, 200)).unwrap().dimension
}

#[test]
fn kernel_dimensions() {
    assert_eq!(dim(x_shape(), Component::X), 1);
    assert!(dim(MapShape::for_component(3, 2, Component::X), Component::X) > 1);
    assert_eq!(dim(MapShape::new(1, 0, Parity::Even), Component::X), 0);
    // with y-terms on both sides (n·y, d·y) is a second solution
    assert_eq!(dim(MapShape::new(2, 1, Parity::Full), Component::X), 2);
    assert_eq!(dim(y_shape(), Component::Y), 1);
    assert_eq!(dim(MapShape::new(1, 2, Parity::Full), Component::Y), 1);
}

#[test]
fn kernel_dimension_monotone_in_shape() {
    let mut last = 0;
    for (n, m) in [(1, 0), (2, 1), (3, 2), (4, 3)] {
        let d = dim(MapShape::for_component(n, m, Component::X), Component::X);
        assert!(d >= last);
        last = d;
    }
}

#[test]
fn duplicate_rows_detected() {
    let o = oracle(40);
    let s = sample_map_values(&o, Component::X, &x_shape(), 0, 2).unwrap();
    let dup: Vec<SamplePoint> = (0..7).map(|i| s[i % 3].clone()).collect();
    let a = build_relation_matrix(&dup, &x_shape());
    assert!(numeric_kernel(&a, &default_rank_tol(40, 200)).dimension > 1);
}

#[test]
fn constant_oracle() {
    let k = field_k();
    let g = NfElem::generator(&k);
    let c = CurveFn::constant(g.clone());
    let m = RationalMap::new("const", phi().source, phi().target, c.clone(), c);
    let o = NumericOracle::new(m, 200);
    let shape = MapShape::new(0, 0, Parity::Even);
    let s = sample_map_values(&o, Component::X, &shape, 4, 1).unwrap();
    let ker = kernel_of_samples(&s, &shape, &default_rank_tol(40, 200)).unwrap();
    assert_eq!(ker.dimension, 1);
    let f = recognize_component(&ker.basis[0], &shape, &k, &phi().source, &100.into(), 40).unwrap();
    assert!(f.eq_fn(&CurveFn::constant(g)));
}

#[test]
fn y_coordinate_recovered() {
    let o = oracle(40);
    let (f, _, _) = algebraize_component(&o, Component::Y, &y_shape(), &field_k(), &AlgebraizeOptions::default()).unwrap();
    assert!(f.eq_fn(&phi().y));
    assert_eq!(f.b.degree(), Some(1));
    assert_eq!(f.c, Poly::monomial(f.c.lead(), 2));
}

#[test]
fn pipeline_recovers_phi_for_any_seed() {
    let mut maps = Vec::new();
    for seed in [1, 2] {
        let opts = AlgebraizeOptions { seed, ..Default::default() };
        let r = algebraize(&phi(), [x_shape(), y_shape()], &field_k(), &opts).unwrap();
        assert!(r.map.eq_map(&phi()));
        assert_eq!(r.kernel_dimensions, [1, 1]);
        maps.push(r.map);
    }
    assert!(maps[0].eq_map(&maps[1]));
}

#[test]
fn noise_is_not_silently_accepted() {
    let opts = AlgebraizeOptions { noise: Some(1e-5), ..Default::default() };
    assert!(algebraize(&phi(), [x_shape(), y_shape()], &field_k(), &opts).is_err());
}

#[test]
fn wrong_field_rejected() {
    let r = algebraize(&phi(), [x_shape(), y_shape()], &field_sqrt5(), &AlgebraizeOptions::default());
    assert!(matches!(r, Err(Error::Incompatible(_))));
}
