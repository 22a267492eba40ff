//! Recovering a rational map on y² = f(x) from numerical values: sample, build the
//! linear relation matrix, take a one-dimensional kernel, recognize its entries.

use crate::arith::nfpoly::NfPoly;
use crate::arith::numfield::{Field, NfElem};
use crate::arith::poly::Poly;
use crate::arith::scalar::Scalar;
use crate::arith::recognize::{embed_at, generator_embedding, recognize_algebraic};
use crate::error::{Error, Result};
use crate::maps::{CurveFn, MorphismCertificate, RationalMap};
use crate::numeric::linalg::{cmat_kernel, CMat};
use crate::numeric::{digits_to_bits, BigComplex, BigReal};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Component {
    X,
    Y,
}

/// Which y-degrees appear in numerator and denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    /// y⁰ and y¹ on both sides.
    Full,
    /// Invariant under y ↦ −y: no y anywhere.
    Even,
    /// Anti-invariant: y¹ in the numerator, y⁰ in the denominator.
    Odd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapShape {
    pub n: usize,
    pub m: usize,
    pub parity: Parity,
}

impl MapShape {
    pub fn new(n: usize, m: usize, parity: Parity) -> Self {
        MapShape { n, m, parity }
    }
    /// x-coordinates of maps to an elliptic curve are even, y-coordinates odd.
    pub fn for_component(n: usize, m: usize, c: Component) -> Self {
        MapShape::new(n, m, if c == Component::X { Parity::Even } else { Parity::Odd })
    }
    /// R = 2N + 2M.
    pub fn r(&self) -> usize {
        2 * self.n + 2 * self.m
    }
    fn num_ys(&self) -> &'static [usize] {
        match self.parity {
            Parity::Full => &[0, 1],
            Parity::Even => &[0],
            Parity::Odd => &[1],
        }
    }
    fn den_ys(&self) -> &'static [usize] {
        match self.parity {
            Parity::Full => &[0, 1],
            _ => &[0],
        }
    }
    /// (x-degree, y-degree) of each column: numerator block, then denominator block.
    pub fn monomials(&self) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
        let block = |d: usize, ys: &[usize]| (0..=d).flat_map(|i| ys.iter().map(move |&j| (i, j))).collect::<Vec<_>>();
        (block(self.n, self.num_ys()), block(self.m, self.den_ys()))
    }
    pub fn columns(&self) -> usize {
        let (a, b) = self.monomials();
        a.len() + b.len()
    }
}

#[derive(Clone, Debug)]
pub struct SamplePoint {
    pub alpha: BigComplex,
    pub beta: BigComplex,
    pub q: BigComplex,
}

/// A map over a number field evaluated through the field's designated complex embedding.
pub struct NumericOracle {
    pub map: RationalMap,
    theta: BigComplex,
    prec: u32,
}

impl NumericOracle {
    pub fn new(map: RationalMap, prec: u32) -> Self {
        let theta = generator_embedding(&map.field, prec + 32);
        NumericOracle { map, theta, prec }
    }
    fn poly(&self, p: &NfPoly, z: &BigComplex) -> BigComplex {
        p.c.iter().rev().fold(BigComplex::zero(self.prec + 32), |acc, c| acc.mul(z).add(&embed_at(c, &self.theta)))
    }
    pub fn source_rhs(&self, alpha: &BigComplex) -> BigComplex {
        self.poly(&self.map.source, &alpha.with_prec(self.prec + 32)).with_prec(self.prec)
    }
    /// Value of one coordinate at (α, β); None near a pole.
    pub fn eval(&self, c: Component, alpha: &BigComplex, beta: &BigComplex) -> Option<BigComplex> {
        let f = if c == Component::X { &self.map.x } else { &self.map.y };
        let (a, b) = (alpha.with_prec(self.prec + 32), beta.with_prec(self.prec + 32));
        let den = self.poly(&f.c, &a);
        if den.abs().to_f64() < 1e-3 {
            return None;
        }
        let num = self.poly(&f.a, &a).add(&self.poly(&f.b, &a).mul(&b));
        Some(num.div(&den).with_prec(self.prec))
    }
}

fn halton(mut i: u64, base: u64) -> f64 {
    let (mut f, mut r) = (1.0, 0.0);
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

/// One sample at a prescribed α; fails at poles and near branch points.
pub fn sample_at(oracle: &NumericOracle, c: Component, alpha: &BigComplex) -> Result<SamplePoint> {
    let beta = oracle.source_rhs(alpha).sqrt();
    if beta.abs().to_f64() < 1e-3 {
        return Err(Error::InvalidInput("sample too close to a branch point".into()));
    }
    let q = oracle
        .eval(c, alpha, &beta)
        .ok_or_else(|| Error::InvalidInput("oracle has a pole at the sample".into()))?;
    Ok(SamplePoint { alpha: alpha.clone(), beta, q })
}

/// R + `oversample` points from a randomly shifted Halton sequence in [−2, 2]².
pub fn sample_map_values(
    oracle: &NumericOracle,
    c: Component,
    shape: &MapShape,
    oversample: usize,
    seed: u64,
) -> Result<Vec<SamplePoint>> {
    let want = (shape.r() + oversample).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift: (f64, f64) = (rng.gen(), rng.gen());
    let mut out = Vec::with_capacity(want);
    let mut i = 1u64;
    let mut rejected = 0;
    while out.len() < want {
        let u = (halton(i, 2) + shift.0).fract();
        let v = (halton(i, 3) + shift.1).fract();
        i += 1;
        let alpha = BigComplex::from_f64(4.0 * u - 2.0, 4.0 * v - 2.0, oracle.prec);
        match sample_at(oracle, c, &alpha) {
            Ok(s) => out.push(s),
            Err(_) => {
                rejected += 1;
                if rejected > 10 * want + 100 {
                    return Err(Error::NoConvergence("too many rejected samples".into()));
                }
            }
        }
    }
    Ok(out)
}

fn cpow(z: &BigComplex, k: usize) -> BigComplex {
    z.powi(k as u32)
}

/// Row k: α^i β^j for the numerator monomials, then −Q·α^i β^j for the denominator ones.
pub fn build_relation_matrix(samples: &[SamplePoint], shape: &MapShape) -> CMat {
    let (num, den) = shape.monomials();
    samples
        .iter()
        .map(|s| {
            let mono = |&(i, j): &(usize, usize)| {
                let a = cpow(&s.alpha, i);
                if j == 1 {
                    a.mul(&s.beta)
                } else {
                    a
                }
            };
            num.iter().map(mono).chain(den.iter().map(|m| mono(m).mul(&s.q).neg())).collect()
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct Kernel {
    pub dimension: usize,
    pub basis: Vec<Vec<BigComplex>>,
    pub pivots: Vec<BigReal>,
}

pub fn numeric_kernel(a: &CMat, rank_tol: &BigReal) -> Kernel {
    if a.is_empty() {
        return Kernel { dimension: 0, basis: Vec::new(), pivots: Vec::new() };
    }
    let (basis, pivots) = cmat_kernel(a, rank_tol);
    Kernel { dimension: basis.len(), basis, pivots }
}

pub fn default_rank_tol(digits: u32, prec: u32) -> BigReal {
    BigReal::from_i64(10, prec).ln().mul_i64(-(digits as i64) / 2).exp()
}

/// Kernel of the full sample matrix, cross-checked on two overlapping row subsets.
pub fn kernel_of_samples(samples: &[SamplePoint], shape: &MapShape, rank_tol: &BigReal) -> Result<Kernel> {
    let a = build_relation_matrix(samples, shape);
    let k = numeric_kernel(&a, rank_tol);
    let cols = shape.columns();
    if a.len() > cols {
        let head = numeric_kernel(&a[..cols].to_vec(), rank_tol);
        let tail = numeric_kernel(&a[a.len() - cols..].to_vec(), rank_tol);
        if head.dimension != k.dimension || tail.dimension != k.dimension {
            return Err(Error::Ambiguous(format!(
                "kernel dimension differs across row subsets ({}, {}, {})",
                k.dimension, head.dimension, tail.dimension
            )));
        }
    }
    Ok(k)
}

/// Rescales by the largest entry, recognizes every entry in `field`, and assembles
/// (Σ a_ij x^i y^j) / (Σ b_ij x^i y^j) as a function on y² = f.
pub fn recognize_component(
    v: &[BigComplex],
    shape: &MapShape,
    field: &Field,
    source: &NfPoly,
    height_bound: &BigInt,
    digits: u32,
) -> Result<CurveFn> {
    let big = v
        .iter()
        .max_by(|a, b| a.norm_sqr().cmp_val(&b.norm_sqr()))
        .ok_or_else(|| Error::InvalidInput("empty kernel vector".into()))?
        .clone();
    let zero_tol = -((digits as f64 / 2.0) * std::f64::consts::LOG2_10) as i64;
    let coeffs: Vec<NfElem> = v
        .iter()
        .map(|z| {
            let w = z.div(&big);
            if w.is_zero() || w.mag_exponent() < zero_tol {
                Ok(NfElem::zero(field))
            } else {
                recognize_algebraic(&w, field, height_bound, digits)
            }
        })
        .collect::<Result<_>>()?;
    let (num, den) = shape.monomials();
    let build = |mons: &[(usize, usize)], cs: &[NfElem]| -> CurveFn {
        let z = NfElem::zero(field);
        let mut p = [vec![z.clone(); 1 + mons.iter().map(|m| m.0).max().unwrap_or(0)], vec![z.clone(); 1 + mons.iter().map(|m| m.0).max().unwrap_or(0)]];
        for (&(i, j), c) in mons.iter().zip(cs) {
            p[j][i] = c.clone();
        }
        let [a, b] = p;
        CurveFn { a: Poly::new(a, z.clone()), b: Poly::new(b, z.clone()), c: Poly::constant(z.one_like()) }
    };
    let n = build(&num, &coeffs[..num.len()]);
    let d = build(&den, &coeffs[num.len()..]);
    if d.is_zero() {
        return Err(Error::RecognitionFailed("denominator recognized as zero".into()));
    }
    Ok(n.mul(&d.inv(source)?, source).reduced())
}

#[derive(Clone, Debug)]
pub struct AlgebraizeReport {
    pub map: RationalMap,
    pub certificate: MorphismCertificate,
    pub kernel_dimensions: [usize; 2],
    pub samples: [usize; 2],
}

#[derive(Clone, Debug)]
pub struct AlgebraizeOptions {
    pub digits: u32,
    pub seed: u64,
    pub oversample: usize,
    pub height_bound: BigInt,
    /// Perturbation added to one sampled value, for exercising the failure path.
    pub noise: Option<f64>,
}

impl Default for AlgebraizeOptions {
    fn default() -> Self {
        AlgebraizeOptions { digits: 40, seed: 1, oversample: 4, height_bound: BigInt::from(10u64.pow(6)), noise: None }
    }
}

/// Recovers one coordinate of `oracle` from samples.
pub fn algebraize_component(
    oracle: &NumericOracle,
    c: Component,
    shape: &MapShape,
    field: &Field,
    opts: &AlgebraizeOptions,
) -> Result<(CurveFn, Kernel, usize)> {
    let mut samples = sample_map_values(oracle, c, shape, opts.oversample, opts.seed)?;
    if let Some(eps) = opts.noise {
        let k = samples.len() / 2;
        samples[k].q = samples[k].q.add(&BigComplex::from_f64(eps, 0.0, oracle.prec));
    }
    let tol = default_rank_tol(opts.digits, oracle.prec);
    let kernel = kernel_of_samples(&samples, shape, &tol)?;
    if kernel.dimension != 1 {
        return Err(Error::Ambiguous(format!("kernel dimension {} at shape ({}, {})", kernel.dimension, shape.n, shape.m)));
    }
    let f = recognize_component(&kernel.basis[0], shape, field, &oracle.map.source, &opts.height_bound, opts.digits)?;
    Ok((f, kernel, samples.len()))
}

/// Full pipeline for both coordinates; the result must pass the exact morphism check.
pub fn algebraize(
    oracle: &RationalMap,
    shapes: [MapShape; 2],
    field: &Field,
    opts: &AlgebraizeOptions,
) -> Result<AlgebraizeReport> {
    if field.modulus != oracle.field.modulus {
        return Err(Error::Incompatible(format!("oracle is defined over {}, not {}", oracle.field.label, field.label)));
    }
    let prec = digits_to_bits(opts.digits) + 64;
    let num = NumericOracle::new(oracle.clone(), prec);
    let (x, kx, sx) = algebraize_component(&num, Component::X, &shapes[0], field, opts)?;
    let (y, ky, sy) = algebraize_component(&num, Component::Y, &shapes[1], field, opts)?;
    let map = RationalMap::new(&format!("{}-recovered", oracle.label), oracle.source.clone(), oracle.target.clone(), x, y);
    let certificate = map.verify_morphism()?;
    Ok(AlgebraizeReport { map, certificate, kernel_dimensions: [kx.dimension, ky.dimension], samples: [sx, sy] })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halton_in_unit_interval() {
        assert_eq!(halton(1, 2), 0.5);
        assert_eq!(halton(3, 2), 0.75);
        assert!((halton(2, 3) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn shape_columns() {
        assert_eq!(MapShape::new(2, 1, Parity::Full).columns(), 10);
        assert_eq!(MapShape::new(2, 1, Parity::Even).columns(), 5);
        assert_eq!(MapShape::new(1, 2, Parity::Odd).columns(), 5);
        assert_eq!(MapShape::new(2, 1, Parity::Full).r(), 6);
    }

    #[test]
    fn identity_matrix_has_trivial_kernel() {
        let p = 128;
        let a: CMat = (0..4).map(|i| (0..4).map(|j| BigComplex::from_i64((i == j) as i64, p)).collect()).collect();
        assert_eq!(numeric_kernel(&a, &default_rank_tol(30, p)).dimension, 0);
    }
}
