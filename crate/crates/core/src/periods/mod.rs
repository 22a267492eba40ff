//! Period matrices of genus-2 curves with real branch points, theta constants,
//! and the search for principal polarizations on CM lattices.

pub mod cm;
pub mod quad;
pub mod roots;
pub mod symplectic;
pub mod theta;

use crate::arith::recognize::recognize_rational;
use crate::curves::hyperelliptic::HyperellipticCurve;
use crate::curves::igusa::{absolute_from_ic, igusa_clebsch_from_sextic};
use crate::error::{Error, Result};
use crate::numeric::linalg::{cmat_inverse, cmat_mul, CMat};
use crate::numeric::{digits_to_bits, BigComplex, BigReal};
use num_bigint::BigInt;
use num_rational::BigRational;
use symplectic::{frobenius_basis, IMat};
pub use theta::{im_positive_definite, rosenhain, theta_constant, theta_even_constants, Tau, EVEN};

/// Periods of dx/y and x·dx/y over loops γ_k around [e_k, e_{k+1}], k = 0..3.
#[derive(Clone, Debug)]
pub struct BigPeriodMatrix {
    pub roots: Vec<BigReal>,
    pub periods: CMat,
    /// Intersection numbers γ_i·γ_j.
    pub pairing: IMat,
    pub prec: u32,
}

#[derive(Clone, Debug)]
pub struct SmallPeriodMatrix {
    pub tau: Tau,
    /// Columns: the symplectic basis in terms of the γ_k.
    pub basis: IMat,
}

fn ipow(i: usize) -> BigComplex {
    // i^k on the unit circle
    match i % 4 {
        0 => BigComplex::from_i64(1, 64),
        1 => BigComplex::i(64),
        2 => BigComplex::from_i64(-1, 64),
        _ => BigComplex::i(64).neg(),
    }
}

/// Branch points of y² = f(x), required to be real.
pub fn branch_points(h: &HyperellipticCurve, prec: u32) -> Result<Vec<BigReal>> {
    let digits = (prec as f64 / std::f64::consts::LOG2_10) as u32;
    let c: Vec<BigReal> = h.f.c.iter().map(|a| BigReal::from_rational(a, prec + 64)).collect();
    roots::real_roots(&c, digits + 10)
}

fn chain_pairing(sign: i64) -> IMat {
    let mut e = vec![vec![0i64; 4]; 4];
    for k in 0..3 {
        e[k][k + 1] = sign;
        e[k + 1][k] = -sign;
    }
    e
}

/// γ_k-periods from integrals on the upper lip of each cut. Passing a branch point
/// leftwards through the upper half plane multiplies y by i.
pub fn big_periods(h: &HyperellipticCurve, digits: u32) -> Result<BigPeriodMatrix> {
    let prec = digits_to_bits(digits) + 16;
    let roots = branch_points(h, prec)?;
    let n = roots.len();
    let lc = BigReal::from_rational(&h.f.lead(), prec);
    // phase of y on (e_{n-1}, ∞): 1 if f > 0 there, else i
    let top = if lc.is_negative() { 1 } else { 0 };
    let mut periods: CMat = vec![Vec::new(), Vec::new()];
    for k in 0..4 {
        let v = quad::interval_integrals(&roots[k], &roots[k + 1], &roots, &lc, prec)?;
        let phase = ipow(top + n - 1 - k);
        let inv = phase.conj().with_prec(prec);
        for j in 0..2 {
            periods[j].push(BigComplex::from_real(v[j].mul_2exp(1)).mul(&inv));
        }
    }
    let mut out = BigPeriodMatrix { roots, periods, pairing: chain_pairing(1), prec };
    if out.small_period_matrix().is_err() {
        out.pairing = chain_pairing(-1);
        out.small_period_matrix()?;
    }
    Ok(out)
}

fn columns(m: &CMat, idx: &[usize]) -> CMat {
    m.iter().map(|row| idx.iter().map(|&j| row[j].clone()).collect()).collect()
}

/// Π·T for an integer matrix T.
pub fn apply_integer(p: &CMat, t: &IMat) -> CMat {
    let prec = p[0][0].prec();
    p.iter()
        .map(|row| {
            (0..t[0].len())
                .map(|j| {
                    row.iter().enumerate().fold(BigComplex::zero(prec), |acc, (k, x)| {
                        if t[k][j] == 0 {
                            acc
                        } else {
                            acc.add(&x.scale(&BigReal::from_i64(t[k][j], prec)))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// τ = Π_A⁻¹·Π_B for a 2×4 period matrix already in a symplectic basis.
pub fn tau_from_symplectic(p: &CMat) -> Result<Tau> {
    let a = columns(p, &[0, 1]);
    let b = columns(p, &[2, 3]);
    let ai = cmat_inverse(&a).ok_or(Error::Singular)?;
    let t = cmat_mul(&ai, &b);
    Ok([[t[0][0].clone(), t[0][1].clone()], [t[1][0].clone(), t[1][1].clone()]])
}

pub fn symmetry_defect(t: &Tau) -> BigReal {
    t[0][1].sub(&t[1][0]).abs()
}

/// Checks τ symmetric to the given bit tolerance with Im τ ≻ 0.
pub fn riemann_ok(t: &Tau, tol_bits: i64) -> bool {
    let d = symmetry_defect(t);
    (d.is_zero() || d.exponent() < -tol_bits) && im_positive_definite(t)
}

impl BigPeriodMatrix {
    pub fn small_period_matrix(&self) -> Result<SmallPeriodMatrix> {
        self.small_period_matrix_with(&frobenius_basis(&self.pairing)?)
    }
    /// Uses the given symplectic basis (columns in terms of the γ_k).
    pub fn small_period_matrix_with(&self, basis: &IMat) -> Result<SmallPeriodMatrix> {
        let tau = tau_from_symplectic(&apply_integer(&self.periods, basis))?;
        if !riemann_ok(&tau, self.prec as i64 - 40) {
            return Err(Error::InvalidInput("Riemann relations fail for this pairing".into()));
        }
        Ok(SmallPeriodMatrix { tau, basis: basis.clone() })
    }
    /// max |Π_A·Π_Bᵀ − Π_B·Π_Aᵀ| in the symplectic basis.
    pub fn riemann_residual(&self) -> Result<BigReal> {
        let p = apply_integer(&self.periods, &frobenius_basis(&self.pairing)?);
        let a = columns(&p, &[0, 1]);
        let b = columns(&p, &[2, 3]);
        let x = cmat_mul(&a, &crate::numeric::linalg::cmat_transpose(&b));
        Ok(x[0][1].sub(&x[1][0]).abs())
    }
}

/// Ω: components of Jac(ℝ) times |det| of the real periods of dx/(2Y), x·dx/(2Y) on the
/// integral model Y² = c²f(x).
pub fn real_period_volume(h: &HyperellipticCurve, digits: u32) -> Result<BigReal> {
    let pm = big_periods(h, digits)?;
    let prec = pm.prec;
    let real: Vec<usize> = (0..4).filter(|&k| pm.periods[0][k].im.is_zero() || pm.periods[0][k].im.exponent() < -(prec as i64) / 2).collect();
    if real.len() < 2 {
        return Err(Error::InvalidInput("fewer than two real cycles".into()));
    }
    let (i, j) = (real[0], real[1]);
    let p = |r: usize, k: usize| pm.periods[r][k].re.clone();
    let det = p(0, i).mul(&p(1, j)).sub(&p(0, j).mul(&p(1, i))).abs();
    let (_, c) = h.integral_model();
    let c2 = BigReal::from_bigint(&(&c * &c), prec);
    // all six branch points real: 2^(3-1) components
    let comps = 1i64 << (pm.roots.len().div_ceil(2) - 1);
    Ok(det.mul_i64(comps).div(&c2).mul_2exp(-2).with_prec(digits_to_bits(digits)))
}

#[derive(Clone, Debug)]
pub struct ThetaInvariants {
    pub numeric: [BigComplex; 3],
    pub recognized: Option<[BigRational; 3]>,
}

/// Absolute Igusa–Clebsch invariants of the Rosenhain curve y² = x(x−1)(x−λ₁)(x−λ₂)(x−λ₃).
pub fn igusa_from_theta(thetas: &[BigComplex], digits: u32, height_bound: &BigInt) -> Result<ThetaInvariants> {
    let lam = rosenhain(thetas)?;
    let prec = thetas[0].prec();
    let one = BigComplex::one(prec);
    let mut poly = vec![BigComplex::zero(prec), one.clone()];
    for r in [one.clone(), lam[0].clone(), lam[1].clone(), lam[2].clone()] {
        let mut next = vec![BigComplex::zero(prec); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] = next[k + 1].add(c);
            next[k] = next[k].sub(&c.mul(&r));
        }
        poly = next;
    }
    poly.resize(7, BigComplex::zero(prec));
    let ic = igusa_clebsch_from_sextic(&poly);
    let abs = absolute_from_ic(&ic).ok_or(Error::Singular)?;
    let rec_digits = digits.saturating_sub(12).max(10);
    let tol = -((rec_digits as f64) * std::f64::consts::LOG2_10) as i64;
    let recognized = abs
        .iter()
        .map(|z| {
            let rel = z.im.exponent() - z.re.exponent().max(0);
            if !z.im.is_zero() && rel > tol {
                return None;
            }
            recognize_rational(&z.re, height_bound, rec_digits).ok()
        })
        .collect::<Option<Vec<_>>>()
        .map(|v| [v[0].clone(), v[1].clone(), v[2].clone()]);
    Ok(ThetaInvariants { numeric: abs, recognized })
}

/// Smallest |θ| among the even constants and its index.
pub fn min_even_theta(thetas: &[BigComplex]) -> (usize, BigReal) {
    let mut best = (0, thetas[0].abs());
    for (k, t) in thetas.iter().enumerate() {
        let a = t.abs();
        if a.cmp_val(&best.1).is_lt() {
            best = (EVEN[k], a);
        }
    }
    best
}
