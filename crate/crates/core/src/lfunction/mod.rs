//! Degree-4 L-function of a genus-2 Jacobian: Λ(s) = N^(s/2)(2π)^(−2s)Γ(s)²L(s) = εΛ(2−s),
//! evaluated in double precision by a smoothed approximate functional equation.

pub mod coeffs;
pub mod kernel;
pub mod search;

use crate::error::{Error, Result};
use coeffs::{BadFactors, EulerData};
use kernel::KernelTable;
use num_complex::Complex64 as C;
use std::f64::consts::PI;

/// Cut-off parameter t₀ ≠ 1, so that Λ(1) = 0 is a genuine consequence of the functional equation.
pub const T0: f64 = 1.15;

#[derive(Clone, Debug)]
pub struct LFunction {
    pub conductor: u64,
    pub sign: i32,
    pub bad: BadFactors,
    /// a_0 (unused) .. a_X.
    pub a: Vec<i64>,
}

/// N^(1/2)/(4π²), so that N^(s/2)(2π)^(−2s) = A^s.
pub fn scale(conductor: u64) -> f64 {
    (conductor as f64).sqrt() / (4.0 * PI * PI)
}

/// Coefficients needed: n·t₀/A must reach the end of the kernel table.
pub fn required_x(conductor: u64) -> u64 {
    (KernelTable::x_max() * scale(conductor) * T0).ceil() as u64
}

/// Kernel tables for s and 2 − s.
#[derive(Clone, Debug)]
pub struct TablePair {
    pub s: C,
    pub direct: KernelTable,
    pub dual: KernelTable,
}

impl TablePair {
    pub fn new(s: C) -> Self {
        TablePair { s, direct: KernelTable::new(s, 0), dual: KernelTable::new(C::new(2.0, 0.0) - s, 0) }
    }
}

impl LFunction {
    pub fn new(data: &EulerData, conductor: u64, sign: i32, bad: BadFactors) -> Result<Self> {
        Self::with_xmax(data, conductor, sign, bad, required_x(conductor))
    }

    /// Keeps a_n for n ≤ x (at least the required amount).
    pub fn with_xmax(data: &EulerData, conductor: u64, sign: i32, bad: BadFactors, x: u64) -> Result<Self> {
        let x = x.max(required_x(conductor));
        if x > data.xmax {
            return Err(Error::InsufficientCoefficients(x as usize));
        }
        let a = coeffs::dirichlet_coefficients(data, &bad, x)?;
        Ok(LFunction { conductor, sign, bad, a })
    }

    /// Λ(s) = Σ a_n [t₀^(−s) G_s(n/(A t₀)) + ε t₀^(2−s) G_(2−s)(n t₀/A)].
    pub fn lambda_with(&self, t: &TablePair) -> C {
        let a_scale = scale(self.conductor);
        let s = t.s;
        let w1 = C::new(T0, 0.0).powc(-s);
        let w2 = C::new(T0, 0.0).powc(C::new(2.0, 0.0) - s) * self.sign as f64;
        let mut acc = C::new(0.0, 0.0);
        let mut comp = C::new(0.0, 0.0);
        for (n, &an) in self.a.iter().enumerate().skip(1) {
            if an == 0 {
                continue;
            }
            let x = n as f64 / a_scale;
            if x / T0 > KernelTable::x_max() {
                break;
            }
            let term = (w1 * t.direct.eval(x / T0) + w2 * t.dual.eval(x * T0)) * an as f64;
            // Kahan summation
            let y = term - comp;
            let next = acc + y;
            comp = (next - acc) - y;
            acc = next;
        }
        acc
    }

    pub fn lambda(&self, s: C) -> C {
        self.lambda_with(&TablePair::new(s))
    }

    /// |Λ(s) − εΛ(2−s)| / (|Λ(s)| + |Λ(2−s)|).
    pub fn defect_with(&self, t: &TablePair, t_dual: &TablePair) -> f64 {
        let l1 = self.lambda_with(t);
        let l2 = self.lambda_with(t_dual);
        (l1 - l2 * self.sign as f64).norm() / (l1.norm() + l2.norm())
    }

    pub fn defect(&self, s: C) -> f64 {
        self.defect_with(&TablePair::new(s), &TablePair::new(C::new(2.0, 0.0) - s))
    }

    /// Σ |a_n| |kernel terms| at s = 1: the size against which vanishing is judged.
    pub fn magnitude_at_one(&self) -> f64 {
        let t = TablePair::new(C::new(1.0, 0.0));
        let a_scale = scale(self.conductor);
        self.a
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &an)| an != 0)
            .map(|(n, &an)| {
                let x = n as f64 / a_scale;
                (an.abs() as f64) * (t.direct.eval(x / T0).norm() + T0 * T0 * t.dual.eval(x * T0).norm()) / T0
            })
            .sum()
    }

    /// k-th derivative of Λ at s = 1 by central differences with one Richardson step.
    pub fn lambda_derivative_at_one(&self, k: u32, h: f64) -> f64 {
        let d = |h: f64| -> f64 {
            // Σ_j (−1)^j C(k, j) Λ(1 + (k/2 − j)h) / h^k
            let mut acc = 0.0;
            let mut binom = 1.0;
            for j in 0..=k {
                let s = C::new(1.0 + (k as f64 / 2.0 - j as f64) * h, 0.0);
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                acc += sign * binom * self.lambda(s).re;
                binom = binom * (k - j) as f64 / (j + 1) as f64;
            }
            acc / h.powi(k as i32)
        };
        if k == 0 {
            return self.lambda(C::new(1.0, 0.0)).re;
        }
        let (d1, d2) = (d(h), d(h / 2.0));
        (4.0 * d2 - d1) / 3.0
    }
}

#[derive(Clone, Debug)]
pub struct RankResult {
    pub rank: u32,
    pub derivatives: Vec<f64>,
    pub tolerance: f64,
}

/// Smallest k ≤ 4 with |Λ^(k)(1)| above 10^(−digits/2) times the size of the sum.
pub fn analytic_rank(l: &LFunction, digits: u32) -> Result<RankResult> {
    let h = 10f64.powf(-(digits as f64) / 4.0);
    let tol = 10f64.powf(-(digits as f64) / 2.0) * l.magnitude_at_one();
    let mut derivatives = Vec::new();
    for k in 0..=4 {
        // higher differences lose digits as h^k; widen the step accordingly
        let d = l.lambda_derivative_at_one(k, h * (1u32 << k.saturating_sub(1)) as f64);
        derivatives.push(d);
        if d.abs() > tol {
            if (k % 2 == 1) != (l.sign == -1) {
                return Err(Error::InvalidInput(format!("order {k} at s = 1 contradicts sign {}", l.sign)));
            }
            return Ok(RankResult { rank: k, derivatives, tolerance: tol });
        }
    }
    Err(Error::NoConvergence("rank > 4 or precision too low".into()))
}

/// lim (s−1)^(−r) L(s) = Λ^(r)(1) / (r!·A·Γ(1)²).
pub fn leading_coefficient(l: &LFunction, r: &RankResult) -> f64 {
    let fact: f64 = (1..=r.rank).map(|j| j as f64).product();
    r.derivatives[r.rank as usize] / (fact * scale(l.conductor))
}
