//! G_s(x) = (1/2πi) ∫_(c) Γ(z)² x^(−z) dz / (z − s) and its tabulation in log x.

use num_complex::Complex64 as C;
use std::f64::consts::PI;

/// log Γ(z) for Re z > 0 by upward shift and Stirling's series.
pub fn ln_gamma(z: C) -> C {
    let mut z = z;
    let mut acc = C::new(0.0, 0.0);
    while z.re < 15.0 {
        acc -= z.ln();
        z += 1.0;
    }
    let b = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360360.0,
        1.0 / 156.0,
        -3617.0 / 122400.0,
    ];
    let z2 = z * z;
    let mut zp = z;
    let mut s = C::new(0.0, 0.0);
    for bk in b {
        s += bk / zp;
        zp *= z2;
    }
    acc + (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + s
}

/// k!·(1/2πi) ∫ Γ(z)² x^(−z) (z − s)^(−k−1) dz by the trapezoid rule on Re z = c.
pub fn kernel(s: C, x: f64, k: u32) -> C {
    let c = (s.re + 1.0).max(x.sqrt());
    let h = 0.08;
    let lx = x.ln();
    let peak = 2.0 * ln_gamma(C::new(c, 0.0)).re - c * lx;
    let mut fact = 1.0;
    for j in 1..=k {
        fact *= j as f64;
    }
    let term = |t: f64| {
        let z = C::new(c, t);
        (2.0 * ln_gamma(z) - z * lx - peak).exp() / (z - s).powu(k + 1)
    };
    let mut sum = term(0.0);
    let mut j = 1;
    loop {
        let t = j as f64 * h;
        let a = term(t);
        let b = term(-t);
        sum += a + b;
        if a.norm() + b.norm() < 1e-19 * sum.norm().max(1e-300) && j > 20 {
            break;
        }
        j += 1;
        if j > 200_000 {
            break;
        }
    }
    sum * (h / (2.0 * PI)) * peak.exp() * fact
}

/// G_s^(k) on u = ln x ∈ [lo, hi], stored as G·exp(2√x), read back by 8-point Lagrange.
#[derive(Clone, Debug)]
pub struct KernelTable {
    pub s: C,
    pub k: u32,
    lo: f64,
    du: f64,
    vals: Vec<C>,
}

pub const TABLE_LO: f64 = -9.0;
/// exp(−2√x) < 1e−21 beyond e^6.35.
pub const TABLE_HI: f64 = 6.35;

impl KernelTable {
    pub fn new(s: C, k: u32) -> Self {
        let du = 0.01;
        let n = ((TABLE_HI - TABLE_LO) / du).ceil() as usize + 8;
        let lo = TABLE_LO - 4.0 * du;
        let vals = (0..n)
            .map(|i| {
                let x = (lo + i as f64 * du).exp();
                kernel(s, x, k) * (2.0 * x.sqrt()).exp()
            })
            .collect();
        KernelTable { s, k, lo, du, vals }
    }
    pub fn x_max() -> f64 {
        TABLE_HI.exp()
    }
    pub fn eval(&self, x: f64) -> C {
        if x > Self::x_max() {
            return C::new(0.0, 0.0);
        }
        let u = (x.ln() - self.lo) / self.du;
        let i0 = (u.floor() as isize - 3).clamp(0, self.vals.len() as isize - 8) as usize;
        let mut acc = C::new(0.0, 0.0);
        for j in 0..8 {
            let mut w = 1.0;
            for m in 0..8 {
                if m != j {
                    w *= (u - (i0 + m) as f64) / (j as f64 - m as f64);
                }
            }
            acc += self.vals[i0 + j] * w;
        }
        acc * (-2.0 * x.sqrt()).exp()
    }
}
