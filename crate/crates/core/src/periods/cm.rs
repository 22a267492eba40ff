use super::symplectic::{frobenius_basis, imat_det, imat_mul, imat_transpose, IMat};
use super::{apply_integer, min_even_theta, riemann_ok, tau_from_symplectic, theta_even_constants, Tau};
use crate::error::{Error, Result};
use crate::numeric::{BigComplex, BigReal};

pub fn admissible_m(m: u64) -> bool {
    !matches!(m, 1 | 3 | 7 | 15)
}

fn squarefree(m: u64) -> bool {
    m > 0 && (2..).take_while(|d| d * d <= m).all(|d| m % (d * d) != 0)
}

/// Z² + α_m·Z² ⊂ ℂ² with α_m = √−m, or (1 + √−m)/2 when m ≡ 3 mod 4.
#[derive(Clone, Debug)]
pub struct CmLattice {
    pub m: u64,
    pub alpha: BigComplex,
    /// Matrix of multiplication by √−m on the basis (1,0), (0,1), (α,0), (0,α).
    pub sqrt_neg_m: IMat,
}

impl CmLattice {
    pub fn new(m: u64, prec: u32) -> Result<Self> {
        if !squarefree(m) {
            return Err(Error::InvalidInput(format!("{m} is not squarefree")));
        }
        let s = BigReal::from_i64(m as i64, prec).sqrt();
        let mi = m as i64;
        let (alpha, a) = if m % 4 == 3 {
            let c = (1 + mi) / 4;
            // α·e1 = e3, α·e3 = e3 − c·e1
            let a: IMat = vec![vec![0, 0, -c, 0], vec![0, 0, 0, -c], vec![1, 0, 1, 0], vec![0, 1, 0, 1]];
            (BigComplex::new(BigReal::one(prec).mul_2exp(-1), s.mul_2exp(-1)), a)
        } else {
            let a: IMat = vec![vec![0, 0, -mi, 0], vec![0, 0, 0, -mi], vec![1, 0, 0, 0], vec![0, 1, 0, 0]];
            (BigComplex::new(BigReal::zero(prec), s), a)
        };
        let sqrt_neg_m = if m % 4 == 3 {
            let id: IMat = (0..4).map(|i| (0..4).map(|j| (i == j) as i64).collect()).collect();
            (0..4).map(|i| (0..4).map(|j| 2 * a[i][j] - id[i][j]).collect()).collect()
        } else {
            a
        };
        Ok(CmLattice { m, alpha, sqrt_neg_m })
    }
    /// Columns are the four lattice generators in ℂ².
    pub fn period_matrix(&self) -> Vec<Vec<BigComplex>> {
        let p = self.alpha.prec();
        let (o, z) = (BigComplex::one(p), BigComplex::zero(p));
        vec![
            vec![o.clone(), z.clone(), self.alpha.clone(), z.clone()],
            vec![z.clone(), o, z, self.alpha.clone()],
        ]
    }
    /// E(ix, iy) = E(x, y), i.e. Bᵀ·E·B = m·E for B the matrix of √−m.
    pub fn compatible(&self, e: &IMat) -> bool {
        let b = &self.sqrt_neg_m;
        let lhs = imat_mul(&imat_mul(&imat_transpose(b), e), b);
        (0..4).all(|i| (0..4).all(|j| lhs[i][j] == self.m as i64 * e[i][j]))
    }
}

#[derive(Clone, Debug)]
pub struct Polarization {
    pub form: IMat,
    pub tau: Tau,
    /// Some even theta constant vanishes: the torus is a product of elliptic curves.
    pub product: bool,
    pub min_theta_index: usize,
    pub min_theta: BigReal,
}

/// Principal polarizations E with entries in [−bound, bound] on the CM lattice, each
/// normalized to a small period matrix and classified by theta-null vanishing.
pub fn cm_polarization_search(m: u64, bound: i64, prec: u32) -> Result<Vec<Polarization>> {
    let lat = CmLattice::new(m, prec)?;
    let pm = lat.period_matrix();
    let mut out = Vec::new();
    let range: Vec<i64> = (-bound..=bound).collect();
    let product_tol = -(prec as i64) / 2;
    for &e01 in &range {
        for &e02 in &range {
            for &e03 in &range {
                for &e12 in &range {
                    for &e13 in &range {
                        for &e23 in &range {
                            let e: IMat = vec![
                                vec![0, e01, e02, e03],
                                vec![-e01, 0, e12, e13],
                                vec![-e02, -e12, 0, e23],
                                vec![-e03, -e13, -e23, 0],
                            ];
                            if imat_det(&e) != 1 || !lat.compatible(&e) {
                                continue;
                            }
                            let t = frobenius_basis(&e)?;
                            let Ok(tau) = tau_from_symplectic(&apply_integer(&pm, &t)) else { continue };
                            if !riemann_ok(&tau, prec as i64 - 40) {
                                continue;
                            }
                            let thetas = theta_even_constants(&tau, prec)?;
                            let (idx, val) = min_even_theta(&thetas);
                            let product = val.is_zero() || val.exponent() < product_tol;
                            out.push(Polarization { form: e, tau, product, min_theta_index: idx, min_theta: val });
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}
