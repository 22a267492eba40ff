use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Integer lattice given by its basis rows.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegerLattice {
    pub rows: Vec<Vec<BigInt>>,
}

/// Reduced basis together with the unimodular transform U (reduced = U · input).
#[derive(Clone, Debug)]
pub struct LllOutput {
    pub basis: IntegerLattice,
    pub transform: Vec<Vec<BigInt>>,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(dst: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d -= q * s;
    }
}

/// Rounds a/b to the nearest integer (b > 0).
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    (a * 2u32 + b).div_floor(&(b * 2u32))
}

impl IntegerLattice {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Self {
        IntegerLattice { rows }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        IntegerLattice { rows: rows.iter().map(|r| r.iter().map(|&a| BigInt::from(a)).collect()).collect() }
    }

    /// Integral LLL (exact Gram–Schmidt via subdeterminants) with parameter delta in (1/4, 1).
    pub fn lll(&self, delta: &BigRational) -> Result<LllOutput> {
        let n = self.rows.len();
        let mut b = self.rows.clone();
        let mut h: Vec<Vec<BigInt>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
        if n == 0 {
            return Ok(LllOutput { basis: IntegerLattice { rows: b }, transform: h });
        }
        let (da, db) = (delta.numer().clone(), delta.denom().clone());
        // d[i+1] = Gram determinant of the first i+1 rows, d[0] = 1; lam[k][j] = d[j+1] mu[k][j]
        let mut d = vec![BigInt::zero(); n + 1];
        let mut lam = vec![vec![BigInt::zero(); n]; n];
        d[0] = BigInt::one();
        d[1] = dot(&b[0], &b[0]);
        if d[1].is_zero() {
            return Err(Error::Rank { rank: 0, rows: n });
        }
        let mut k = 1usize;
        let mut kmax = 0usize;

        fn red(k: usize, l: usize, b: &mut [Vec<BigInt>], h: &mut [Vec<BigInt>], d: &[BigInt], lam: &mut [Vec<BigInt>]) {
            if (&lam[k][l] * 2u32).abs() > d[l + 1] {
                let q = round_div(&lam[k][l], &d[l + 1]);
                let (bl, bk) = (b[l].clone(), &mut b[k]);
                axpy(bk, &q, &bl);
                let hl = h[l].clone();
                axpy(&mut h[k], &q, &hl);
                lam[k][l] -= &q * &d[l + 1];
                for i in 0..l {
                    let t = &q * &lam[l][i];
                    lam[k][i] -= t;
                }
            }
        }

        while k < n {
            if k > kmax {
                kmax = k;
                for j in 0..=k {
                    let mut u = dot(&b[k], &b[j]);
                    for i in 0..j {
                        u = (&d[i + 1] * &u - &lam[k][i] * &lam[j][i]) / &d[i];
                    }
                    if j < k {
                        lam[k][j] = u;
                    } else {
                        if u.is_zero() {
                            return Err(Error::Rank { rank: k, rows: n });
                        }
                        d[k + 1] = u;
                    }
                }
            }
            red(k, k - 1, &mut b, &mut h, &d, &mut lam);
            let lhs = &db * (&d[k + 1] * &d[k - 1] + &lam[k][k - 1] * &lam[k][k - 1]);
            let rhs = &da * &d[k] * &d[k];
            if lhs < rhs {
                b.swap(k, k - 1);
                h.swap(k, k - 1);
                for j in 0..k - 1 {
                    let t = lam[k][j].clone();
                    lam[k][j] = lam[k - 1][j].clone();
                    lam[k - 1][j] = t;
                }
                let l = lam[k][k - 1].clone();
                let bb = (&d[k - 1] * &d[k + 1] + &l * &l) / &d[k];
                for i in k + 1..=kmax {
                    let t = lam[i][k].clone();
                    lam[i][k] = (&d[k + 1] * &lam[i][k - 1] - &l * &t) / &d[k];
                    lam[i][k - 1] = (&bb * &t + &l * &lam[i][k]) / &d[k + 1];
                }
                d[k] = bb;
                if k > 1 {
                    k -= 1;
                }
            } else {
                for l in (0..k - 1).rev() {
                    red(k, l, &mut b, &mut h, &d, &mut lam);
                }
                k += 1;
            }
        }
        Ok(LllOutput { basis: IntegerLattice { rows: b }, transform: h })
    }

    /// Exact Gram–Schmidt data: (mu, squared norms of b*).
    pub fn gram_schmidt(&self) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
        let n = self.rows.len();
        let conv = |r: &Vec<BigInt>| r.iter().map(|a| BigRational::from_integer(a.clone())).collect::<Vec<_>>();
        let mut bstar: Vec<Vec<BigRational>> = Vec::new();
        let mut mu = vec![vec![BigRational::zero(); n]; n];
        let mut norms = Vec::new();
        for i in 0..n {
            let bi = conv(&self.rows[i]);
            let mut v = bi.clone();
            for j in 0..i {
                let num: BigRational = bi.iter().zip(&bstar[j]).map(|(x, y)| x * y).sum();
                mu[i][j] = num / &norms[j];
                for (vk, bk) in v.iter_mut().zip(&bstar[j]) {
                    *vk -= &mu[i][j] * bk;
                }
            }
            let nn: BigRational = v.iter().map(|x| x * x).sum();
            norms.push(nn);
            bstar.push(v);
        }
        (mu, norms)
    }

    /// Checks size reduction (|mu| ≤ 1/2) and the Lovász condition for delta.
    pub fn is_lll_reduced(&self, delta: &BigRational) -> bool {
        let (mu, norms) = self.gram_schmidt();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        for i in 0..self.rows.len() {
            for j in 0..i {
                if mu[i][j].abs() > half {
                    return false;
                }
            }
            if i > 0 && norms[i] < (delta - &mu[i][i - 1] * &mu[i][i - 1]) * &norms[i - 1] {
                return false;
            }
        }
        true
    }
}

/// Determinant of a square integer matrix (fraction-free Bareiss elimination).
pub fn int_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &a[n - 1][n - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn delta() -> BigRational {
        BigRational::new(BigInt::from(99), BigInt::from(100))
    }

    fn matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        a.iter().map(|r| (0..b[0].len()).map(|j| r.iter().zip(b).map(|(x, row)| x * &row[j]).sum()).collect()).collect()
    }

    #[test]
    fn identity_is_fixed() {
        let l = IntegerLattice::from_i64(&[vec![1, 0], vec![0, 1]]);
        assert_eq!(l.lll(&delta()).unwrap().basis, l);
    }

    #[test]
    fn small_unimodular_example() {
        let l = IntegerLattice::from_i64(&[vec![4, 1], vec![3, 1]]);
        let out = l.lll(&delta()).unwrap();
        let mut rows: Vec<Vec<i64>> =
            out.basis.rows.iter().map(|r| r.iter().map(|a| i64::try_from(a.abs()).unwrap()).collect()).collect();
        rows.sort();
        assert_eq!(rows, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn dependent_rows_rejected() {
        let l = IntegerLattice::from_i64(&[vec![1, 2, 3], vec![2, 4, 6]]);
        assert!(matches!(l.lll(&delta()), Err(Error::Rank { .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]
        #[test]
        fn reduced_unimodular_same_lattice(entries in proptest::collection::vec(-1000i64..1000, 16),
                                           dn in 26i64..100) {
            let rows: Vec<Vec<i64>> = entries.chunks(4).map(|c| c.to_vec()).collect();
            let l = IntegerLattice::from_i64(&rows);
            let dl = BigRational::new(BigInt::from(dn), BigInt::from(100));
            let det_in = int_det(&l.rows);
            prop_assume!(!det_in.is_zero());
            let out = l.lll(&dl).unwrap();
            let u_det = int_det(&out.transform);
            prop_assert!(u_det.abs().is_one());
            prop_assert_eq!(matmul(&out.transform, &l.rows), out.basis.rows.clone());
            prop_assert!(out.basis.is_lll_reduced(&dl));
            let (_, n_in) = l.gram_schmidt();
            let (_, n_out) = out.basis.gram_schmidt();
            let p_in: BigRational = n_in.iter().product();
            let p_out: BigRational = n_out.iter().product();
            prop_assert_eq!(p_in, p_out);
        }
    }
}
