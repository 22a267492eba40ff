use crate::error::{Error, Result};
use num_integer::Integer;

pub type IMat = Vec<Vec<i64>>;

fn form(e: &IMat, x: &[i64], y: &[i64]) -> i64 {
    let n = x.len();
    (0..n).map(|i| (0..n).map(|j| x[i] * e[i][j] * y[j]).sum::<i64>()).sum()
}

/// Row-echelon basis of the Z-span of `rows`.
fn lattice_basis(mut rows: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let n = rows.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    for col in 0..n {
        loop {
            rows.retain(|r| r.iter().any(|&a| a != 0));
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&i) = nz.first() {
                    out.push(rows.remove(i));
                }
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            let pr = rows[piv].clone();
            for &i in &nz {
                if i != piv {
                    let q = Integer::div_floor(&rows[i][col], &pr[col]);
                    for k in 0..n {
                        rows[i][k] -= q * pr[k];
                    }
                }
            }
        }
    }
    out
}

/// Columns (e_1..e_g, f_1..f_g) of a unimodular T with Tᵀ·E·T = [[0, I], [−I, 0]].
pub fn frobenius_basis(e: &IMat) -> Result<IMat> {
    let n = e.len();
    if n % 2 != 0 || (0..n).any(|i| (0..n).any(|j| e[i][j] != -e[j][i])) {
        return Err(Error::InvalidInput("form is not antisymmetric of even size".into()));
    }
    let mut basis: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    let (mut es, mut fs) = (Vec::new(), Vec::new());
    while !basis.is_empty() {
        let v = basis[0].clone();
        let mut g = 0i64;
        let mut f = vec![0i64; n];
        for w in &basis[1..] {
            let a = form(e, &v, w);
            let ext = g.extended_gcd(&a);
            for k in 0..n {
                f[k] = ext.x * f[k] + ext.y * w[k];
            }
            g = ext.gcd;
        }
        if g.abs() != 1 {
            return Err(Error::InvalidInput(format!("form is not principal (divisor {g})")));
        }
        if g == -1 {
            f.iter_mut().for_each(|a| *a = -*a);
        }
        let projected: Vec<Vec<i64>> = basis
            .iter()
            .map(|w| {
                let (a, b) = (form(e, w, &f), form(e, w, &v));
                (0..n).map(|k| w[k] - a * v[k] + b * f[k]).collect()
            })
            .collect();
        basis = lattice_basis(projected);
        es.push(v);
        fs.push(f);
    }
    let cols: Vec<Vec<i64>> = es.into_iter().chain(fs).collect();
    let t: IMat = (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    if transform(e, &t) != standard(n) {
        return Err(Error::InvalidInput("symplectic reduction failed".into()));
    }
    Ok(t)
}

pub fn standard(n: usize) -> IMat {
    let g = n / 2;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j == i + g {
                        1
                    } else if i == j + g {
                        -1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect()
}

pub fn imat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    let m = b[0].len();
    (0..n).map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

pub fn imat_transpose(a: &IMat) -> IMat {
    (0..a[0].len()).map(|j| (0..a.len()).map(|i| a[i][j]).collect()).collect()
}

/// Tᵀ·E·T.
pub fn transform(e: &IMat, t: &IMat) -> IMat {
    imat_mul(&imat_mul(&imat_transpose(t), e), t)
}

/// Integer determinant by cofactor expansion (small sizes only).
pub fn imat_det(a: &IMat) -> i64 {
    let n = a.len();
    if n == 1 {
        return a[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: IMat = (1..n).map(|i| (0..n).filter(|&k| k != j).map(|k| a[i][k]).collect()).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * a[0][j] * imat_det(&minor)
        })
        .sum()
}
