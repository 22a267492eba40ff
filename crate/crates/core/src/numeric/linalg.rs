use super::bigfloat::BigReal;
use super::complex::BigComplex;
use std::cmp::Ordering;

pub type CMat = Vec<Vec<BigComplex>>;

pub fn cmat_mul(a: &CMat, b: &CMat) -> CMat {
    let p = a[0][0].prec();
    a.iter()
        .map(|r| {
            (0..b[0].len())
                .map(|j| r.iter().zip(b).fold(BigComplex::zero(p), |acc, (x, row)| acc.add(&x.mul(&row[j]))))
                .collect()
        })
        .collect()
}

pub fn cmat_transpose(a: &CMat) -> CMat {
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn cmat_sub(a: &CMat, b: &CMat) -> CMat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.sub(y)).collect()).collect()
}

pub fn cmat_max_abs(a: &CMat) -> BigReal {
    let p = a[0][0].prec();
    let mut m = BigReal::zero(p);
    for r in a {
        for x in r {
            m = m.max(&x.abs());
        }
    }
    m
}

/// Inverse by Gauss–Jordan with partial pivoting; None if numerically singular.
pub fn cmat_inverse(a: &CMat) -> Option<CMat> {
    let n = a.len();
    let p = a[0][0].prec();
    let mut m: CMat = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { BigComplex::one(p) } else { BigComplex::zero(p) }));
            row
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).max_by(|&x, &y| m[x][c].norm_sqr().cmp_val(&m[y][c].norm_sqr()))?;
        if m[piv][c].is_zero() || m[piv][c].mag_exponent() < -(p as i64) + 8 {
            return None;
        }
        m.swap(c, piv);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let pr = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(&pr) {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Kernel by full-pivoting elimination. Pivots below rank_tol·(largest pivot) count as zero.
/// Returns (kernel basis vectors, pivot magnitudes in elimination order).
pub fn cmat_kernel(a: &CMat, rank_tol: &BigReal) -> (Vec<Vec<BigComplex>>, Vec<BigReal>) {
    let rows = a.len();
    let cols = a[0].len();
    let p = a[0][0].prec();
    let mut m = a.clone();
    let mut colperm: Vec<usize> = (0..cols).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    let mut first: Option<BigReal> = None;
    for k in 0..rows.min(cols) {
        let mut best = (k, k);
        let mut bv = BigReal::zero(p);
        for i in k..rows {
            for j in k..cols {
                let v = m[i][j].norm_sqr();
                if v.cmp_val(&bv) == Ordering::Greater {
                    bv = v;
                    best = (i, j);
                }
            }
        }
        let mag = bv.sqrt();
        let base = first.get_or_insert_with(|| mag.clone()).clone();
        if mag.is_zero() || mag.cmp_val(&base.mul(rank_tol)) != Ordering::Greater {
            pivots.push(mag);
            break;
        }
        pivots.push(mag);
        m.swap(k, best.0);
        for r in m.iter_mut() {
            r.swap(k, best.1);
        }
        colperm.swap(k, best.1);
        let inv = m[k][k].recip();
        for x in m[k].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..rows {
            if r != k && !m[r][k].is_zero() {
                let f = m[r][k].clone();
                let pr = m[k].clone();
                for (x, y) in m[r].iter_mut().zip(&pr) {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        rank += 1;
    }
    let mut basis = Vec::new();
    for free in rank..cols {
        let mut v = vec![BigComplex::zero(p); cols];
        v[colperm[free]] = BigComplex::one(p);
        for (r, row) in m.iter().enumerate().take(rank) {
            v[colperm[r]] = row[free].neg();
        }
        basis.push(v);
    }
    (basis, pivots)
}
