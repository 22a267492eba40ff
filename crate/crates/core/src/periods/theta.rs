use crate::error::{Error, Result};
use crate::numeric::{BigComplex, BigReal};

pub type Tau = [[BigComplex; 2]; 2];

/// Indices i = a₀ + 2a₁ + 4b₀ + 8b₁ of the even characteristics.
pub const EVEN: [usize; 10] = [0, 1, 2, 3, 4, 6, 8, 9, 12, 15];

fn im_min_eigen(t: &Tau) -> f64 {
    let (a, b, d) = (t[0][0].im.to_f64(), t[0][1].im.to_f64(), t[1][1].im.to_f64());
    let tr = a + d;
    let det = a * d - b * b;
    if a <= 0.0 || det <= 0.0 {
        return 0.0;
    }
    tr / 2.0 - ((tr * tr / 4.0) - det).max(0.0).sqrt()
}

pub fn im_positive_definite(t: &Tau) -> bool {
    let (a, b, d) = (&t[0][0].im, &t[0][1].im, &t[1][1].im);
    !a.is_negative() && !a.is_zero() && {
        let det = a.mul(d).sub(&b.sqr());
        !det.is_negative() && !det.is_zero()
    }
}

/// θ[a;b](0, τ) for characteristic index i, summing until exp(−π·Q) < 2^(−prec − 24)·radius_factor⁻².
pub fn theta_constant(t: &Tau, index: usize, prec: u32, radius_factor: f64) -> Result<BigComplex> {
    if !im_positive_definite(t) {
        return Err(Error::InvalidInput("Im tau is not positive definite".into()));
    }
    let w = prec + 24;
    let a = [(index & 1) as i64, ((index >> 1) & 1) as i64];
    let b = [((index >> 2) & 1) as i64, ((index >> 3) & 1) as i64];
    let qmax = (w as f64 + 16.0) * std::f64::consts::LN_2 / std::f64::consts::PI * radius_factor * radius_factor;
    let lam = im_min_eigen(t);
    let r = (qmax / lam).sqrt().ceil() as i64 + 2;
    let pi = BigReal::pi(w);
    let t = [
        [t[0][0].with_prec(w), t[0][1].with_prec(w)],
        [t[1][0].with_prec(w), t[1][1].with_prec(w)],
    ];
    let yf = [[t[0][0].im.to_f64(), t[0][1].im.to_f64()], [t[1][0].im.to_f64(), t[1][1].im.to_f64()]];
    let mut sum = BigComplex::zero(w);
    for n0 in -r..=r {
        for n1 in -r..=r {
            // v = n + a/2 scaled by 2 to stay integral
            let v = [2 * n0 + a[0], 2 * n1 + a[1]];
            let qf = (yf[0][0] * (v[0] * v[0]) as f64 + 2.0 * yf[0][1] * (v[0] * v[1]) as f64 + yf[1][1] * (v[1] * v[1]) as f64) / 4.0;
            if qf > qmax + 4.0 {
                continue;
            }
            let q = t[0][0]
                .scale(&BigReal::from_i64(v[0] * v[0], w))
                .add(&t[0][1].scale(&BigReal::from_i64(2 * v[0] * v[1], w)))
                .add(&t[1][1].scale(&BigReal::from_i64(v[1] * v[1], w)))
                .mul_2exp(-2);
            let lin = BigReal::from_i64(v[0] * b[0] + v[1] * b[1], w).mul_2exp(-1);
            // exp(πi(q + lin))
            let arg = BigComplex::new(q.im.neg(), q.re.add(&lin)).scale(&pi);
            sum = sum.add(&arg.exp());
        }
    }
    Ok(sum.with_prec(prec))
}

pub fn theta_even_constants(t: &Tau, prec: u32) -> Result<Vec<BigComplex>> {
    EVEN.iter().map(|&i| theta_constant(t, i, prec, 1.0)).collect()
}

/// Rosenhain parameters λ₁, λ₂, λ₃ from the squared theta constants.
pub fn rosenhain(thetas: &[BigComplex]) -> Result<[BigComplex; 3]> {
    let th = |i: usize| -> BigComplex { thetas[EVEN.iter().position(|&j| j == i).unwrap()].sqr() };
    let (t0, t1, t2, t3, t12, t15) = (th(0), th(1), th(2), th(3), th(12), th(15));
    let den = [t1.mul(&t3), t1.mul(&t15), t3.mul(&t15)];
    if den.iter().any(|d| d.is_zero() || d.mag_exponent() < -(d.prec() as i64) / 2) {
        return Err(Error::InvalidInput("theta quotient undefined (vanishing theta constant)".into()));
    }
    Ok([t0.mul(&t2).div(&den[0]), t2.mul(&t12).div(&den[1]), t0.mul(&t12).div(&den[2])])
}
