use crate::error::{Error, Result};
use crate::numeric::{digits_to_bits, BigComplex, BigReal};
use num_complex::Complex64;
use std::cmp::Ordering;

fn eval_c64(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Aberth–Ehrlich iteration in double precision, used to seed the refinement.
fn aberth_seed(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let lead = c[n].norm();
    let radius = 1.0 + c[..n].iter().map(|a| a.norm() / lead).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.7, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval_c64(c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm());
        }
        if moved < 1e-15 * radius {
            break;
        }
    }
    z
}

fn horner(c: &[BigComplex], z: &BigComplex) -> (BigComplex, BigComplex) {
    let p0 = z.prec();
    let mut p = BigComplex::zero(p0);
    let mut dp = BigComplex::zero(p0);
    for a in c.iter().rev() {
        dp = dp.mul(z).add(&p);
        p = p.mul(z).add(a);
    }
    (p, dp)
}

fn order_key(a: &BigComplex, b: &BigComplex, tol_exp: i64) -> Ordering {
    let d = a.re.sub(&b.re);
    if d.is_zero() || d.exponent() < tol_exp {
        let e = a.im.sub(&b.im);
        if e.is_zero() || e.exponent() < tol_exp {
            return Ordering::Equal;
        }
        return e.signum().cmp(&0);
    }
    d.signum().cmp(&0)
}

/// All roots of Σ c_k x^k with |f(root)| below 10^(−digits), ordered by real then imaginary part.
pub fn complex_roots(c: &[BigComplex], digits: u32) -> Result<Vec<BigComplex>> {
    let prec = digits_to_bits(digits) + 32;
    let c: Vec<BigComplex> = c.iter().map(|a| a.with_prec(prec)).collect();
    let n = c.iter().rposition(|a| !a.is_zero()).ok_or(Error::InvalidInput("zero polynomial".into()))?;
    let c = &c[..=n];
    let seeds = aberth_seed(&c.iter().map(|a| {
        let (re, im) = a.to_c64();
        Complex64::new(re, im)
    }).collect::<Vec<_>>());
    let mut roots = Vec::with_capacity(n);
    for s in seeds {
        let mut z = BigComplex::from_f64(s.re, s.im, prec);
        let mut converged = false;
        for _ in 0..200 {
            let (p, dp) = horner(c, &z);
            if p.is_zero() {
                converged = true;
                break;
            }
            if dp.is_zero() {
                break;
            }
            let step = p.div(&dp);
            z = z.sub(&step);
            if step.is_zero() || step.mag_exponent() < z.mag_exponent().max(0) - prec as i64 + 8 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NoConvergence("Newton refinement of a root".into()));
        }
        roots.push(z);
    }
    let target = -((digits as f64) * std::f64::consts::LOG2_10) as i64;
    for r in &roots {
        let (p, _) = horner(c, r);
        if !p.is_zero() && p.mag_exponent() > target {
            return Err(Error::NoConvergence("root residual above tolerance".into()));
        }
    }
    let distinct = -(prec as i64) / 3;
    let sep = -(prec as i64) / 2;
    for i in 0..n {
        for j in 0..i {
            let d = roots[i].sub(&roots[j]);
            if d.is_zero() || d.mag_exponent() < distinct {
                return Err(Error::NoConvergence("roots did not separate (not squarefree?)".into()));
            }
        }
    }
    roots.sort_by(|a, b| order_key(a, b, sep));
    Ok(roots)
}

/// Real roots of a real polynomial whose roots are all real.
pub fn real_roots(c: &[BigReal], digits: u32) -> Result<Vec<BigReal>> {
    let cc: Vec<BigComplex> = c.iter().map(|a| BigComplex::from_real(a.clone())).collect();
    let roots = complex_roots(&cc, digits)?;
    let tol = -(digits_to_bits(digits) as i64) / 2;
    roots
        .into_iter()
        .map(|r| {
            if r.im.is_zero() || r.im.exponent() < tol {
                Ok(r.re)
            } else {
                Err(Error::InvalidInput("non-real branch point".into()))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[i64], p: u32) -> Vec<BigComplex> {
        v.iter().map(|&a| BigComplex::from_i64(a, p)).collect()
    }

    #[test]
    fn i_and_minus_i() {
        let r = complex_roots(&c(&[1, 0, 1], 200), 40).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r[0].add(&BigComplex::i(200)).abs().exponent() < -120);
        assert!(r[1].sub(&BigComplex::i(200)).abs().exponent() < -120);
    }

    #[test]
    fn hprime_branch_points_closed_form() {
        let p = 300;
        let f: Vec<BigReal> = [0, 5, 0, -5, 0, 1].iter().map(|&a| BigReal::from_i64(a, p)).collect();
        let r = real_roots(&f, 60).unwrap();
        let s5 = BigReal::from_i64(5, p).sqrt();
        let five = BigReal::from_i64(5, p);
        let big = five.add(&s5).div_i64(2).sqrt();
        let small = five.sub(&s5).div_i64(2).sqrt();
        let expect = [big.neg(), small.neg(), BigReal::zero(p), small, big];
        for (a, b) in r.iter().zip(&expect) {
            let d = a.sub(b);
            assert!(d.is_zero() || d.exponent() < -190, "{a:?} {b:?}");
        }
    }

    #[test]
    fn repeated_root_rejected() {
        assert!(complex_roots(&c(&[1, -2, 1], 100), 20).is_err());
    }
}
