use crate::error::{Error, Result};
use crate::numeric::BigReal;

/// ∫_a^b x^j / √|lc·∏(x − e_i)| dx for j = 0, 1, where a and b are consecutive roots e_i.
/// Double-exponential substitution with endpoint distances computed directly, so the
/// inverse square-root singularities cost no precision.
pub fn interval_integrals(a: &BigReal, b: &BigReal, roots: &[BigReal], lc: &BigReal, prec: u32) -> Result<[BigReal; 2]> {
    let w = prec + 32;
    let (a, b) = (a.with_prec(w), b.with_prec(w));
    let len = b.sub(&a);
    let others: Vec<BigReal> = roots
        .iter()
        .map(|e| e.with_prec(w))
        .filter(|e| e.sub(&a).abs().exponent() > -(w as i64) / 2 && e.sub(&b).abs().exponent() > -(w as i64) / 2)
        .collect();
    let lc = lc.with_prec(w).abs();
    let pi = BigReal::pi(w);
    let one = BigReal::one(w);
    let tmax = (2.0 * (w as f64 + 24.0) * std::f64::consts::LN_2 / std::f64::consts::PI).asinh() + 0.5;
    let point = |t: f64| -> [BigReal; 2] {
        let et = BigReal::from_f64(t, w).exp();
        let eti = et.recip();
        let sinh = et.sub(&eti).mul_2exp(-1);
        let cosh = et.add(&eti).mul_2exp(-1);
        let u = pi.mul(&sinh).mul_2exp(-1);
        let eu = u.exp();
        let eui = eu.recip();
        let da = len.div(&one.add(&eui.sqr()));
        let db = len.div(&one.add(&eu.sqr()));
        let x = if t < 0.0 { a.add(&da) } else { b.sub(&db) };
        let weight = len.mul(&pi).mul(&cosh).div(&eu.add(&eui).sqr());
        let mut fx = lc.mul(&da).mul(&db);
        for e in &others {
            fx = fx.mul(&x.sub(e).abs());
        }
        let g = weight.div(&fx.sqrt());
        [g.clone(), g.mul(&x)]
    };
    let mut sum = point(0.0);
    let mut h = 1.0f64;
    let mut k = 1;
    loop {
        let t = k as f64 * h;
        if t > tmax {
            break;
        }
        for s in [t, -t] {
            let v = point(s);
            sum = [sum[0].add(&v[0]), sum[1].add(&v[1])];
        }
        k += 1;
    }
    let mut prev = [sum[0].mul(&BigReal::from_f64(h, w)), sum[1].mul(&BigReal::from_f64(h, w))];
    for _level in 0..14 {
        h /= 2.0;
        let mut k = 1;
        loop {
            let t = k as f64 * h;
            if t > tmax {
                break;
            }
            for s in [t, -t] {
                let v = point(s);
                sum = [sum[0].add(&v[0]), sum[1].add(&v[1])];
            }
            k += 2;
        }
        let hb = BigReal::from_f64(h, w);
        let cur = [sum[0].mul(&hb), sum[1].mul(&hb)];
        let scale = cur[0].abs().max(&cur[1].abs()).max(&one);
        let diff = cur[0].sub(&prev[0]).abs().max(&cur[1].sub(&prev[1]).abs());
        prev = cur;
        if diff.is_zero() || diff.exponent() - scale.exponent() < -(prec as i64 + 8) {
            return Ok([prev[0].with_prec(prec), prev[1].with_prec(prec)]);
        }
    }
    Err(Error::NoConvergence("tanh-sinh quadrature".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arcsine_integral_is_pi() {
        // ∫_{-1}^{1} dx/√(1−x²) = π and ∫ x dx/√(1−x²) = 0
        let p = 200;
        let roots = [BigReal::from_i64(-1, p), BigReal::from_i64(1, p)];
        let v = interval_integrals(&roots[0], &roots[1], &roots, &BigReal::from_i64(-1, p), p).unwrap();
        let d = v[0].sub(&BigReal::pi(p));
        assert!(d.is_zero() || d.exponent() < -180, "{}", d.to_f64());
        assert!(v[1].is_zero() || v[1].exponent() < -180);
    }

    #[test]
    fn beta_type_integral() {
        // ∫_0^1 dx/√(x(1−x)(2−x)) = √2·K(1/2)
        let p = 180;
        let r = [BigReal::from_i64(0, p), BigReal::from_i64(1, p), BigReal::from_i64(2, p)];
        let v = interval_integrals(&r[0], &r[1], &r, &BigReal::one(p), p).unwrap();
        let expect = BigReal::parse("2.622057554292119810464839589891119413682754951431623163", p).unwrap();
        let d = v[0].sub(&expect);
        assert!(d.is_zero() || d.exponent() < -150, "{}", v[0].to_decimal(40));
    }
}
