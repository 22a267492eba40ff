use super::lll::IntegerLattice;
use super::numfield::{Field, NfElem};
use crate::error::{Error, Result};
use crate::numeric::{digits_to_bits, BigComplex, BigReal};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Designated complex image of the field generator, refined by Newton iteration.
pub fn generator_embedding(field: &Field, prec: u32) -> BigComplex {
    let wp = prec + 32;
    let m: Vec<BigComplex> = field.modulus.iter().map(|c| BigComplex::from_real(BigReal::from_bigint(c, wp))).collect();
    let dm: Vec<BigComplex> = (1..m.len()).map(|i| m[i].scale(&BigReal::from_i64(i as i64, wp))).collect();
    let ev = |c: &[BigComplex], z: &BigComplex| c.iter().rev().fold(BigComplex::zero(wp), |acc, a| acc.mul(z).add(a));
    if field.degree == 1 {
        return BigComplex::from_real(BigReal::from_bigint(&-field.modulus[0].clone(), prec));
    }
    let mut z = BigComplex::from_f64(field.embedding.0, field.embedding.1, wp);
    for _ in 0..200 {
        let dz = ev(&m, &z).div(&ev(&dm, &z));
        z = z.sub(&dz);
        if dz.is_zero() || dz.mag_exponent() < z.mag_exponent() - wp as i64 + 8 {
            break;
        }
    }
    z.with_prec(prec)
}

/// Value of an element under the designated embedding.
pub fn embed(a: &NfElem, prec: u32) -> BigComplex {
    let theta = generator_embedding(&a.field, prec + 16);
    embed_at(a, &theta).with_prec(prec)
}

pub fn embed_at(a: &NfElem, theta: &BigComplex) -> BigComplex {
    let p = theta.prec();
    a.coords()
        .iter()
        .rev()
        .fold(BigComplex::zero(p), |acc, c| acc.mul(theta).add(&BigComplex::from_real(BigReal::from_rational(c, p))))
}

fn scaled(x: &BigReal, scale_bits: i64) -> BigInt {
    x.mul_2exp(scale_bits).round()
}

/// Finds an element of `field` of height ≤ `height_bound` whose embedding matches `value`
/// to about `digits` decimal digits, using LLL on the power basis of the generator.
pub fn recognize_algebraic(value: &BigComplex, field: &Field, height_bound: &BigInt, digits: u32) -> Result<NfElem> {
    let d = field.degree;
    let prec = digits_to_bits(digits);
    let theta = generator_embedding(field, prec + 32);
    let complex = theta.im.exponent() > -(prec as i64) || value.im.exponent() > -(prec as i64) + 8;
    let scale_bits = (digits as f64 * std::f64::consts::LOG2_10) as i64 - 4;
    let mut entries: Vec<BigComplex> = vec![value.with_prec(prec + 32)];
    let mut pw = BigComplex::one(prec + 32);
    for _ in 0..d {
        entries.push(pw.clone());
        pw = pw.mul(&theta);
    }
    let rows: Vec<Vec<BigInt>> = entries
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let mut r: Vec<BigInt> = (0..=d).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect();
            r.push(scaled(&z.re, scale_bits));
            if complex {
                r.push(scaled(&z.im, scale_bits));
            }
            r
        })
        .collect();
    let red = IntegerLattice::new(rows).lll(&BigRational::new(99.into(), 100.into()))?;
    let tol_bits = scale_bits - 8 - 2 * height_bound.bits() as i64;
    for row in &red.basis.rows {
        let a0 = &row[0];
        if a0.is_zero() {
            continue;
        }
        if row[..=d].iter().any(|a| a.abs() > *height_bound) {
            continue;
        }
        let coords: Vec<BigRational> = (0..d).map(|i| BigRational::new(-row[i + 1].clone(), a0.clone())).collect();
        let cand = NfElem::from_coords(field, &coords);
        let check = embed(&cand, 2 * prec);
        let err = check.sub(&value.with_prec(2 * prec)).abs();
        let scale = value.abs().max(&BigReal::one(prec));
        if err.is_zero() || err.exponent() - scale.exponent() < -tol_bits {
            return Ok(cand);
        }
    }
    Err(Error::RecognitionFailed(format!(
        "no relation with height <= {height_bound} at {digits} digits in {}",
        field.label
    )))
}

/// Recognition over Q (degree-1 field).
pub fn recognize_rational(value: &BigReal, height_bound: &BigInt, digits: u32) -> Result<BigRational> {
    let q = super::numfield::rational_field();
    let e = recognize_algebraic(&BigComplex::from_real(value.clone()), &q, height_bound, digits)?;
    Ok(e.rational_part())
}
