//! Local Euler factors of Jac H, Jac H′ and the Weil restriction of E, compared prime by prime.

use crate::arith::modp::factor_mod_p;
use crate::builtin::{curve_e, curve_h, curve_hprime, field_k};
use crate::curves::counting::{count_points_genus2, primes_above, trace_at};
use crate::curves::elliptic::EllipticCurve;
use crate::curves::hyperelliptic::HyperellipticCurve;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeSplitting {
    pub p: u64,
    /// (residue degree, ramification index) per prime above p.
    pub factors: Vec<(usize, u32)>,
    pub bad: bool,
}

/// Splitting of p in Q(⁴√5).
pub fn split_prime(p: u64) -> Result<PrimeSplitting> {
    let k = field_k();
    let mut factors: Vec<(usize, u32)> =
        factor_mod_p(&k.modulus, p)?.iter().map(|(g, e)| (g.degree().unwrap(), *e)).collect();
    factors.sort();
    Ok(PrimeSplitting { p, factors, bad: p == 2 || p == 5 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FactorSource {
    Genus2(String),
    WeilRestriction,
    Product,
}

/// Polynomial in T, coefficients low to high, constant term 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalEulerFactor {
    pub p: u64,
    #[serde(serialize_with = "ser_ints")]
    pub coeffs: Vec<BigInt>,
    pub source: FactorSource,
}

fn ser_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl LocalEulerFactor {
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }
    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }
    pub fn mul(&self, o: &LocalEulerFactor) -> LocalEulerFactor {
        LocalEulerFactor { p: self.p, coeffs: poly_mul(&self.coeffs, &o.coeffs), source: FactorSource::Product }
    }
    /// T⁴ coefficient p² and T³ coefficient p times the T coefficient.
    pub fn genus2_symmetric(&self) -> bool {
        let p = BigInt::from(self.p);
        self.coeffs.len() == 5
            && self.coeffs[0].is_one()
            && self.coeffs[4] == &p * &p
            && self.coeffs[3] == &p * &self.coeffs[1]
    }
    pub fn display(&self) -> String {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match k {
                0 => c.to_string(),
                1 => format!("{c}*T"),
                _ => format!("{c}*T^{k}"),
            });
        }
        terms.join(" + ").replace("+ -", "- ")
    }
}

/// 1 − s₁T + e₂T² − p·s₁T³ + p²T⁴ from the point counts over F_p and F_{p²}.
pub fn euler_factor_genus2(h: &HyperellipticCurve, p: u64) -> Result<LocalEulerFactor> {
    let n1 = BigInt::from(count_points_genus2(h, p, 1)?);
    let n2 = BigInt::from(count_points_genus2(h, p, 2)?);
    let pb = BigInt::from(p);
    let s1 = &pb + 1 - n1;
    let s2 = &pb * &pb + 1 - n2;
    let e2: BigInt = (&s1 * &s1 - s2) / 2;
    Ok(LocalEulerFactor {
        p,
        coeffs: vec![BigInt::one(), -&s1, e2, -&pb * &s1, &pb * &pb],
        source: FactorSource::Genus2(h.label.clone()),
    })
}

/// ∏_{v | p} (1 − a_v T^f + p^f T^{2f}) for E over its base field.
pub fn euler_factor_weil_restriction(e: &EllipticCurve, p: u64) -> Result<LocalEulerFactor> {
    let mut acc = vec![BigInt::one()];
    for rf in primes_above(&e.field, p)? {
        if rf.e > 1 {
            return Err(Error::BadReduction { p, valuation: 0 });
        }
        let a = BigInt::from(trace_at(e, &rf)?);
        let mut local = vec![BigInt::zero(); 2 * rf.f + 1];
        local[0] = BigInt::one();
        local[rf.f] = -a;
        local[2 * rf.f] = BigInt::from(rf.q());
        acc = poly_mul(&acc, &local);
    }
    Ok(LocalEulerFactor { p, coeffs: acc, source: FactorSource::WeilRestriction })
}

#[derive(Clone, Debug, Serialize)]
pub struct EulerCheck {
    pub p: u64,
    pub splitting: PrimeSplitting,
    pub genus2_product: LocalEulerFactor,
    pub weil_restriction: LocalEulerFactor,
    pub pass: bool,
}

/// L_p(Jac H)·L_p(Jac H′) = L_p(Res E) as exact degree-8 polynomials.
pub fn check_euler_identity(p: u64) -> Result<EulerCheck> {
    let splitting = split_prime(p)?;
    if splitting.bad {
        return Err(Error::BadReduction { p, valuation: 0 });
    }
    let lhs = euler_factor_genus2(&curve_h(), p)?.mul(&euler_factor_genus2(&curve_hprime(), p)?);
    let rhs = euler_factor_weil_restriction(&curve_e(), p)?;
    let pass = lhs.coeffs == rhs.coeffs && lhs.degree() == 8;
    Ok(EulerCheck { p, splitting, genus2_product: lhs, weil_restriction: rhs, pass })
}
