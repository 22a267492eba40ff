use super::igusa::{absolute_from_ic, igusa_clebsch_from_sextic};
use crate::arith::poly::Poly;
use crate::arith::scalar::Scalar;
use crate::arith::zfactor::{factor_over_q, primitive_int, QPoly};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Genus-2 curve y² = f(x) over Q with f squarefree of degree 5 or 6.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperellipticCurve {
    pub f: QPoly,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IgusaClebschInvariants {
    pub i2: String,
    pub i4: String,
    pub i6: String,
    pub i10: String,
    pub absolute: [String; 3],
}

/// Exact Igusa–Clebsch data with the weight-0 ratios.
#[derive(Clone, Debug, PartialEq)]
pub struct IgusaClebsch {
    pub ic: [BigRational; 4],
    pub absolute: [BigRational; 3],
}

impl IgusaClebsch {
    pub fn to_strings(&self) -> IgusaClebschInvariants {
        IgusaClebschInvariants {
            i2: self.ic[0].to_string(),
            i4: self.ic[1].to_string(),
            i6: self.ic[2].to_string(),
            i10: self.ic[3].to_string(),
            absolute: self.absolute.clone().map(|a| a.to_string()),
        }
    }
}

/// Witness for f1(aX + bZ, cX + dZ) = kappa · f2(X, Z) with kappa a nonzero square.
#[derive(Clone, Debug, PartialEq)]
pub struct G2Isomorphism {
    pub matrix: [[BigRational; 2]; 2],
    pub kappa: BigRational,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// f(aX + bZ, cX + dZ) for a form of degree 6 (coefficients x^0..x^6).
pub fn sextic_substitute(f: &[BigRational], m: &[[BigRational; 2]; 2]) -> Vec<BigRational> {
    let z = BigRational::zero();
    let lin_x = Poly::new(vec![m[0][1].clone(), m[0][0].clone()], z.clone());
    let lin_z = Poly::new(vec![m[1][1].clone(), m[1][0].clone()], z.clone());
    let mut acc = Poly::zero(&z);
    for (i, c) in f.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = lin_x.pow(i as u32).mul(&lin_z.pow((6 - i) as u32)).scale(c);
        acc = acc.add(&term);
    }
    let mut out = acc.c;
    out.resize(7, z);
    out
}

fn rational_kth_roots(r: &BigRational, k: u32) -> Vec<BigRational> {
    if r.is_zero() {
        return vec![BigRational::zero()];
    }
    let (n, d) = (r.numer().clone(), r.denom().clone());
    if n.is_negative() && k % 2 == 0 {
        return vec![];
    }
    let na = n.abs();
    let rn = na.nth_root(k);
    let rd = d.nth_root(k);
    if rn.pow(k) != na || rd.pow(k) != d {
        return vec![];
    }
    let base = BigRational::new(if n.is_negative() { -rn } else { rn }, rd);
    if k % 2 == 0 {
        vec![base.clone(), -base]
    } else {
        vec![base]
    }
}

fn is_rational_square(r: &BigRational) -> bool {
    !r.is_negative() && !rational_kth_roots(r, 2).is_empty()
}

fn mat_mul(a: &[[BigRational; 2]; 2], b: &[[BigRational; 2]; 2]) -> [[BigRational; 2]; 2] {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn mat_inv(a: &[[BigRational; 2]; 2]) -> [[BigRational; 2]; 2] {
    let det = &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0];
    [[&a[1][1] / &det, -&a[0][1] / &det], [-&a[1][0] / &det, &a[0][0] / &det]]
}

/// Branch point as a projective pair (x : z).
type Proj = (BigRational, BigRational);

impl HyperellipticCurve {
    pub fn new(f: QPoly, label: &str) -> Result<Self> {
        let d = f.deg_i();
        if d != 5 && d != 6 {
            return Err(Error::InvalidInput(format!("degree {d} is not 5 or 6")));
        }
        if f.gcd(&f.derivative()).deg_i() > 0 {
            return Err(Error::InvalidInput("f is not squarefree".into()));
        }
        Ok(HyperellipticCurve { f, label: label.into() })
    }
    pub fn from_rationals(c: &[(i64, i64)], label: &str) -> Result<Self> {
        let v = c.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect();
        HyperellipticCurve::new(Poly::new(v, BigRational::zero()), label)
    }
    pub fn degree(&self) -> usize {
        self.f.degree().unwrap()
    }
    pub fn sextic_coeffs(&self) -> Vec<BigRational> {
        let mut c = self.f.c.clone();
        c.resize(7, BigRational::zero());
        c
    }
    /// Integral model Y² = c²·f(x) with the least positive c; returns (coefficients, c).
    pub fn integral_model(&self) -> (Vec<BigInt>, BigInt) {
        let mut l = BigInt::one();
        for a in &self.f.c {
            l = l.lcm(a.denom());
        }
        // c = product of p^ceil(v_p(l)/2)
        let mut c = BigInt::one();
        let mut rest = l.clone();
        let mut p = BigInt::from(2);
        while rest > BigInt::one() {
            let mut v: u32 = 0;
            while (&rest % &p).is_zero() {
                rest /= &p;
                v += 1;
            }
            for _ in 0..(v + 1) / 2 {
                c *= &p;
            }
            p += 1;
        }
        let c2 = BigRational::from_integer(&c * &c);
        (self.f.c.iter().map(|a| (a * &c2).to_integer()).collect(), c)
    }
    /// Discriminant of the integral model polynomial (as a degree-d polynomial).
    pub fn integral_discriminant(&self) -> BigInt {
        let (ic, _) = self.integral_model();
        let f = crate::arith::zfactor::qpoly_from_ints(&ic);
        let r = f.resultant(&f.derivative());
        (r / BigRational::from_integer(ic.last().unwrap().clone())).to_integer().abs()
    }
    pub fn igusa_clebsch(&self) -> IgusaClebsch {
        let ic = igusa_clebsch_from_sextic(&self.sextic_coeffs());
        let absolute = absolute_from_ic(&ic).expect("I10 nonzero for a genus-2 curve");
        IgusaClebsch { ic, absolute }
    }
    /// Twist y² = d³·f(x/d), which is Q-isomorphic to y² = d·f(x).
    pub fn quadratic_twist(&self, d: &BigRational) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::InvalidInput("twist by zero".into()));
        }
        let c: Vec<BigRational> = self.f.c.iter().enumerate().map(|(i, a)| a * d.pow(3 - i as i32)).collect();
        HyperellipticCurve::new(Poly::new(c, BigRational::zero()), &format!("{}^({})", self.label, d))
    }
    /// Rational Weierstrass points as projective pairs (x : z); ∞ = (1 : 0) when deg f = 5.
    pub fn rational_branch_points(&self) -> Vec<Proj> {
        let mut out = Vec::new();
        for (g, _) in factor_over_q(&self.f) {
            if g.deg_i() == 1 {
                out.push((-g.c[0].clone(), q(1)));
            }
        }
        if self.degree() == 5 {
            out.push((q(1), q(0)));
        }
        out
    }
    /// Q-isomorphism search through pairs of rational Weierstrass points.
    pub fn isomorphism_to(&self, other: &HyperellipticCurve) -> Option<G2Isomorphism> {
        let b1 = self.rational_branch_points();
        let b2 = other.rational_branch_points();
        if b1.len() != b2.len() || b1.len() < 2 {
            return None;
        }
        // M sends P to 0 and Q to ∞: (x, z) ↦ (z_P x − x_P z, z_Q x − x_Q z)
        let normalizer = |p: &Proj, qq: &Proj| [[p.1.clone(), -p.0.clone()], [qq.1.clone(), -qq.0.clone()]];
        let m2 = normalizer(&b2[0], &b2[1]);
        let g2 = sextic_substitute(&other.sextic_coeffs(), &mat_inv(&m2));
        let f1 = self.sextic_coeffs();
        for (i, p1) in b1.iter().enumerate() {
            for (j, q1) in b1.iter().enumerate() {
                if i == j {
                    continue;
                }
                let m1 = normalizer(p1, q1);
                let g1 = sextic_substitute(&f1, &mat_inv(&m1));
                if g1.iter().zip(&g2).any(|(a, b)| a.is_zero() != b.is_zero()) {
                    continue;
                }
                let nz: Vec<usize> = (0..7).filter(|&k| !g1[k].is_zero()).collect();
                let (a, b) = (nz[0], nz[1]);
                let ratio = (&g2[a] * &g1[b]) / (&g2[b] * &g1[a]);
                for lam in rational_kth_roots(&ratio, (b - a) as u32) {
                    if lam.is_zero() {
                        continue;
                    }
                    let e2 = &g2[a] * lam.pow(a as i32) / &g1[a];
                    let ok = nz.iter().all(|&k| &g2[k] * lam.pow(k as i32) == &e2 * &g1[k]);
                    if !ok || !is_rational_square(&e2) {
                        continue;
                    }
                    let dinv = [[q(1) / &lam, q(0)], [q(0), q(1)]];
                    let t = mat_mul(&mat_mul(&mat_inv(&m1), &dinv), &m2);
                    let kappa = q(1) / &e2;
                    debug_assert_eq!(
                        sextic_substitute(&f1, &t),
                        other.sextic_coeffs().iter().map(|c| c * &kappa).collect::<Vec<_>>()
                    );
                    return Some(G2Isomorphism { matrix: t, kappa });
                }
            }
        }
        None
    }
    pub fn primitive_integral(&self) -> Vec<BigInt> {
        primitive_int(&self.f)
    }
    /// Evaluates f at a scalar of any coefficient-compatible kind.
    pub fn eval_with<S: Scalar>(&self, x: &S, emb: impl Fn(&BigRational) -> S) -> S {
        self.f.eval_with(x, emb)
    }
}

impl G2Isomorphism {
    pub fn verify(&self, c1: &HyperellipticCurve, c2: &HyperellipticCurve) -> bool {
        is_rational_square(&self.kappa)
            && sextic_substitute(&c1.sextic_coeffs(), &self.matrix)
                == c2.sextic_coeffs().iter().map(|c| c * &self.kappa).collect::<Vec<_>>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h() -> HyperellipticCurve {
        HyperellipticCurve::from_rationals(&[(0, 1), (1, 5), (0, 1), (-1, 1), (0, 1), (1, 1)], "H").unwrap()
    }
    fn hp() -> HyperellipticCurve {
        HyperellipticCurve::from_rationals(&[(0, 1), (5, 1), (0, 1), (-5, 1), (0, 1), (1, 1)], "H'").unwrap()
    }

    #[test]
    fn integral_model_scales_y_by_five() {
        let (c, s) = h().integral_model();
        assert_eq!(s, BigInt::from(5));
        assert_eq!(c, [0, 5, 0, -25, 0, 25].map(BigInt::from).to_vec());
    }

    #[test]
    fn twist_by_five_is_hprime() {
        let t = h().quadratic_twist(&q(5)).unwrap();
        let iso = t.isomorphism_to(&hp()).expect("isomorphic over Q");
        assert!(iso.verify(&t, &hp()));
        assert!(h().isomorphism_to(&hp()).is_none());
    }

    #[test]
    fn twist_twice_returns_curve() {
        for d in [2i64, -3, 7, 10] {
            let t = h().quadratic_twist(&q(d)).unwrap().quadratic_twist(&q(d)).unwrap();
            assert!(t.isomorphism_to(&h()).is_some(), "{d}");
        }
        assert!(h().quadratic_twist(&q(1)).unwrap().isomorphism_to(&h()).is_some());
    }

    #[test]
    fn absolute_invariants_frozen() {
        // values from an independent root-based computation
        let a = h().igusa_clebsch().absolute;
        assert_eq!(a, [q(105043750), q(2143750), q(722750)]);
        assert_eq!(hp().igusa_clebsch().absolute, a);
        let other = HyperellipticCurve::from_rationals(&[(0, 1), (-1, 1), (0, 1), (0, 1), (0, 1), (1, 1)], "x5-x").unwrap();
        assert_eq!(other.igusa_clebsch().absolute, [q(400000), q(-20000), q(-2000)]);
    }

    #[test]
    fn non_squarefree_rejected() {
        assert!(HyperellipticCurve::from_rationals(&[(0, 1), (0, 1), (0, 1), (1, 1), (-2, 1), (1, 1)], "bad").is_err());
    }
}
