use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

/// Binary floating point value m·2^e with |m| < 2^prec.
#[derive(Clone)]
pub struct BigReal {
    m: BigInt,
    e: i64,
    prec: u32,
}

pub fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 16
}

fn bits(m: &BigInt) -> i64 {
    m.bits() as i64
}

fn round_shift(m: &BigInt, sh: i64) -> BigInt {
    if sh <= 0 {
        return m << (-sh) as usize;
    }
    let neg = m.is_negative();
    let a = m.abs();
    let r: BigInt = (a + (BigInt::one() << (sh - 1) as usize)) >> sh as usize;
    if neg {
        -r
    } else {
        r
    }
}

thread_local! {
    static PI_CACHE: RefCell<Option<(u32, BigInt)>> = const { RefCell::new(None) };
    static LN2_CACHE: RefCell<Option<(u32, BigInt)>> = const { RefCell::new(None) };
}

/// atan(1/n) · 2^w in fixed point.
fn atan_inv(n: u64, w: u32) -> BigInt {
    let one = BigInt::one() << w as usize;
    let n2 = BigInt::from(n * n);
    let mut term = &one / BigInt::from(n);
    let mut sum = term.clone();
    let mut k = 1u64;
    loop {
        term = &term / &n2;
        if term.is_zero() {
            break;
        }
        let t = &term / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
        k += 1;
    }
    sum
}

fn pi_fixed(w: u32) -> BigInt {
    PI_CACHE.with(|c| {
        if let Some((pw, v)) = &*c.borrow() {
            if *pw >= w {
                return v >> (pw - w) as usize;
            }
        }
        let ww = w + 32;
        let v = (atan_inv(5, ww) * 16u32 - atan_inv(239, ww) * 4u32) >> 32usize;
        *c.borrow_mut() = Some((w, v.clone()));
        v
    })
}

fn ln2_fixed(w: u32) -> BigInt {
    LN2_CACHE.with(|c| {
        if let Some((pw, v)) = &*c.borrow() {
            if *pw >= w {
                return v >> (pw - w) as usize;
            }
        }
        let ww = w + 32;
        // ln 2 = 2 atanh(1/3)
        let one = BigInt::one() << ww as usize;
        let mut term = &one / 3u32;
        let mut sum = term.clone();
        let mut k = 1u64;
        loop {
            term = &term / 9u32;
            if term.is_zero() {
                break;
            }
            sum += &term / BigInt::from(2 * k + 1);
            k += 1;
        }
        let v = (sum * 2u32) >> 32usize;
        *c.borrow_mut() = Some((w, v.clone()));
        v
    })
}

impl BigReal {
    fn norm(m: BigInt, e: i64, prec: u32) -> Self {
        if m.is_zero() {
            return BigReal { m, e: 0, prec };
        }
        let b = bits(&m);
        if b > prec as i64 {
            let sh = b - prec as i64;
            let m2 = round_shift(&m, sh);
            if bits(&m2) > prec as i64 {
                return BigReal { m: round_shift(&m2, 1), e: e + sh + 1, prec };
            }
            return BigReal { m: m2, e: e + sh, prec };
        }
        BigReal { m, e, prec }
    }
    pub fn zero(prec: u32) -> Self {
        BigReal { m: BigInt::zero(), e: 0, prec }
    }
    pub fn one(prec: u32) -> Self {
        BigReal::from_i64(1, prec)
    }
    pub fn from_i64(v: i64, prec: u32) -> Self {
        BigReal::norm(BigInt::from(v), 0, prec)
    }
    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        BigReal::norm(v.clone(), 0, prec)
    }
    pub fn from_f64(v: f64, prec: u32) -> Self {
        if v == 0.0 || !v.is_finite() {
            return BigReal::zero(prec);
        }
        let bitsv = v.to_bits();
        let exp = ((bitsv >> 52) & 0x7ff) as i64;
        let frac = bitsv & ((1u64 << 52) - 1);
        let (mant, e) = if exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), exp - 1075) };
        let m = if v < 0.0 { -BigInt::from(mant) } else { BigInt::from(mant) };
        BigReal::norm(m, e, prec)
    }
    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let n = q.numer();
        let d = q.denom();
        if n.is_zero() {
            return BigReal::zero(prec);
        }
        let sh = prec as i64 + bits(d) - bits(n) + 2;
        let sh = sh.max(0);
        let num = n << sh as usize;
        let (qq, r) = num.div_rem(d);
        // round half away from zero
        let qq = if (r.abs() * 2u32) >= d.abs() { if n.is_negative() { qq - 1 } else { qq + 1 } } else { qq };
        BigReal::norm(qq, -sh, prec)
    }
    /// Parses a decimal literal such as "-1.2345e-7".
    pub fn parse(s: &str, prec: u32) -> Option<Self> {
        let s = s.trim();
        let (mant, exp) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
            None => (s, 0),
        };
        let neg = mant.starts_with('-');
        let mant = mant.trim_start_matches(['-', '+']);
        let (ip, fp) = match mant.find('.') {
            Some(i) => (&mant[..i], &mant[i + 1..]),
            None => (mant, ""),
        };
        let digits = format!("{ip}{fp}");
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let mut n: BigInt = digits.parse().ok()?;
        if neg {
            n = -n;
        }
        let e10 = exp - fp.len() as i64;
        let q = if e10 >= 0 {
            BigRational::from_integer(n * BigInt::from(10).pow(e10 as u32))
        } else {
            BigRational::new(n, BigInt::from(10).pow((-e10) as u32))
        };
        Some(BigReal::from_rational(&q, prec))
    }
    pub fn prec(&self) -> u32 {
        self.prec
    }
    pub fn with_prec(&self, prec: u32) -> Self {
        BigReal::norm(self.m.clone(), self.e, prec)
    }
    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }
    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }
    pub fn signum(&self) -> i32 {
        match self.m.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }
    /// Binary exponent of the leading bit (value in [2^k, 2^(k+1))).
    pub fn exponent(&self) -> i64 {
        if self.m.is_zero() {
            i64::MIN / 4
        } else {
            self.e + bits(&self.m) - 1
        }
    }
    pub fn to_f64(&self) -> f64 {
        if self.m.is_zero() {
            return 0.0;
        }
        let b = bits(&self.m);
        let sh = (b - 60).max(0);
        let top = (&self.m >> sh as usize).to_f64().unwrap();
        top * 2f64.powi((self.e + sh).clamp(-2000, 2000) as i32)
    }
    pub fn neg(&self) -> Self {
        BigReal { m: -&self.m, e: self.e, prec: self.prec }
    }
    pub fn abs(&self) -> Self {
        BigReal { m: self.m.abs(), e: self.e, prec: self.prec }
    }
    pub fn mul_2exp(&self, k: i64) -> Self {
        BigReal { m: self.m.clone(), e: self.e + k, prec: self.prec }
    }
    pub fn add(&self, o: &Self) -> Self {
        let prec = self.prec.max(o.prec);
        if o.m.is_zero() {
            return self.with_prec(prec);
        }
        if self.m.is_zero() {
            return o.with_prec(prec);
        }
        let gap = self.exponent() - o.exponent();
        if gap > prec as i64 + 4 {
            return self.with_prec(prec);
        }
        if -gap > prec as i64 + 4 {
            return o.with_prec(prec);
        }
        let e = self.e.min(o.e);
        let a = &self.m << (self.e - e) as usize;
        let b = &o.m << (o.e - e) as usize;
        BigReal::norm(a + b, e, prec)
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &Self) -> Self {
        BigReal::norm(&self.m * &o.m, self.e + o.e, self.prec.max(o.prec))
    }
    pub fn mul_i64(&self, k: i64) -> Self {
        BigReal::norm(&self.m * BigInt::from(k), self.e, self.prec)
    }
    pub fn div(&self, o: &Self) -> Self {
        assert!(!o.m.is_zero(), "BigReal division by zero");
        let prec = self.prec.max(o.prec);
        if self.m.is_zero() {
            return BigReal::zero(prec);
        }
        let sh = (prec as i64 + bits(&o.m) - bits(&self.m) + 2).max(0);
        let q = (&self.m << sh as usize) / &o.m;
        BigReal::norm(q, self.e - o.e - sh, prec)
    }
    pub fn div_i64(&self, k: i64) -> Self {
        self.div(&BigReal::from_i64(k, self.prec))
    }
    pub fn recip(&self) -> Self {
        BigReal::one(self.prec).div(self)
    }
    pub fn sqr(&self) -> Self {
        self.mul(self)
    }
    pub fn sqrt(&self) -> Self {
        assert!(!self.m.is_negative(), "sqrt of negative BigReal");
        if self.m.is_zero() {
            return self.clone();
        }
        let mut sh = 2 * self.prec as i64 - bits(&self.m) + 4;
        if sh < 0 {
            sh = 0;
        }
        if (self.e - sh).rem_euclid(2) != 0 {
            sh += 1;
        }
        let s = (&self.m << sh as usize).sqrt();
        BigReal::norm(s, (self.e - sh) / 2, self.prec)
    }
    pub fn cmp_val(&self, o: &Self) -> Ordering {
        let d = self.sub(o);
        d.m.sign().cmp(&Sign::NoSign)
    }
    pub fn max(&self, o: &Self) -> Self {
        if self.cmp_val(o) == Ordering::Less {
            o.clone()
        } else {
            self.clone()
        }
    }
    /// Nearest integer (ties away from zero).
    pub fn round(&self) -> BigInt {
        if self.e >= 0 {
            return &self.m << self.e as usize;
        }
        round_shift(&self.m, -self.e)
    }
    pub fn floor(&self) -> BigInt {
        if self.e >= 0 {
            return &self.m << self.e as usize;
        }
        self.m.div_floor(&(BigInt::one() << (-self.e) as usize))
    }
    pub fn to_rational(&self) -> BigRational {
        if self.e >= 0 {
            BigRational::from_integer(&self.m << self.e as usize)
        } else {
            BigRational::new(self.m.clone(), BigInt::one() << (-self.e) as usize)
        }
    }
    /// Fixed-point image round(self·2^w).
    fn to_fixed(&self, w: u32) -> BigInt {
        round_shift(&self.m, -(self.e + w as i64))
    }
    fn from_fixed(v: BigInt, w: u32, prec: u32) -> Self {
        BigReal::norm(v, -(w as i64), prec)
    }
    pub fn pi(prec: u32) -> Self {
        let w = prec + 8;
        BigReal::from_fixed(pi_fixed(w), w, prec)
    }
    pub fn ln2(prec: u32) -> Self {
        let w = prec + 8;
        BigReal::from_fixed(ln2_fixed(w), w, prec)
    }
    pub fn exp(&self) -> Self {
        let prec = self.prec;
        if self.m.is_zero() {
            return BigReal::one(prec);
        }
        let mag = self.exponent().max(0) as u32;
        let w0 = prec + mag + 16;
        let ln2 = BigReal::from_fixed(ln2_fixed(w0 + 8), w0 + 8, w0);
        let x = self.with_prec(w0);
        let k = x.div(&ln2).round();
        let r = x.sub(&ln2.mul(&BigReal::from_bigint(&k, w0)));
        let s = ((prec as f64).sqrt() / 2.0) as u32 + 2;
        let w = prec + s + 24;
        let rf = round_shift(&r.to_fixed(w), s as i64);
        let one = BigInt::one() << w as usize;
        let mut term = one.clone();
        let mut sum = one.clone();
        let mut n = 1u64;
        loop {
            term = (&term * &rf >> w as usize) / BigInt::from(n);
            if term.is_zero() {
                break;
            }
            sum += &term;
            n += 1;
        }
        for _ in 0..s {
            sum = (&sum * &sum) >> w as usize;
        }
        let kk: i64 = k.to_i64().expect("exp argument too large");
        BigReal::norm(sum, kk - w as i64, prec)
    }
    pub fn ln(&self) -> Self {
        assert!(self.m.is_positive(), "ln of non-positive BigReal");
        let prec = self.prec;
        let w = prec + 24;
        // self = y·2^n with y in [0.75, 1.5)
        let mut n = self.exponent();
        let mut y = self.mul_2exp(-n).with_prec(w);
        if y.to_f64() > 1.5 {
            y = y.mul_2exp(-1);
            n += 1;
        }
        let one = BigReal::one(w);
        let z = y.sub(&one).div(&y.add(&one));
        let zneg = z.is_negative();
        let zf = z.abs().to_fixed(w);
        let z2 = (&zf * &zf) >> w as usize;
        let mut term = zf.clone();
        let mut sum = zf;
        let mut k = 1u64;
        loop {
            term = (&term * &z2) >> w as usize;
            if term.is_zero() {
                break;
            }
            sum += &term / BigInt::from(2 * k + 1);
            k += 1;
        }
        let sum = if zneg { -sum } else { sum };
        let lny = BigReal::from_fixed(sum * 2u32, w, w);
        let nl = BigReal::from_fixed(ln2_fixed(w + 8), w + 8, w).mul_i64(n);
        lny.add(&nl).with_prec(prec)
    }
    /// (cos x, sin x).
    pub fn cos_sin(&self) -> (Self, Self) {
        let prec = self.prec;
        let mag = self.exponent().max(0) as u32;
        let w0 = prec + mag + 16;
        let twopi = BigReal::pi(w0).mul_2exp(1);
        let x = self.with_prec(w0);
        let k = x.div(&twopi).round();
        let r = x.sub(&twopi.mul(&BigReal::from_bigint(&k, w0)));
        let s = 8u32;
        let w = prec + 2 * s + 24;
        let rf = round_shift(&r.to_fixed(w), s as i64);
        let one = BigInt::one() << w as usize;
        let r2 = (&rf * &rf) >> w as usize;
        let mut c = one.clone();
        let mut sn = rf.clone();
        let mut tc = one.clone();
        let mut ts = rf;
        let mut n = 1u64;
        loop {
            tc = -((&tc * &r2) >> w as usize) / BigInt::from((2 * n - 1) * (2 * n));
            ts = -((&ts * &r2) >> w as usize) / BigInt::from((2 * n) * (2 * n + 1));
            if tc.is_zero() && ts.is_zero() {
                break;
            }
            c += &tc;
            sn += &ts;
            n += 1;
        }
        for _ in 0..s {
            let s2 = ((&sn * &c) >> w as usize) * 2u32;
            let c2 = (((&c * &c) - (&sn * &sn)) >> w as usize).clone();
            sn = s2;
            c = c2;
        }
        (BigReal::from_fixed(c, w, prec), BigReal::from_fixed(sn, w, prec))
    }
    pub fn cos(&self) -> Self {
        self.cos_sin().0
    }
    pub fn sin(&self) -> Self {
        self.cos_sin().1
    }
    pub fn atan(&self) -> Self {
        // Newton on tan(y) = x starting from f64
        let prec = self.prec;
        let mut y = BigReal::from_f64(self.to_f64().atan(), prec + 16);
        let x = self.with_prec(prec + 16);
        let mut step = 53u32;
        loop {
            let (c, s) = y.cos_sin();
            // y <- y + (x cos y - sin y) cos y
            let d = x.mul(&c).sub(&s).mul(&c);
            y = y.add(&d);
            if step >= prec + 16 {
                break;
            }
            step *= 2;
        }
        y.with_prec(prec)
    }
    pub fn atan2(y: &Self, x: &Self) -> Self {
        let prec = y.prec.max(x.prec);
        let pi = BigReal::pi(prec);
        if x.is_zero() {
            return if y.is_negative() { pi.mul_2exp(-1).neg() } else { pi.mul_2exp(-1) };
        }
        if x.abs().cmp_val(&y.abs()) != Ordering::Less {
            let a = y.div(x).atan();
            if !x.is_negative() {
                a
            } else if !y.is_negative() {
                a.add(&pi)
            } else {
                a.sub(&pi)
            }
        } else {
            let a = x.div(y).atan();
            let h = pi.mul_2exp(-1);
            if !y.is_negative() {
                h.sub(&a)
            } else {
                h.neg().sub(&a)
            }
        }
    }
    /// Decimal scientific notation with the given number of significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.m.is_zero() {
            return "0".into();
        }
        let digits = digits.max(1);
        let lg = (self.exponent() as f64 + 0.5) * std::f64::consts::LOG10_2;
        let mut k = lg.floor() as i64;
        for _ in 0..3 {
            let sc = digits as i64 - 1 - k;
            let q = self.to_rational().abs()
                * if sc >= 0 {
                    BigRational::from_integer(BigInt::from(10).pow(sc as u32))
                } else {
                    BigRational::new(BigInt::one(), BigInt::from(10).pow((-sc) as u32))
                };
            let n = q.round().to_integer();
            let s = n.to_string();
            if s.len() == digits + 1 {
                k += 1;
                continue;
            }
            if s.len() < digits {
                k -= 1;
                continue;
            }
            let sign = if self.m.is_negative() { "-" } else { "" };
            let (a, b) = s.split_at(1);
            return if b.is_empty() { format!("{sign}{a}e{k}") } else { format!("{sign}{a}.{b}e{k}") };
        }
        format!("{:e}", self.to_f64())
    }
}

impl PartialEq for BigReal {
    fn eq(&self, o: &Self) -> bool {
        self.cmp_val(o) == Ordering::Equal
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = ((self.prec as f64) * std::f64::consts::LOG10_2) as usize;
        write!(f, "{}", self.to_decimal(d.clamp(1, 60)))
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
