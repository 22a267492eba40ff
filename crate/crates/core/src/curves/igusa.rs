use crate::arith::scalar::Scalar;

/// Binary form Σ c_i x^i z^(n−i) of degree n.
#[derive(Clone, Debug)]
pub struct BinaryForm<F: Scalar> {
    pub n: usize,
    pub c: Vec<F>,
}

fn binom(n: usize, k: usize) -> i64 {
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}

fn fact(n: usize) -> i64 {
    (1..=n as i64).product::<i64>().max(1)
}

impl<F: Scalar> BinaryForm<F> {
    pub fn new(n: usize, mut c: Vec<F>) -> Self {
        let z = c[0].zero_like();
        c.resize(n + 1, z);
        BinaryForm { n, c }
    }
    fn zero(&self) -> F {
        self.c[0].zero_like()
    }
    fn dx(&self) -> Self {
        if self.n == 0 {
            return BinaryForm { n: 0, c: vec![self.zero()] };
        }
        let c = (0..self.n).map(|i| self.c[i + 1].times(&self.zero().from_int_like(i as i64 + 1))).collect();
        BinaryForm { n: self.n - 1, c }
    }
    fn dz(&self) -> Self {
        if self.n == 0 {
            return BinaryForm { n: 0, c: vec![self.zero()] };
        }
        let c = (0..self.n).map(|i| self.c[i].times(&self.zero().from_int_like((self.n - i) as i64))).collect();
        BinaryForm { n: self.n - 1, c }
    }
    fn mul(&self, o: &Self) -> Self {
        let mut c = vec![self.zero(); self.n + o.n + 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].plus(&a.times(b));
            }
        }
        BinaryForm { n: self.n + o.n, c }
    }
    fn add(&self, o: &Self) -> Self {
        BinaryForm { n: self.n, c: self.c.iter().zip(&o.c).map(|(a, b)| a.plus(b)).collect() }
    }
    fn scale(&self, s: &F) -> Self {
        BinaryForm { n: self.n, c: self.c.iter().map(|a| a.times(s)).collect() }
    }
    /// k-th transvectant (f, g)_k with the (m−k)!(n−k)!/(m!n!) normalization.
    pub fn transvectant(&self, g: &Self, k: usize) -> Self {
        let (m, n) = (self.n, g.n);
        let z = self.zero();
        let mut acc = BinaryForm { n: m + n - 2 * k, c: vec![z.clone(); m + n - 2 * k + 1] };
        for j in 0..=k {
            let mut a = self.clone();
            for _ in 0..(k - j) {
                a = a.dx();
            }
            for _ in 0..j {
                a = a.dz();
            }
            let mut b = g.clone();
            for _ in 0..j {
                b = b.dx();
            }
            for _ in 0..(k - j) {
                b = b.dz();
            }
            let sgn = if j % 2 == 0 { 1 } else { -1 };
            acc = acc.add(&a.mul(&b).scale(&z.from_int_like(sgn * binom(k, j))));
        }
        let num = z.from_int_like(fact(m - k) * fact(n - k));
        let den = z.from_int_like(fact(m) * fact(n));
        acc.scale(&num.divided(&den).unwrap())
    }
    pub fn scalar(&self) -> F {
        self.c[0].clone()
    }
}

/// Igusa–Clebsch invariants (I2, I4, I6, I10) of a sextic form given by coefficients a0..a6 of x^0..x^6.
pub fn igusa_clebsch_from_sextic<F: Scalar>(coeffs: &[F]) -> [F; 4] {
    let f = BinaryForm::new(6, coeffs.to_vec());
    let i = f.transvectant(&f, 4);
    let delta = i.transvectant(&i, 2);
    let y1 = f.transvectant(&i, 4);
    let y2 = i.transvectant(&y1, 2);
    let y3 = i.transvectant(&y2, 2);
    let a = f.transvectant(&f, 6).scalar();
    let b = i.transvectant(&i, 4).scalar();
    let c = i.transvectant(&delta, 4).scalar();
    let d = y3.transvectant(&y1, 2).scalar();
    let k = |n: i64| a.from_int_like(n);
    let i2 = k(-120).times(&a);
    let i4 = k(-720).times(&a.pow_u(2)).plus(&k(6750).times(&b));
    let i6 = k(8640).times(&a.pow_u(3)).plus(&k(-108000).times(&a).times(&b)).plus(&k(202500).times(&c));
    let i10 = k(-62208).times(&a.pow_u(5))
        .plus(&k(972000).times(&a.pow_u(3)).times(&b))
        .plus(&k(1620000).times(&a.pow_u(2)).times(&c))
        .plus(&k(-3037500).times(&a).times(&b.pow_u(2)))
        .plus(&k(-6075000).times(&b).times(&c))
        .plus(&k(-4556250).times(&d));
    [i2, i4, i6, i10]
}

/// Weight-zero invariants I2^5/I10, I2^3·I4/I10, I2^2·I6/I10.
pub fn absolute_from_ic<F: Scalar>(ic: &[F; 4]) -> Option<[F; 3]> {
    let [i2, i4, i6, i10] = ic;
    let inv = i10.inverse()?;
    Some([
        i2.pow_u(5).times(&inv),
        i2.pow_u(3).times(i4).times(&inv),
        i2.pow_u(2).times(i6).times(&inv),
    ])
}
