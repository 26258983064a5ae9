//! Exact Gaussian-rational evaluation of the q-Laguerre sums, used as an
//! independent oracle for the floating-point evaluators.

#![allow(dead_code)]

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_pow(x: &BigRational, k: i64) -> BigRational {
    if k >= 0 {
        num_traits::pow(x.clone(), k as usize)
    } else {
        num_traits::pow(x.recip(), (-k) as usize)
    }
}

pub fn to_f64(x: &BigRational) -> f64 {
    // scale so both parts fit a double before dividing
    let n = x.numer();
    let d = x.denom();
    let shift = (n.bits() as i64).max(d.bits() as i64) - 900;
    if shift > 0 {
        let s = shift as u32;
        let n = (n >> s).to_f64().unwrap();
        let d = (d >> s).to_f64().unwrap();
        n / d
    } else {
        n.to_f64().unwrap() / d.to_f64().unwrap()
    }
}

/// Exact complex number with rational parts.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussQ {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussQ {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn zero() -> Self {
        Self::real(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::real(BigRational::one())
    }

    /// `i^k`
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::new(BigRational::zero(), BigRational::one()),
            2 => Self::real(-BigRational::one()),
            _ => Self::new(BigRational::zero(), -BigRational::one()),
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    pub fn recip(&self) -> Self {
        let n = &self.re * &self.re + &self.im * &self.im;
        Self::new(&self.re / &n, -&self.im / &n)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.recip() } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..k.unsigned_abs() {
            out = out * base.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }

    pub fn abs_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn max_abs_part(&self) -> BigRational {
        self.re.abs().max(self.im.abs())
    }
}

impl Add for GaussQ {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for GaussQ {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for GaussQ {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for GaussQ {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

/// `(a;q)_n`
pub fn poch(a: &BigRational, q: &BigRational, n: usize) -> BigRational {
    let mut p = BigRational::one();
    let mut qk = BigRational::one();
    for _ in 0..n {
        p *= BigRational::one() - a * &qk;
        qk *= q;
    }
    p
}

/// Exact inputs for which every scaled point is a Gaussian rational:
/// integer `alpha` and `tau`, `theta` a multiple of 1/4.
#[derive(Clone, Debug)]
pub struct ExactSetup {
    pub q: BigRational,
    pub alpha: i64,
    pub z: GaussQ,
    pub tau: i64,
    /// `theta = theta_quarters / 4`
    pub theta_quarters: i64,
}

impl ExactSetup {
    fn a(&self) -> BigRational {
        rat_pow(&self.q, self.alpha + 1)
    }

    /// `e^{-2 pi i k theta}` for integer `k`
    fn turn(&self, k: i64) -> GaussQ {
        GaussQ::i_pow(-k * self.theta_quarters)
    }

    /// `x_n = z q^{-n (tau + 2)} e^{-2 pi i n theta}`
    pub fn scale_point(&self, n: usize) -> GaussQ {
        let n = n as i64;
        self.z.scale(&rat_pow(&self.q, -n * (self.tau + 2))) * self.turn(n)
    }

    /// `(q;q)_j` and `(q^{alpha+1};q)_j` for `j <= n`.
    fn tables(&self, n: usize) -> (Vec<BigRational>, Vec<BigRational>) {
        let q = &self.q;
        let a = self.a();
        let mut qq = vec![BigRational::one()];
        let mut aq = vec![BigRational::one()];
        let mut qk = BigRational::one();
        for j in 0..n {
            let next_q = &qq[j] * (BigRational::one() - q * &qk);
            let next_a = &aq[j] * (BigRational::one() - &a * &qk);
            qq.push(next_q);
            aq.push(next_a);
            qk *= q;
        }
        (qq, aq)
    }

    /// `L_n^{(alpha)}(x; q)` term by term.
    pub fn laguerre(&self, n: usize, x: &GaussQ) -> GaussQ {
        let q = &self.q;
        let (qq, aq) = self.tables(n);
        let mx = -x.clone();
        let mut xp = GaussQ::one();
        let mut acc = GaussQ::zero();
        for k in 0..=n {
            let ki = k as i64;
            let c = rat_pow(q, ki * ki + self.alpha * ki) / (&aq[k] * &qq[k] * &qq[n - k]);
            acc = acc + xp.scale(&c);
            xp = xp * mx.clone();
        }
        acc.scale(&aq[n])
    }

    /// `(-z q^alpha)^n q^{n^2 (1 - s)}`
    pub fn normalizer(&self, n: usize) -> GaussQ {
        let n = n as i64;
        let zqa = self.z.scale(&rat_pow(&self.q, self.alpha));
        (-zqa).pow(n).scale(&rat_pow(&self.q, -n * n * (1 + self.tau))) * self.turn(n * n)
    }

    /// The reversed normalized sum.
    pub fn reversed_sum(&self, n: usize) -> GaussQ {
        let q = &self.q;
        let (qq, aq) = self.tables(n);
        let ni = n as i64;
        let zqa = self.z.scale(&rat_pow(q, self.alpha));
        let x = -(zqa.recip().scale(&rat_pow(q, self.tau * ni)) * self.turn(-ni));
        let mut xp = GaussQ::one();
        let mut acc = GaussQ::zero();
        for k in 0..=n {
            let ki = k as i64;
            let c = rat_pow(q, ki * ki) / (&qq[k] * &qq[n - k] * &aq[n - k]);
            acc = acc + xp.scale(&c);
            xp = xp * x.clone();
        }
        acc.scale(&aq[n])
    }

    /// The split reconstruction at `m = -tau n` (so `c_n = 0`), with the
    /// common factor `(q;q)_inf^2` cancelled between prefactor and sums.
    pub fn split_reconstruction(&self, n: usize) -> GaussQ {
        assert!(self.tau < 0);
        let q = &self.q;
        let (qq, aq) = self.tables(n);
        let ni = n as i64;
        let m = -self.tau * ni;
        let h = m.div_euclid(2);
        let chi = m - 2 * h;
        let zqa = self.z.scale(&rat_pow(q, self.alpha));
        // e^{-2 pi i d_n} with d_n = {n theta}
        let w = -(zqa.scale(&rat_pow(q, chi)) * self.turn(ni));
        let winv = w.recip();
        let hu = h as usize;
        let mut acc = GaussQ::zero();
        let mut wp = GaussQ::one();
        for k in 0..=hu {
            let j = n - hu + k;
            let e = &aq[n] / (&qq[hu - k] * &qq[j] * &aq[j]);
            acc = acc + wp.scale(&(rat_pow(q, (k * k) as i64) * e));
            wp = wp * w.clone();
        }
        let mut wp = winv.clone();
        for k in 1..=(n - hu) {
            let j = n - hu - k;
            let f = &aq[n] / (&qq[hu + k] * &qq[j] * &aq[j]);
            acc = acc + wp.scale(&(rat_pow(q, (k * k) as i64) * f));
            wp = wp * winv.clone();
        }
        let pre = (-(zqa * self.turn(ni))).pow(-h).scale(&rat_pow(q, h * (self.tau * ni + h)));
        acc * pre
    }
}

/// `|a - b| <= tol |b|` for complex numbers.
pub fn rel_close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm()
}
