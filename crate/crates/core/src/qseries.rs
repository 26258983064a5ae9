//! q-Pochhammer symbols, q-binomials, the Ramanujan function `A_q`, its
//! companion `B_q`, the theta function and the two Pochhammer remainders.
//!
//! Every infinite series or product stops on a geometric-majorant tail test:
//! once the ratio of consecutive terms is below one and non-increasing, the
//! remaining tail is at most `|t_k| r / (1 - r)`. The term cap in
//! [`SeriesControl`] only guards against inputs where that never happens.

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::numerics::{sum_rescaled, LogPolarComplex};

pub const DEFAULT_TOL: f64 = 1e-15;
pub const DEFAULT_MAX_TERMS: usize = 10_000;

/// Truncation settings shared by all series and products.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesControl {
    /// Relative truncation tolerance.
    pub tol: f64,
    /// Hard cap on the number of terms or factors.
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_terms: DEFAULT_MAX_TERMS,
        }
    }
}

/// The fixed problem data: `0 < q < 1`, `alpha > -1` and a nonzero `z`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QContext {
    pub q: f64,
    pub alpha: f64,
    pub z: Complex64,
    pub control: SeriesControl,
}

impl QContext {
    pub fn new(q: f64, alpha: f64, z: Complex64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return domain(format!("q must lie in (0, 1), got {q}"));
        }
        if !(alpha > -1.0) || !alpha.is_finite() {
            return domain(format!("alpha must exceed -1, got {alpha}"));
        }
        if !(z.re.is_finite() && z.im.is_finite()) || (z.re == 0.0 && z.im == 0.0) {
            return domain(format!("z must be a nonzero finite complex number, got {z}"));
        }
        Ok(Self {
            q,
            alpha,
            z,
            control: SeriesControl::default(),
        })
    }

    pub fn with_control(mut self, control: SeriesControl) -> Self {
        self.control = control;
        self
    }

    /// `q^alpha`
    pub fn q_alpha(&self) -> f64 {
        self.q.powf(self.alpha)
    }

    /// `|z| q^alpha`
    pub fn z_q_alpha_abs(&self) -> f64 {
        self.z.norm() * self.q_alpha()
    }
}

/// Length of a Pochhammer product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PochhammerOrder {
    Finite(i64),
    Infinite,
}

fn check_nome(q: f64) -> Result<()> {
    if !(q.abs() < 1.0) {
        return domain(format!("infinite q-products need |q| < 1, got {q}"));
    }
    Ok(())
}

impl SeriesControl {
    /// Sum `t_0, t_1, ...` where `ratio(k) = t_{k+1} / t_k`. The caller
    /// guarantees the ratio magnitudes are non-increasing in `k`.
    fn series_terms<F>(
        &self,
        what: &'static str,
        first: LogPolarComplex,
        mut ratio: F,
    ) -> Result<Vec<LogPolarComplex>>
    where
        F: FnMut(usize) -> LogPolarComplex,
    {
        let mut terms = vec![first];
        if first.is_zero() {
            return Ok(terms);
        }
        // running sum in units of exp(anchor)
        let mut anchor = first.log_mag;
        let mut partial = Complex64::new(0.0, 0.0);
        let mut max_log = first.log_mag;
        let add = |t: LogPolarComplex, anchor: &mut f64, partial: &mut Complex64| {
            if t.log_mag - *anchor > 600.0 {
                *partial *= (*anchor - t.log_mag).exp();
                *anchor = t.log_mag;
            }
            *partial += t.scale_log(-*anchor).to_complex();
        };
        add(first, &mut anchor, &mut partial);

        let mut k = 0usize;
        loop {
            let r = ratio(k);
            let last = *terms.last().unwrap();
            let rmag = r.abs();
            if rmag < 1.0 {
                let log_tail = last.log_mag + rmag.ln() - (-rmag).ln_1p();
                let log_partial = partial.norm().ln() + anchor;
                let floor = max_log + f64::EPSILON.ln();
                if log_tail <= self.tol.ln() + log_partial.max(floor) {
                    break;
                }
            }
            let next = last * r;
            if next.is_zero() {
                break;
            }
            max_log = max_log.max(next.log_mag);
            add(next, &mut anchor, &mut partial);
            terms.push(next);
            k += 1;
            if k >= self.max_terms {
                return Err(Error::Convergence {
                    what,
                    terms: self.max_terms,
                });
            }
        }
        Ok(terms)
    }

    fn series<F>(&self, what: &'static str, first: LogPolarComplex, ratio: F) -> Result<Complex64>
    where
        F: FnMut(usize) -> LogPolarComplex,
    {
        let terms = self.series_terms(what, first, ratio)?;
        Ok(sum_rescaled(&terms).to_complex())
    }

    /// `(a; q)_n` for finite `n`, or `(a; q)_inf`.
    pub fn pochhammer(&self, a: Complex64, q: f64, order: PochhammerOrder) -> Result<Complex64> {
        match order {
            PochhammerOrder::Finite(n) => {
                if n < 0 {
                    return domain(format!("Pochhammer length must be non-negative, got {n}"));
                }
                let mut p = Complex64::new(1.0, 0.0);
                let mut qk = 1.0;
                for _ in 0..n {
                    p *= Complex64::new(1.0, 0.0) - a * qk;
                    qk *= q;
                }
                Ok(p)
            }
            PochhammerOrder::Infinite => {
                check_nome(q)?;
                let a_abs = a.norm();
                let stop = self.tol.ln_1p() * (1.0 - q.abs());
                let mut p = Complex64::new(1.0, 0.0);
                let mut qk = 1.0f64;
                for _ in 0..self.max_terms {
                    // |prod_{j>=k}(1 - a q^j) - 1| <= exp(|a| |q|^k / (1 - |q|)) - 1
                    if a_abs * qk.abs() <= stop {
                        return Ok(p);
                    }
                    p *= Complex64::new(1.0, 0.0) - a * qk;
                    if p.re == 0.0 && p.im == 0.0 {
                        return Ok(p);
                    }
                    qk *= q;
                }
                Err(Error::Convergence {
                    what: "infinite q-Pochhammer product",
                    terms: self.max_terms,
                })
            }
        }
    }

    /// Real `(a; q)_inf` for real `a`.
    pub fn pochhammer_inf_real(&self, a: f64, q: f64) -> Result<f64> {
        Ok(self
            .pochhammer(Complex64::new(a, 0.0), q, PochhammerOrder::Infinite)?
            .re)
    }

    /// `(z; q)_inf` as a product and as the Euler series
    /// `sum q^{k(k-1)/2} (-z)^k / (q;q)_k`.
    pub fn euler_product_series_check(&self, z: Complex64, q: f64) -> Result<(Complex64, Complex64)> {
        check_nome(q)?;
        let lhs = self.pochhammer(z, q, PochhammerOrder::Infinite)?;
        let step = LogPolarComplex::from_complex(-z);
        let log_q = q.ln();
        let rhs = self.series("Euler series", LogPolarComplex::ONE, |k| {
            step.scale_log(k as f64 * log_q - (-q.powi(k as i32 + 1)).ln_1p())
        })?;
        Ok((lhs, rhs))
    }

    fn qk2_series(&self, what: &'static str, q: f64, w: Complex64) -> Result<Complex64> {
        check_nome(q)?;
        if !(q > 0.0) {
            return domain(format!("q must be positive, got {q}"));
        }
        let step = LogPolarComplex::from_complex(w);
        let log_q = q.ln();
        self.series(what, LogPolarComplex::ONE, |k| {
            step.scale_log((2 * k + 1) as f64 * log_q - (-q.powi(k as i32 + 1)).ln_1p())
        })
    }

    /// `A_q(z) = sum q^{k^2} (-z)^k / (q;q)_k`
    pub fn ramanujan_a(&self, q: f64, z: Complex64) -> Result<Complex64> {
        self.qk2_series("Ramanujan A_q series", q, -z)
    }

    /// `B_q(z) = sum q^{k^2} z^k / (q;q)_k`
    pub fn b_function(&self, q: f64, z: Complex64) -> Result<Complex64> {
        self.qk2_series("B_q series", q, z)
    }

    /// Termwise derivative `A_q'(z) = sum_{k>=1} k q^{k^2} (-1)^k z^{k-1} / (q;q)_k`.
    pub fn ramanujan_a_derivative(&self, q: f64, z: Complex64) -> Result<Complex64> {
        check_nome(q)?;
        let log_q = q.ln();
        let first = LogPolarComplex::from_real(-q / (1.0 - q));
        let step = LogPolarComplex::from_complex(-z);
        self.series("A_q derivative series", first, |j| {
            // t_{k+1}/t_k with k = j + 1
            let k = (j + 1) as f64;
            step.scale_log(
                ((k + 1.0) / k).ln() + (2.0 * k + 1.0) * log_q
                    - (-q.powi(j as i32 + 2)).ln_1p(),
            )
        })
    }

    /// `Theta(z|q) = sum_{n in Z} q^{n^2} z^n`
    pub fn theta(&self, z: Complex64, q: f64) -> Result<Complex64> {
        let terms = self.theta_terms(z, q)?;
        Ok(sum_rescaled(&terms).to_complex())
    }

    pub(crate) fn theta_terms(&self, z: Complex64, q: f64) -> Result<Vec<LogPolarComplex>> {
        if z.re == 0.0 && z.im == 0.0 {
            return domain("theta function is undefined at z = 0");
        }
        if !(q > 0.0 && q < 1.0) {
            return domain(format!("theta function needs 0 < q < 1, got {q}"));
        }
        let log_q = q.ln();
        let zl = LogPolarComplex::from_complex(z);
        let zinv = zl.recip()?;
        let mut terms = self.series_terms("theta series (n >= 0)", LogPolarComplex::ONE, |n| {
            zl.scale_log((2 * n + 1) as f64 * log_q)
        })?;
        let neg = self.series_terms("theta series (n < 0)", zinv.scale_log(log_q), |j| {
            zinv.scale_log((2 * j + 3) as f64 * log_q)
        })?;
        terms.extend(neg);
        Ok(terms)
    }

    /// `(q^2, -qz, -q/z; q^2)_inf`
    pub fn jacobi_triple_product(&self, z: Complex64, q: f64) -> Result<Complex64> {
        if z.re == 0.0 && z.im == 0.0 {
            return domain("triple product is undefined at z = 0");
        }
        let q2 = q * q;
        let a = self.pochhammer(Complex64::new(q2, 0.0), q2, PochhammerOrder::Infinite)?;
        let b = self.pochhammer(-z * q, q2, PochhammerOrder::Infinite)?;
        let c = self.pochhammer(-Complex64::new(q, 0.0) / z, q2, PochhammerOrder::Infinite)?;
        Ok(a * b * c)
    }

    /// `R_1(a; n) = (a q^n; q)_inf - 1` and its majorant
    /// `(-a q^2; q)_inf a q^n / (1 - q)`.
    pub fn remainder_r1(&self, a: f64, n: i64, q: f64) -> Result<(f64, f64)> {
        if !(a > 0.0) {
            return domain(format!("R_1 needs a > 0, got {a}"));
        }
        check_remainder_args(n, q)?;
        let x = a * q.powi(n as i32);
        let log_q = q.ln();
        // Euler series without its k = 0 term
        let first = LogPolarComplex::from_real(-x / (1.0 - q));
        let step = LogPolarComplex::from_real(-x);
        let value = self
            .series("R_1 series", first, |j| {
                let k = j + 1;
                step.scale_log(k as f64 * log_q - (-q.powi(k as i32 + 1)).ln_1p())
            })?
            .re;
        let bound = self.pochhammer_inf_real(-a * q * q, q)? * x / (1.0 - q);
        Ok((value, bound))
    }

    /// `R_2(a; n) = 1 / (a q^n; q)_inf - 1` and its majorant
    /// `a q^n / ((1 - q) (a q; q)_inf)`; needs `0 < a q < 1`.
    pub fn remainder_r2(&self, a: f64, n: i64, q: f64) -> Result<(f64, f64)> {
        check_remainder_args(n, q)?;
        let aq = a * q;
        if !(aq > 0.0 && aq < 1.0) {
            return domain(format!("R_2 needs 0 < a q < 1, got a q = {aq}"));
        }
        let x = a * q.powi(n as i32);
        // 1/(x;q)_inf - 1 = sum_{k>=1} x^k / (q;q)_k, x <= a q < 1
        let first = LogPolarComplex::from_real(x / (1.0 - q));
        let step = LogPolarComplex::from_real(x);
        let value = self
            .series("R_2 series", first, |j| {
                step.scale_log(-(-q.powi(j as i32 + 2)).ln_1p())
            })?
            .re;
        let bound = x / ((1.0 - q) * self.pochhammer_inf_real(aq, q)?);
        Ok((value, bound))
    }
}

fn check_remainder_args(n: i64, q: f64) -> Result<()> {
    if n < 1 {
        return domain(format!("remainder index must be a positive integer, got {n}"));
    }
    if !(q > 0.0 && q < 1.0) {
        return domain(format!("q must lie in (0, 1), got {q}"));
    }
    Ok(())
}

/// Gaussian binomial `(q;q)_n / ((q;q)_k (q;q)_{n-k})`.
pub fn q_binomial(n: i64, k: i64, q: f64) -> Result<f64> {
    if k < 0 || k > n {
        return domain(format!("q-binomial needs 0 <= k <= n, got n = {n}, k = {k}"));
    }
    if q == 1.0 {
        return domain("q-binomial is singular at q = 1");
    }
    let k = k.min(n - k);
    let mut v = 1.0;
    for i in 1..=k {
        v *= (1.0 - q.powi((n - k + i) as i32)) / (1.0 - q.powi(i as i32));
    }
    Ok(v)
}

pub fn pochhammer(a: Complex64, q: f64, order: PochhammerOrder) -> Result<Complex64> {
    SeriesControl::default().pochhammer(a, q, order)
}

pub fn euler_product_series_check(z: Complex64, q: f64) -> Result<(Complex64, Complex64)> {
    SeriesControl::default().euler_product_series_check(z, q)
}

pub fn ramanujan_a(q: f64, z: Complex64) -> Result<Complex64> {
    SeriesControl::default().ramanujan_a(q, z)
}

pub fn ramanujan_a_derivative(q: f64, z: Complex64) -> Result<Complex64> {
    SeriesControl::default().ramanujan_a_derivative(q, z)
}

pub fn b_function(q: f64, z: Complex64) -> Result<Complex64> {
    SeriesControl::default().b_function(q, z)
}

pub fn theta(z: Complex64, q: f64) -> Result<Complex64> {
    SeriesControl::default().theta(z, q)
}

pub fn jacobi_triple_product(z: Complex64, q: f64) -> Result<Complex64> {
    SeriesControl::default().jacobi_triple_product(z, q)
}

pub fn remainder_r1(a: f64, n: i64, q: f64) -> Result<(f64, f64)> {
    SeriesControl::default().remainder_r1(a, n, q)
}

pub fn remainder_r2(a: f64, n: i64, q: f64) -> Result<(f64, f64)> {
    SeriesControl::default().remainder_r2(a, n, q)
}
