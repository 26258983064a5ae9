//! Overflow-safe complex values and deterministic compensated summation.
//!
//! Most quantities in this crate (for instance `q^{n^2(1-s)}` for `n` in the
//! thousands) are far outside the double range, while the sums built from
//! them only ever span a few dozen decades once the largest term is factored
//! out. [`LogPolarComplex`] carries the magnitude as a logarithm and
//! [`sum_rescaled`] turns a list of such terms back into an ordinary complex
//! number times `exp(rescale_log)`.

use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::ops::{Div, Mul, Neg};

use num_complex::Complex64;

use crate::error::{domain, Result};

/// Reduce an angle into `(-pi, pi]`.
pub fn normalize_phase(phase: f64) -> f64 {
    if !phase.is_finite() {
        return phase;
    }
    let mut r = phase % TAU;
    if r > PI {
        r -= TAU;
    } else if r <= -PI {
        r += TAU;
    }
    r
}

/// `e^{i phase}`, exact at the quarter turns.
pub fn cis(phase: f64) -> Complex64 {
    if phase == 0.0 {
        Complex64::new(1.0, 0.0)
    } else if phase == PI || phase == -PI {
        Complex64::new(-1.0, 0.0)
    } else if phase == FRAC_PI_2 {
        Complex64::new(0.0, 1.0)
    } else if phase == -FRAC_PI_2 {
        Complex64::new(0.0, -1.0)
    } else {
        let (s, c) = phase.sin_cos();
        Complex64::new(c, s)
    }
}

/// A complex number stored as `exp(log_mag) * e^{i phase}`.
///
/// Zero is encoded as `log_mag = -inf`, `phase = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogPolarComplex {
    pub log_mag: f64,
    pub phase: f64,
}

impl LogPolarComplex {
    pub const ZERO: Self = Self {
        log_mag: f64::NEG_INFINITY,
        phase: 0.0,
    };
    pub const ONE: Self = Self {
        log_mag: 0.0,
        phase: 0.0,
    };

    pub fn new(log_mag: f64, phase: f64) -> Self {
        if log_mag == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        Self {
            log_mag,
            phase: normalize_phase(phase),
        }
    }

    /// A positive real number given by its logarithm.
    pub fn from_log(log_mag: f64) -> Self {
        Self::new(log_mag, 0.0)
    }

    pub fn from_real(x: f64) -> Self {
        Self::from_complex(Complex64::new(x, 0.0))
    }

    pub fn from_complex(w: Complex64) -> Self {
        if w.re == 0.0 && w.im == 0.0 {
            return Self::ZERO;
        }
        Self::new(w.norm().ln(), w.arg())
    }

    /// Convert back to an ordinary complex number. Overflows to infinity (or
    /// underflows to zero) outside the double range.
    pub fn to_complex(self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        cis(self.phase) * self.log_mag.exp()
    }

    pub fn is_zero(self) -> bool {
        self.log_mag == f64::NEG_INFINITY
    }

    pub fn abs(self) -> f64 {
        self.log_mag.exp()
    }

    pub fn log10_mag(self) -> f64 {
        self.log_mag / std::f64::consts::LN_10
    }

    /// Multiply by `exp(delta)`.
    pub fn scale_log(self, delta: f64) -> Self {
        Self::new(self.log_mag + delta, self.phase)
    }

    pub fn conj(self) -> Self {
        Self::new(self.log_mag, -self.phase)
    }

    pub fn recip(self) -> Result<Self> {
        if self.is_zero() {
            return domain("reciprocal of zero");
        }
        Ok(Self::new(-self.log_mag, -self.phase))
    }

    /// Integer power; the result has no branch ambiguity.
    pub fn pow_int(self, k: i64) -> Result<Self> {
        if k == 0 {
            return Ok(Self::ONE);
        }
        if self.is_zero() {
            if k < 0 {
                return domain("zero raised to a negative power");
            }
            return Ok(Self::ZERO);
        }
        let kf = k as f64;
        Ok(Self::new(self.log_mag * kf, self.phase * kf))
    }
}

impl Mul for LogPolarComplex {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::ZERO;
        }
        Self::new(self.log_mag + rhs.log_mag, self.phase + rhs.phase)
    }
}

/// Division by zero yields a non-finite magnitude; use [`LogPolarComplex::recip`]
/// where that has to be reported as an error.
impl Div for LogPolarComplex {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        if self.is_zero() {
            return Self::ZERO;
        }
        Self::new(self.log_mag - rhs.log_mag, self.phase - rhs.phase)
    }
}

impl Neg for LogPolarComplex {
    type Output = Self;
    fn neg(self) -> Self {
        if self.is_zero() {
            return self;
        }
        Self::new(self.log_mag, self.phase + PI)
    }
}

impl From<Complex64> for LogPolarComplex {
    fn from(w: Complex64) -> Self {
        Self::from_complex(w)
    }
}

/// `lp_from_complex`
pub fn lp_from_complex(w: Complex64) -> LogPolarComplex {
    LogPolarComplex::from_complex(w)
}

/// `lp_pow_int`
pub fn lp_pow_int(b: LogPolarComplex, k: i64) -> Result<LogPolarComplex> {
    b.pow_int(k)
}

/// Error-free transformation: `a + b = s + err` exactly.
#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// `exp(x + iy) - 1` without cancellation for small arguments.
pub fn expm1_complex(x: f64, y: f64) -> Complex64 {
    let half = (0.5 * y).sin();
    Complex64::new(x.exp_m1() * y.cos() - 2.0 * half * half, x.exp() * y.sin())
}

/// Running compensated sum of real numbers.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let (s, e) = two_sum(self.sum, x);
        self.sum = s;
        self.comp += e;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Result of [`sum_rescaled`]: the sum equals `value * exp(rescale_log)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SummationResult {
    pub value: Complex64,
    pub rescale_log: f64,
    pub term_count: usize,
    pub max_term_log: f64,
}

impl SummationResult {
    pub fn to_log_polar(&self) -> LogPolarComplex {
        LogPolarComplex::from_complex(self.value).scale_log(self.rescale_log)
    }

    pub fn to_complex(&self) -> Complex64 {
        self.value * self.rescale_log.exp()
    }
}

/// Sum log-polar terms without overflow.
///
/// The largest log-magnitude is factored out, the rescaled terms are added in
/// descending magnitude (ties by input position) with compensated
/// accumulation of the real and imaginary parts.
pub fn sum_rescaled(terms: &[LogPolarComplex]) -> SummationResult {
    let max_log = terms
        .iter()
        .map(|t| t.log_mag)
        .fold(f64::NEG_INFINITY, f64::max);
    if max_log == f64::NEG_INFINITY {
        return SummationResult {
            value: Complex64::new(0.0, 0.0),
            rescale_log: 0.0,
            term_count: terms.len(),
            max_term_log: f64::NEG_INFINITY,
        };
    }

    let mut order: Vec<usize> = (0..terms.len()).collect();
    // stable sort keeps input order among equal magnitudes
    order.sort_by(|&a, &b| {
        terms[b]
            .log_mag
            .partial_cmp(&terms[a].log_mag)
            .unwrap_or(Ordering::Equal)
    });

    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    for i in order {
        let t = terms[i];
        if t.is_zero() {
            continue;
        }
        let c = cis(t.phase) * (t.log_mag - max_log).exp();
        re.add(c.re);
        im.add(c.im);
    }
    SummationResult {
        value: Complex64::new(re.value(), im.value()),
        rescale_log: max_log,
        term_count: terms.len(),
        max_term_log: max_log,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(log_mag: f64, phase: f64) -> LogPolarComplex {
        LogPolarComplex::new(log_mag, phase)
    }

    #[test]
    fn from_complex_examples() {
        assert_eq!(lp_from_complex(Complex64::new(1.0, 0.0)), lp(0.0, 0.0));
        let m2 = lp_from_complex(Complex64::new(-2.0, 0.0));
        assert!((m2.log_mag - 2f64.ln()).abs() < 1e-15);
        assert_eq!(m2.phase, PI);
        // negative zero imaginary part must not produce phase -pi
        let m2n = lp_from_complex(Complex64::new(-2.0, -0.0));
        assert_eq!(m2n.phase, PI);
        let z = lp_from_complex(Complex64::new(0.0, 0.0));
        assert_eq!(z.log_mag, f64::NEG_INFINITY);
        assert_eq!(z.phase, 0.0);
    }

    #[test]
    fn expm1_complex_small_arguments() {
        let w = expm1_complex(1e-12, 0.0);
        assert!((w.re - (1e-12 + 5e-25)).abs() < 1e-36 && w.im == 0.0);
        let w = expm1_complex(0.0, 1e-10);
        assert!((w.im - 1e-10).abs() < 1e-25 && (w.re + 5e-21).abs() < 1e-35);
        let direct = Complex64::new(0.3, -1.2).exp() - 1.0;
        assert!((expm1_complex(0.3, -1.2) - direct).norm() < 1e-15);
    }

    #[test]
    fn round_trip_relative_accuracy() {
        for &(r, a) in &[(1e-300, 0.3), (1e300, -2.0), (3.5, 3.0), (1e-5, -0.01)] {
            let w = Complex64::from_polar(r, a);
            let back = lp_from_complex(w).to_complex();
            // exp amplifies the absolute error of the logarithm
            let tol = 4.0 * f64::EPSILON * (1.0 + r.ln().abs());
            assert!((back - w).norm() <= tol * w.norm(), "{w} -> {back}");
        }
    }

    #[test]
    fn pow_int_examples() {
        assert_eq!(lp_pow_int(lp(0.0, PI), 2).unwrap(), lp(0.0, 0.0));
        let r = lp_pow_int(lp(2f64.ln(), 0.0), -3).unwrap();
        assert!((r.log_mag + 3.0 * 2f64.ln()).abs() < 1e-15);
        assert_eq!(r.phase, 0.0);
        // direct complex cube of e^{2 pi i/3} is 1
        let b = lp(0.0, 2.0 * PI / 3.0);
        let cube = lp_pow_int(b, 3).unwrap();
        let oracle = b.to_complex().powi(3);
        assert!((cube.to_complex() - oracle).norm() < 1e-14);
        assert!(cube.phase.abs() < 1e-14);
    }

    #[test]
    fn pow_int_zero_base() {
        assert!(lp_pow_int(LogPolarComplex::ZERO, -1).is_err());
        assert!(lp_pow_int(LogPolarComplex::ZERO, 2).unwrap().is_zero());
        assert_eq!(lp_pow_int(LogPolarComplex::ZERO, 0).unwrap(), LogPolarComplex::ONE);
    }

    #[test]
    fn phase_stays_normalized() {
        let a = lp(1.0, 3.0);
        let p = a * a * a;
        assert!(p.phase > -PI && p.phase <= PI);
        assert_eq!(normalize_phase(-PI), PI);
        assert_eq!(normalize_phase(PI), PI);
    }

    #[test]
    fn sum_examples() {
        let r = sum_rescaled(&[LogPolarComplex::ONE, lp(0.0, PI)]);
        assert_eq!(r.value, Complex64::new(0.0, 0.0));
        assert_eq!(r.rescale_log, 0.0);

        let big = 1e200f64.ln();
        let r = sum_rescaled(&[lp(big, 0.0), lp(big, PI)]);
        assert!(r.value.is_finite());
        assert_eq!(r.value.norm(), 0.0);

        let r = sum_rescaled(&[
            LogPolarComplex::from_real(1.0),
            LogPolarComplex::from_real(0.5),
            LogPolarComplex::from_real(0.25),
        ]);
        assert!((r.to_complex().re - 1.75).abs() < 1e-15);
        assert_eq!(r.term_count, 3);
    }

    #[test]
    fn empty_and_zero_sums() {
        let r = sum_rescaled(&[]);
        assert_eq!(r.to_complex(), Complex64::new(0.0, 0.0));
        let r = sum_rescaled(&[LogPolarComplex::ZERO, LogPolarComplex::ZERO]);
        assert!(r.to_log_polar().is_zero());
    }

    #[test]
    fn huge_terms_stay_finite() {
        let terms: Vec<_> = (0..50).map(|k| lp(1000.0 + k as f64, 0.1 * k as f64)).collect();
        let r = sum_rescaled(&terms);
        assert!(r.value.is_finite());
        assert!((r.max_term_log - 1049.0).abs() < 1e-12);
    }
}
