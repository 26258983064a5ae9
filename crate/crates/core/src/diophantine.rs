//! Floor and fractional parts, the principal character mod 2, fractional-part
//! orbits, continued-fraction convergents and Diophantine witness scans.
//!
//! Whether a parameter is rational is a declared property, never guessed
//! from a double: [`DeclaredReal`] carries either an exact rational, an exact
//! quadratic surd, a truncated Liouville constant declared irrational, or a
//! bare decimal with an explicit rationality flag. Surds are handled with
//! integer square roots so `floor(n theta)` is exact and `n theta - m` is
//! computed without cancellation.

use std::cmp::Ordering;
use std::fmt;
use std::io::{self, Write};

use num_integer::{Integer, Roots};
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{domain, Result};

/// `x = floor + frac` with `frac` in `[0, 1)`.
pub fn floor_frac(x: f64) -> (i64, f64) {
    let fl = x.floor();
    let mut frac = x - fl;
    if frac >= 1.0 {
        // x is a tiny negative number and x - floor(x) rounded up to 1
        frac = 1.0 - f64::EPSILON / 2.0;
    }
    (fl as i64, frac)
}

/// Principal character modulo 2: `n - 2 floor(n/2)`.
pub fn chi(n: i64) -> i64 {
    n.rem_euclid(2)
}

/// `(a + b sqrt(d)) / c` with `c > 0`, `d` not a perfect square, `b != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadraticSurd {
    pub a: i64,
    pub b: i64,
    pub d: i64,
    pub c: i64,
}

impl QuadraticSurd {
    pub fn new(a: i64, b: i64, d: i64, c: i64) -> Result<Self> {
        if d < 2 || (d as i128).sqrt().pow(2) == d as i128 {
            return domain(format!("sqrt({d}) is not irrational"));
        }
        if b == 0 || c == 0 {
            return domain("surd needs b != 0 and c != 0");
        }
        let (a, b, c) = if c < 0 { (-a, -b, -c) } else { (a, b, c) };
        Ok(Self { a, b, d, c })
    }

    pub fn sqrt(d: i64) -> Result<Self> {
        Self::new(0, 1, d, 1)
    }

    pub fn value(&self) -> f64 {
        (self.a as f64 + self.b as f64 * (self.d as f64).sqrt()) / self.c as f64
    }

    pub fn neg(&self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
            ..*self
        }
    }

    /// Sign of `u + v sqrt(d)`, exactly.
    fn sign_of(u: i128, v: i128, d: i128) -> Ordering {
        let su = u.cmp(&0);
        let sv = v.cmp(&0);
        if su == sv || sv == Ordering::Equal {
            return su;
        }
        if su == Ordering::Equal {
            return sv;
        }
        // opposite signs: compare u^2 with v^2 d
        match (u * u).cmp(&(v * v * d)) {
            Ordering::Greater => su,
            Ordering::Less => sv,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// `u + v sqrt(d)` in floating point without cancellation.
    fn eval(u: i128, v: i128, d: i128) -> f64 {
        let root = (d as f64).sqrt();
        if u == 0 || v == 0 || (u > 0) == (v > 0) {
            u as f64 + v as f64 * root
        } else {
            (u * u - v * v * d) as f64 / (u as f64 - v as f64 * root)
        }
    }

    /// `floor(k * self)`, exactly.
    pub fn floor_mul(&self, k: i64) -> i64 {
        let kb = k as i128 * self.b as i128;
        let d = self.d as i128;
        // floor(kb sqrt d); never an integer unless kb = 0
        let f = if kb >= 0 {
            (kb * kb * d).sqrt()
        } else {
            -(kb * kb * d).sqrt() - 1
        };
        let num = k as i128 * self.a as i128 + f;
        num.div_euclid(self.c as i128) as i64
    }

    /// `k * self - m` without cancellation.
    pub fn offset(&self, k: i64, m: i64) -> f64 {
        let u = k as i128 * self.a as i128 - m as i128 * self.c as i128;
        let v = k as i128 * self.b as i128;
        Self::eval(u, v, self.d as i128) / self.c as f64
    }

    pub fn cmp_int(&self, k: i64) -> Ordering {
        let u = self.a as i128 - k as i128 * self.c as i128;
        Self::sign_of(u, self.b as i128, self.d as i128)
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = match self.b {
            1 => format!("sqrt{}", self.d),
            -1 => format!("-sqrt{}", self.d),
            b => format!("{b}*sqrt{}", self.d),
        };
        match (self.a, self.c) {
            (0, 1) => write!(f, "{root}"),
            (0, c) => write!(f, "{root}/{c}"),
            (a, 1) => write!(f, "{a}{}{}", if self.b > 0 { "+" } else { "" }, root),
            (a, c) => write!(f, "({a}{}{})/{c}", if self.b > 0 { "+" } else { "" }, root),
        }
    }
}

/// A real parameter together with its declared arithmetic nature.
#[derive(Clone, Debug, PartialEq)]
pub enum DeclaredReal {
    Rational(Ratio<i128>),
    Surd(QuadraticSurd),
    /// `sum_{k=1}^{depth} 10^{-k!}`, declared irrational.
    Liouville { depth: u32, value: Ratio<i128> },
    /// A decimal whose rationality the caller asserted.
    Decimal { value: f64, rational: bool },
}

impl DeclaredReal {
    pub fn rational(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return domain("zero denominator");
        }
        Ok(Self::Rational(Ratio::new(num as i128, den as i128)))
    }

    pub fn integer(k: i64) -> Self {
        Self::Rational(Ratio::from_integer(k as i128))
    }

    pub fn sqrt(d: i64) -> Result<Self> {
        Ok(Self::Surd(QuadraticSurd::sqrt(d)?))
    }

    pub fn golden_ratio() -> Self {
        Self::Surd(QuadraticSurd {
            a: 1,
            b: 1,
            d: 5,
            c: 2,
        })
    }

    /// Truncated Liouville constant; depths above 4 do not fit the exact
    /// 128-bit representation.
    pub fn liouville(depth: u32) -> Result<Self> {
        if !(1..=4).contains(&depth) {
            return domain(format!("Liouville truncation depth must be 1..=4, got {depth}"));
        }
        let fact = |k: u32| (1..=k).product::<u32>();
        let den_exp = fact(depth);
        let den = 10i128.pow(den_exp);
        let num: i128 = (1..=depth).map(|k| 10i128.pow(den_exp - fact(k))).sum();
        Ok(Self::Liouville {
            depth,
            value: Ratio::new(num, den),
        })
    }

    /// Parse the exact syntax: `3`, `-3/4`, `sqrt2`, `-sqrt3`, `golden`,
    /// `liouville` / `liouville3`.
    pub fn parse_exact(s: &str) -> Result<Self> {
        let t = s.trim();
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t),
        };
        let v = if let Some(d) = body.strip_prefix("sqrt") {
            let d: i64 = d
                .parse()
                .map_err(|_| crate::Error::Domain(format!("bad surd {s:?}")))?;
            Self::sqrt(d)?
        } else if body == "golden" || body == "phi" {
            Self::golden_ratio()
        } else if let Some(depth) = body.strip_prefix("liouville") {
            let depth = if depth.is_empty() {
                4
            } else {
                depth
                    .parse()
                    .map_err(|_| crate::Error::Domain(format!("bad Liouville depth {s:?}")))?
            };
            Self::liouville(depth)?
        } else if let Some((p, q)) = body.split_once('/') {
            let p: i64 = p
                .trim()
                .parse()
                .map_err(|_| crate::Error::Domain(format!("bad rational {s:?}")))?;
            let q: i64 = q
                .trim()
                .parse()
                .map_err(|_| crate::Error::Domain(format!("bad rational {s:?}")))?;
            Self::rational(p, q)?
        } else if let Ok(k) = body.parse::<i64>() {
            Self::integer(k)
        } else {
            return domain(format!(
                "{s:?} is not exact syntax (integer, p/q, sqrtN, golden, liouvilleK)"
            ));
        };
        Ok(if neg { v.neg() } else { v })
    }

    /// Parse a terminating decimal as the exact rational it denotes.
    pub fn parse_decimal_as_rational(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Ok(v) = Self::parse_exact(t) {
            if v.is_rational() {
                return Ok(v);
            }
        }
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t),
        };
        let bad = || crate::Error::Domain(format!("{s:?} is not a terminating decimal"));
        let (ip, fp) = body.split_once('.').ok_or_else(bad)?;
        if fp.len() > 18 || !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let ip: i128 = if ip.is_empty() { 0 } else { ip.parse().map_err(|_| bad())? };
        let den = 10i128.pow(fp.len() as u32);
        let fpv: i128 = if fp.is_empty() { 0 } else { fp.parse().map_err(|_| bad())? };
        let r = Ratio::new(ip * den + fpv, den);
        Ok(Self::Rational(if neg { -r } else { r }))
    }

    pub fn value(&self) -> f64 {
        match self {
            Self::Rational(r) | Self::Liouville { value: r, .. } => ratio_to_f64(r),
            Self::Surd(s) => s.value(),
            Self::Decimal { value, .. } => *value,
        }
    }

    pub fn is_rational(&self) -> bool {
        match self {
            Self::Rational(_) => true,
            Self::Surd(_) | Self::Liouville { .. } => false,
            Self::Decimal { rational, .. } => *rational,
        }
    }

    fn exact(&self) -> Option<&Ratio<i128>> {
        match self {
            Self::Rational(r) | Self::Liouville { value: r, .. } => Some(r),
            _ => None,
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Self::Rational(r) => Self::Rational(-r),
            Self::Surd(s) => Self::Surd(s.neg()),
            Self::Liouville { depth, value } => Self::Liouville {
                depth: *depth,
                value: -value,
            },
            Self::Decimal { value, rational } => Self::Decimal {
                value: -value,
                rational: *rational,
            },
        }
    }

    /// Exact comparison with an integer where the representation allows it.
    pub fn cmp_int(&self, k: i64) -> Ordering {
        match self {
            Self::Rational(r) | Self::Liouville { value: r, .. } => {
                r.cmp(&Ratio::from_integer(k as i128))
            }
            Self::Surd(s) => s.cmp_int(k),
            Self::Decimal { value, .. } => value.partial_cmp(&(k as f64)).unwrap_or(Ordering::Equal),
        }
    }

    /// `(floor(k x), {k x})`.
    pub fn mul_floor_frac(&self, k: i64) -> (i64, f64) {
        match self {
            Self::Rational(r) | Self::Liouville { value: r, .. } => {
                match r.numer().checked_mul(k as i128) {
                    Some(num) => {
                        let den = *r.denom();
                        let (fl, rem) = num.div_mod_floor(&den);
                        (fl as i64, ratio_to_f64(&Ratio::new(rem, den)))
                    }
                    None => floor_frac(k as f64 * self.value()),
                }
            }
            Self::Surd(s) => {
                let fl = s.floor_mul(k);
                (fl, s.offset(k, fl).clamp(0.0, 1.0 - f64::EPSILON / 2.0))
            }
            Self::Decimal { value, .. } => floor_frac(k as f64 * value),
        }
    }

    /// `k x - m`.
    pub fn offset(&self, k: i64, m: i64) -> f64 {
        match self {
            Self::Rational(r) | Self::Liouville { value: r, .. } => {
                match r.numer().checked_mul(k as i128) {
                    Some(num) => {
                        let den = *r.denom();
                        ratio_to_f64(&Ratio::new(num - m as i128 * den, den))
                    }
                    None => k as f64 * self.value() - m as f64,
                }
            }
            Self::Surd(s) => s.offset(k, m),
            Self::Decimal { value, .. } => k as f64 * value - m as f64,
        }
    }

    /// `k x - m - beta`, exact when both sides are exact rationals.
    pub fn residual(&self, k: i64, m: i64, beta: &DeclaredReal) -> f64 {
        if let (Some(x), Some(b)) = (self.exact(), beta.exact()) {
            if let Some(num) = x.numer().checked_mul(k as i128) {
                let kx = Ratio::new(num, *x.denom());
                let r = kx - Ratio::from_integer(m as i128) - b;
                return ratio_to_f64(&r);
            }
        }
        self.offset(k, m) - beta.value()
    }

    /// Whether computed residuals can be taken at face value. Bare decimals
    /// only carry double precision, so tiny residuals are not trustworthy.
    fn residual_trusted(&self, k: i64, residual: f64) -> bool {
        match self {
            Self::Decimal { .. } => residual.abs() > 1e3 * f64::EPSILON * k as f64,
            _ => true,
        }
    }
}

impl fmt::Display for DeclaredReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Self::Surd(s) => write!(f, "{s}"),
            Self::Liouville { depth, value } => {
                if value.is_negative() {
                    write!(f, "-liouville{depth}")
                } else {
                    write!(f, "liouville{depth}")
                }
            }
            Self::Decimal { value, .. } => write!(f, "{value}"),
        }
    }
}

fn ratio_to_f64(r: &Ratio<i128>) -> f64 {
    let n = *r.numer();
    let d = *r.denom();
    // both fit a double's exponent range; split the integer part for accuracy
    let (ip, rem) = n.div_mod_floor(&d);
    ip.to_f64().unwrap_or(f64::NAN) + rem as f64 / d as f64
}

/// `{n theta}` for `n = 1..=n_max`.
pub fn orbit(theta: &DeclaredReal, n_max: usize) -> Vec<(usize, f64)> {
    (1..=n_max)
        .map(|n| (n, theta.mul_floor_frac(n as i64).1))
        .collect()
}

/// Continued-fraction convergents `p/q` of a declared real.
pub fn convergents(theta: &DeclaredReal, count: usize) -> Vec<(i128, i128)> {
    let partial_quotients: Vec<i128> = match theta {
        DeclaredReal::Rational(r) | DeclaredReal::Liouville { value: r, .. } => {
            rational_cf(r, count)
        }
        DeclaredReal::Surd(s) => surd_cf(s, count),
        DeclaredReal::Decimal { value, .. } => float_cf(*value, count),
    };
    convergents_from_cf(&partial_quotients)
}

/// Convergents of a plain double; terms stop once the remainder is at the
/// rounding level.
pub fn convergents_f64(theta: f64, count: usize) -> Vec<(i128, i128)> {
    convergents_from_cf(&float_cf(theta, count))
}

fn convergents_from_cf(terms: &[i128]) -> Vec<(i128, i128)> {
    let mut out = Vec::with_capacity(terms.len());
    let (mut h2, mut h1) = (0i128, 1i128);
    let (mut k2, mut k1) = (1i128, 0i128);
    for &a in terms {
        let h = a.checked_mul(h1).and_then(|x| x.checked_add(h2));
        let k = a.checked_mul(k1).and_then(|x| x.checked_add(k2));
        match (h, k) {
            (Some(h), Some(k)) => {
                out.push((h, k));
                (h2, h1) = (h1, h);
                (k2, k1) = (k1, k);
            }
            _ => break,
        }
    }
    out
}

fn rational_cf(r: &Ratio<i128>, count: usize) -> Vec<i128> {
    let (mut p, mut q) = (*r.numer(), *r.denom());
    let mut out = Vec::new();
    while out.len() < count && !q.is_zero() {
        let (a, rem) = p.div_mod_floor(&q);
        out.push(a);
        p = q;
        q = rem;
    }
    out
}

fn surd_cf(s: &QuadraticSurd, count: usize) -> Vec<i128> {
    // write the value as (p + sqrt(dd)) / qq with qq | (dd - p^2)
    let b = s.b as i128;
    let mut dd = b * b * s.d as i128;
    let (mut p, mut qq) = if b > 0 {
        (s.a as i128, s.c as i128)
    } else {
        (-(s.a as i128), -(s.c as i128))
    };
    if (dd - p * p) % qq != 0 {
        let f = qq.abs();
        p *= f;
        dd *= f * f;
        qq *= f;
    }
    let root = dd.sqrt();
    let mut out = Vec::new();
    while out.len() < count {
        let a = if qq > 0 {
            (p + root).div_euclid(qq)
        } else {
            -((p + root).div_euclid(-qq) + 1)
        };
        out.push(a);
        let p_next = a * qq - p;
        let Some(q_next) = dd.checked_sub(p_next * p_next).map(|x| x / qq) else {
            break;
        };
        p = p_next;
        qq = q_next;
    }
    out
}

fn float_cf(mut x: f64, count: usize) -> Vec<i128> {
    let mut out = Vec::new();
    while out.len() < count && x.is_finite() {
        let a = x.floor();
        out.push(a as i128);
        let f = x - a;
        if f < 1e-12 {
            break;
        }
        x = 1.0 / f;
        if x > 1e12 {
            break;
        }
    }
    out
}

/// A concrete `n` certifying `n theta = m + beta + residual` with
/// `|residual| < n^{-rho}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiophantineWitness {
    pub n: usize,
    pub m: i64,
    /// Integer part of the second component in simultaneous searches.
    pub m1: Option<i64>,
    pub target_beta: f64,
    pub residual: f64,
    pub rho: f64,
}

/// Simultaneous witness for `(theta1, theta2)` at the same `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct JointWitness {
    pub first: DiophantineWitness,
    pub second: DiophantineWitness,
}

impl JointWitness {
    /// Flattened row: `m`/`beta` from the first component, `m1` from the
    /// second, `residual` the larger in magnitude of the two.
    pub fn to_row(&self) -> DiophantineWitness {
        let residual = if self.first.residual.abs() >= self.second.residual.abs() {
            self.first.residual
        } else {
            self.second.residual
        };
        DiophantineWitness {
            n: self.first.n,
            m: self.first.m,
            m1: Some(self.second.m),
            target_beta: self.first.target_beta,
            residual,
            rho: self.first.rho,
        }
    }
}

fn check_beta(beta: &DeclaredReal) -> Result<()> {
    if beta.cmp_int(0) == Ordering::Less || beta.cmp_int(1) != Ordering::Less {
        return domain(format!("beta must lie in [0, 1), got {beta}"));
    }
    Ok(())
}

fn check_scan(rho: f64, n_max: usize) -> Result<()> {
    if !(rho >= 0.0) {
        return domain(format!("rho must be non-negative, got {rho}"));
    }
    if n_max < 2 {
        return domain(format!("n_max must be at least 2, got {n_max}"));
    }
    Ok(())
}

/// Nearest-integer decomposition `n theta = m + beta + residual` at one `n`.
pub fn decompose(theta: &DeclaredReal, beta: &DeclaredReal, n: usize, rho: f64) -> DiophantineWitness {
    let k = n as i64;
    let (fl, fr) = theta.mul_floor_frac(k);
    let r = fr - beta.value();
    let m = if r > 0.5 {
        fl + 1
    } else if r < -0.5 {
        fl - 1
    } else {
        fl
    };
    DiophantineWitness {
        n,
        m,
        m1: None,
        target_beta: beta.value(),
        residual: theta.residual(k, m, beta),
        rho,
    }
}

fn accepts(theta: &DeclaredReal, w: &DiophantineWitness) -> bool {
    // a rational angle has no approximations, only exact hits
    if theta.is_rational() {
        return w.residual == 0.0;
    }
    let threshold = (w.n as f64).powf(-w.rho);
    w.residual.abs() < threshold && theta.residual_trusted(w.n as i64, w.residual)
}

/// All `n <= n_max` with `|n theta - m - beta| < n^{-rho}`.
pub fn witness_search(
    theta: &DeclaredReal,
    beta: &DeclaredReal,
    rho: f64,
    n_max: usize,
) -> Result<Vec<DiophantineWitness>> {
    check_beta(beta)?;
    check_scan(rho, n_max)?;
    Ok((1..=n_max)
        .map(|n| decompose(theta, beta, n, rho))
        .filter(|w| accepts(theta, w))
        .collect())
}

/// All `n <= n_max` at which both residuals are below `n^{-rho}`.
pub fn joint_witness_search(
    theta1: &DeclaredReal,
    theta2: &DeclaredReal,
    beta1: &DeclaredReal,
    beta2: &DeclaredReal,
    rho: f64,
    n_max: usize,
) -> Result<Vec<JointWitness>> {
    check_beta(beta1)?;
    check_beta(beta2)?;
    check_scan(rho, n_max)?;
    let mut out = Vec::new();
    for n in 1..=n_max {
        let first = decompose(theta1, beta1, n, rho);
        if !accepts(theta1, &first) {
            continue;
        }
        let second = decompose(theta2, beta2, n, rho);
        if accepts(theta2, &second) {
            out.push(JointWitness { first, second });
        }
    }
    Ok(out)
}

/// Named irrational test constants.
#[derive(Clone, Debug, PartialEq)]
pub struct Fixture {
    pub name: &'static str,
    pub value: DeclaredReal,
    /// `omega(theta | 0)`; infinite for Liouville numbers.
    pub declared_measure: f64,
    /// Number of terms kept of an infinite defining series, if any.
    pub truncation_depth: Option<u32>,
}

pub fn fixture_irrationals() -> Vec<Fixture> {
    vec![
        Fixture {
            name: "sqrt2",
            value: DeclaredReal::sqrt(2).expect("2 is not a square"),
            declared_measure: 2.0,
            truncation_depth: None,
        },
        Fixture {
            name: "sqrt3",
            value: DeclaredReal::sqrt(3).expect("3 is not a square"),
            declared_measure: 2.0,
            truncation_depth: None,
        },
        Fixture {
            name: "golden",
            value: DeclaredReal::golden_ratio(),
            declared_measure: 2.0,
            truncation_depth: None,
        },
        Fixture {
            name: "liouville",
            value: DeclaredReal::liouville(4).expect("depth 4 is supported"),
            declared_measure: f64::INFINITY,
            truncation_depth: Some(4),
        },
    ]
}

pub const WITNESS_CSV_HEADER: &str = "n,m,m1,beta,residual,rho";

/// Witness catalog as CSV with columns `n,m,m1,beta,residual,rho`.
pub fn write_witness_csv<W: Write>(out: &mut W, rows: &[DiophantineWitness]) -> io::Result<()> {
    writeln!(out, "{WITNESS_CSV_HEADER}")?;
    for w in rows {
        let m1 = w.m1.map(|v| v.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{:e},{}",
            w.n, w.m, m1, w.target_beta, w.residual, w.rho
        )?;
    }
    Ok(())
}
