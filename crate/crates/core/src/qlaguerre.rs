//! q-Laguerre polynomials at the scaled points `x_n(z, s) = z q^{-ns}`.
//!
//! Every degree-n sum is built termwise in log-polar form and summed with
//! [`sum_rescaled`]. For `tau < 0` the reversed sum has terms of size
//! `q^{k^2 + tau n k}`, which peak near `k = -tau n / 2`; the split path
//! recentres the sum there and factors out a theta-type prefactor.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::diophantine::{chi, DeclaredReal};
use crate::error::{domain, Error, Result};
use crate::numerics::{normalize_phase, sum_rescaled, LogPolarComplex};
use crate::qseries::QContext;

/// Largest term log-magnitude the direct evaluation accepts.
pub const DIRECT_MAX_LOG: f64 = 700.0;

/// `s = tau + 2 + i 2 theta pi / log q`, with `tau` and `theta` carried
/// together with their declared arithmetic nature.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalingParameter {
    pub tau: DeclaredReal,
    pub theta: DeclaredReal,
}

impl ScalingParameter {
    pub fn new(tau: DeclaredReal, theta: DeclaredReal) -> Self {
        Self { tau, theta }
    }

    pub fn sigma(&self) -> f64 {
        self.tau.value() + 2.0
    }

    pub fn t(&self, q: f64) -> f64 {
        2.0 * self.theta.value() * PI / q.ln()
    }

    pub fn s(&self, q: f64) -> Complex64 {
        Complex64::new(self.sigma(), self.t(q))
    }

    /// `2 pi {k n theta}`, reduced exactly where the representation allows.
    fn turn(&self, k: i64) -> f64 {
        2.0 * PI * self.theta.mul_floor_frac(k).1
    }
}

/// Logarithms of `(a;q)_j` and of the tails `(a q^j;q)_inf` for
/// `a = q` and `a = q^{alpha+1}`, `0 <= j <= n`.
#[derive(Clone, Debug)]
pub struct PochTable {
    fin_q: Vec<f64>,
    tail_q: Vec<f64>,
    fin_a: Vec<f64>,
    tail_a: Vec<f64>,
}

fn log_products(a: f64, q: f64, n: usize, max_terms: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut fin = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    let mut x = a;
    for _ in 0..=n {
        fin.push(acc);
        acc += (-x).ln_1p();
        x *= q;
    }
    // x = a q^{n+1}: sum the infinite tail beyond n
    let mut tail_end = 0.0;
    let mut y = a * q.powi(n as i32);
    let mut count = 0;
    loop {
        let t = (-y).ln_1p();
        tail_end += t;
        if t == 0.0 || y / (1.0 - q) <= 1e-17 * tail_end.abs() {
            break;
        }
        count += 1;
        if count > max_terms {
            return Err(Error::Convergence {
                what: "q-Pochhammer tail",
                terms: max_terms,
            });
        }
        y *= q;
    }
    let mut tail = vec![0.0; n + 1];
    tail[n] = tail_end;
    let mut y = a * q.powi(n as i32);
    for j in (0..n).rev() {
        y /= q;
        tail[j] = tail[j + 1] + (-y).ln_1p();
    }
    Ok((fin, tail))
}

impl PochTable {
    pub fn new(ctx: &QContext, n: usize) -> Result<Self> {
        let q = ctx.q;
        let (fin_q, tail_q) = log_products(q, q, n, ctx.control.max_terms)?;
        let (fin_a, tail_a) = log_products(q * ctx.q_alpha(), q, n, ctx.control.max_terms)?;
        Ok(Self {
            fin_q,
            tail_q,
            fin_a,
            tail_a,
        })
    }

    pub fn len(&self) -> usize {
        self.fin_q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fin_q.is_empty()
    }

    /// `log (q;q)_j`
    pub fn log_qq(&self, j: usize) -> f64 {
        self.fin_q[j]
    }

    /// `log (q^{alpha+1};q)_j`
    pub fn log_aq(&self, j: usize) -> f64 {
        self.fin_a[j]
    }

    /// `log (q;q)_inf`
    pub fn log_qq_inf(&self) -> f64 {
        self.tail_q[0]
    }

    /// `log (q;q)_inf / (q;q)_j`
    pub fn tail_qq(&self, j: usize) -> f64 {
        self.tail_q[j]
    }

    /// `log (q^{alpha+1};q)_inf / (q^{alpha+1};q)_j`
    pub fn tail_aq(&self, j: usize) -> f64 {
        self.tail_a[j]
    }

    /// `log [(q;q)_inf (q^{alpha+1};q)_n / ((q;q)_{n-k} (q^{alpha+1};q)_{n-k})]`
    pub fn log_ratio(&self, n: usize, k: usize) -> f64 {
        self.tail_q[n - k] + self.tail_a[n - k] - self.tail_a[n]
    }

    /// `log e(k, n)` for the split at `h = floor(m/2)`.
    pub fn log_factor_e(&self, k: usize, n: usize, h: usize) -> f64 {
        let j = n - h + k;
        self.tail_q[h - k] + self.tail_q[j] + self.tail_a[j] - self.tail_a[n]
    }

    /// `log f(k, n)` for the split at `h = floor(m/2)`.
    pub fn log_factor_f(&self, k: usize, n: usize, h: usize) -> f64 {
        let j = n - h - k;
        self.tail_q[h + k] + self.tail_q[j] + self.tail_a[j] - self.tail_a[n]
    }
}

/// `x_n(z, s) = z q^{-ns}`.
pub fn scale_point(ctx: &QContext, sp: &ScalingParameter, n: usize) -> LogPolarComplex {
    let lq = ctx.q.ln();
    LogPolarComplex::new(
        ctx.z.norm().ln() - n as f64 * sp.sigma() * lq,
        ctx.z.arg() - sp.turn(n as i64),
    )
}

/// The terms of `L_n^{(alpha)}(x; q)`.
pub fn laguerre_terms(ctx: &QContext, n: usize, x: LogPolarComplex) -> Result<Vec<LogPolarComplex>> {
    let table = PochTable::new(ctx, n)?;
    let lq = ctx.q.ln();
    let lead = table.log_aq(n);
    Ok((0..=n)
        .map(|k| {
            if k > 0 && x.is_zero() {
                return LogPolarComplex::ZERO;
            }
            let kf = k as f64;
            let log_mag = lead + (kf * kf + ctx.alpha * kf) * lq + kf * x.log_mag
                - table.log_aq(k)
                - table.log_qq(k)
                - table.log_qq(n - k);
            LogPolarComplex::new(log_mag, kf * (x.phase + PI))
        })
        .collect())
}

/// Direct evaluation of `L_n^{(alpha)}(x; q)`; refuses inputs whose terms
/// leave double range.
pub fn laguerre_direct(ctx: &QContext, n: usize, x: LogPolarComplex) -> Result<Complex64> {
    let terms = laguerre_terms(ctx, n, x)?;
    let res = sum_rescaled(&terms);
    if res.max_term_log >= DIRECT_MAX_LOG {
        return Err(Error::Range(format!(
            "largest term of L_{n} is e^{:.1}; use the normalized evaluators",
            res.max_term_log
        )));
    }
    Ok(res.to_complex())
}

/// Same sum as [`laguerre_direct`], returned in log-polar form without a
/// range guard.
pub fn laguerre_log_polar(ctx: &QContext, n: usize, x: LogPolarComplex) -> Result<LogPolarComplex> {
    Ok(sum_rescaled(&laguerre_terms(ctx, n, x)?).to_log_polar())
}

/// `(-z q^alpha)^n q^{n^2 (1 - s)}`.
pub fn normalizer(ctx: &QContext, sp: &ScalingParameter, n: usize) -> LogPolarComplex {
    let lq = ctx.q.ln();
    let nf = n as f64;
    let nn = (n as i64).saturating_mul(n as i64);
    LogPolarComplex::new(
        nf * (ctx.z.norm().ln() + ctx.alpha * lq) - nf * nf * (1.0 + sp.tau.value()) * lq,
        normalize_phase(nf * (ctx.z.arg() + PI)) - sp.turn(nn),
    )
}

/// Terms of the reversed sum: `L_n(x_n) / normalizer` as a sum over `k`.
pub fn normalized_terms(
    ctx: &QContext,
    sp: &ScalingParameter,
    n: usize,
    table: &PochTable,
) -> Vec<LogPolarComplex> {
    let lq = ctx.q.ln();
    let log_x = sp.tau.value() * n as f64 * lq - ctx.z.norm().ln() - ctx.alpha * lq;
    let arg_x = PI - ctx.z.arg();
    (0..=n)
        .map(|k| {
            let kf = k as f64;
            let log_mag = table.log_aq(n) - table.log_qq(k) - table.log_qq(n - k)
                - table.log_aq(n - k)
                + kf * kf * lq
                + kf * log_x;
            let phase = normalize_phase(kf * arg_x) + sp.turn(n as i64 * k as i64);
            LogPolarComplex::new(log_mag, phase)
        })
        .collect()
}

/// `L_n^{(alpha)}(x_n(z, s); q) / ((-z q^alpha)^n q^{n^2 (1 - s)})` from the
/// reversed sum. Refuses `tau < 0`, where the split path must be used.
pub fn normalized_laguerre(ctx: &QContext, sp: &ScalingParameter, n: usize) -> Result<LogPolarComplex> {
    if sp.tau.cmp_int(0).is_lt() {
        return domain(format!(
            "tau = {} < 0: the reversed sum loses precision, use split_sums",
            sp.tau
        ));
    }
    let table = PochTable::new(ctx, n)?;
    Ok(sum_rescaled(&normalized_terms(ctx, sp, n, &table)).to_log_polar())
}

/// The reversed sum split at `floor(m/2)`, both halves theta-normalized.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitSumResult {
    pub s1: LogPolarComplex,
    pub s2: LogPolarComplex,
    /// `s1 + s2`
    pub total: LogPolarComplex,
    pub m: i64,
    pub floor_m_half: i64,
    /// `floor(n theta)`
    pub m1: i64,
    /// `-tau n - m`
    pub c_n: f64,
    /// `{n theta}`
    pub d_n: f64,
    /// `q^{h(tau n + h)} / ((q;q)_inf^2 (-z q^alpha e^{-2 n theta pi i})^h)`
    pub prefactor: LogPolarComplex,
    /// `(-z q^alpha)^n q^{n^2 (1 - s)}`
    pub normalizer: LogPolarComplex,
}

impl SplitSumResult {
    /// The reversed-sum value `prefactor * total`.
    pub fn normalized(&self) -> LogPolarComplex {
        self.prefactor * self.total
    }

    /// `L_n^{(alpha)}(x_n(z, s); q)`.
    pub fn laguerre(&self) -> LogPolarComplex {
        self.normalizer * self.prefactor * self.total
    }
}

/// Split evaluation with `m = floor(-tau n)`.
pub fn split_sums(ctx: &QContext, sp: &ScalingParameter, n: usize) -> Result<SplitSumResult> {
    check_split_tau(sp)?;
    let m = sp.tau.neg().mul_floor_frac(n as i64).0;
    split_sums_with(ctx, sp, n, m)
}

fn check_split_tau(sp: &ScalingParameter) -> Result<()> {
    if !(sp.tau.cmp_int(-2).is_gt() && sp.tau.cmp_int(0).is_lt()) {
        return domain(format!("split sums need -2 < tau < 0, got {}", sp.tau));
    }
    Ok(())
}

/// Split evaluation at an arbitrary integer `m`; then `c_n = -tau n - m`
/// need not lie in `[0, 1)`, but the identity holds for every `m`.
pub fn split_sums_with(
    ctx: &QContext,
    sp: &ScalingParameter,
    n: usize,
    m: i64,
) -> Result<SplitSumResult> {
    check_split_tau(sp)?;
    if n == 0 {
        return domain("split sums need n >= 1");
    }
    let h = m.div_euclid(2);
    if m < 0 || h as usize > n {
        return domain(format!("split index m = {m} out of range for n = {n}"));
    }
    let hu = h as usize;
    let table = PochTable::new(ctx, n)?;
    let lq = ctx.q.ln();
    let ni = n as i64;
    let c_n = sp.tau.neg().offset(ni, m);
    let (m1, d_n) = sp.theta.mul_floor_frac(ni);
    let log_zqa = ctx.z.norm().ln() + ctx.alpha * lq;
    let log_w = log_zqa + (chi(m) as f64 + c_n) * lq;
    let arg_w = PI + ctx.z.arg();

    let s1_terms: Vec<LogPolarComplex> = (0..=hu)
        .map(|k| {
            let kf = k as f64;
            LogPolarComplex::new(
                kf * kf * lq + kf * log_w + table.log_factor_e(k, n, hu),
                normalize_phase(kf * arg_w) - sp.turn(ni * k as i64),
            )
        })
        .collect();
    let s2_terms: Vec<LogPolarComplex> = (1..=n - hu)
        .map(|k| {
            let kf = k as f64;
            LogPolarComplex::new(
                kf * kf * lq - kf * log_w + table.log_factor_f(k, n, hu),
                -normalize_phase(kf * arg_w) + sp.turn(ni * k as i64),
            )
        })
        .collect();
    let s1 = sum_rescaled(&s1_terms).to_log_polar();
    let s2 = sum_rescaled(&s2_terms).to_log_polar();
    let mut all = s1_terms;
    all.extend(s2_terms);
    let total = sum_rescaled(&all).to_log_polar();

    let hf = h as f64;
    let prefactor = LogPolarComplex::new(
        hf * (hf - m as f64 - c_n) * lq - 2.0 * table.log_qq_inf() - hf * log_zqa,
        -normalize_phase(hf * arg_w) + sp.turn(ni * h),
    );
    Ok(SplitSumResult {
        s1,
        s2,
        total,
        m,
        floor_m_half: h,
        m1,
        c_n,
        d_n,
        prefactor,
        normalizer: normalizer(ctx, sp, n),
    })
}

fn check_split_index(k: usize, lo: usize, hi: usize, name: &str) -> Result<()> {
    if k < lo || k > hi {
        return domain(format!("{name}: k = {k} outside [{lo}, {hi}]"));
    }
    Ok(())
}

/// `e(k, n) = (q;q)_inf^2 (q^{a+1};q)_n / ((q;q)_{h-k} (q;q)_{n-h+k} (q^{a+1};q)_{n-h+k})`
/// with `h = floor(m/2)`, `0 <= k <= h`.
pub fn factor_e(ctx: &QContext, k: usize, n: usize, m: usize) -> Result<f64> {
    let h = m / 2;
    if h > n {
        return domain(format!("factor_e: floor(m/2) = {h} exceeds n = {n}"));
    }
    check_split_index(k, 0, h, "factor_e")?;
    Ok(PochTable::new(ctx, n)?.log_factor_e(k, n, h).exp())
}

/// `f(k, n) = (q;q)_inf^2 (q^{a+1};q)_n / ((q;q)_{h+k} (q;q)_{n-h-k} (q^{a+1};q)_{n-h-k})`
/// with `h = floor(m/2)`, `1 <= k <= n - h`.
pub fn factor_f(ctx: &QContext, k: usize, n: usize, m: usize) -> Result<f64> {
    let h = m / 2;
    if h > n {
        return domain(format!("factor_f: floor(m/2) = {h} exceeds n = {n}"));
    }
    check_split_index(k, 1, n - h, "factor_f")?;
    Ok(PochTable::new(ctx, n)?.log_factor_f(k, n, h).exp())
}
