use std::path::PathBuf;

use clap::{Args, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;

use qpr_core::asymptotics::{
    classify, evaluate, nu_n, resolve_case, theorem_remark_check, verdict, RegimeReport, Verdict,
    VerifyOptions,
};
use qpr_core::diophantine::{joint_witness_search, witness_search, DiophantineWitness};
use qpr_core::qlaguerre::{
    laguerre_log_polar, normalized_laguerre, scale_point, split_sums, ScalingParameter,
};
use qpr_core::qseries::{PochhammerOrder, QContext};
use qpr_core::LogPolarComplex;

use crate::args::{
    default_rho, parse_beta, parse_degrees, series_control, Assumption, ContextArgs, OutputArgs,
};
use crate::rows::{open_output, write_table, EvalRow, ReportRow, SweepRow, WitnessRow};
use crate::{Failure, EXIT_NONE, EXIT_OK, EXIT_VIOLATION};

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Function {
    #[value(name = "pochhammer")]
    Pochhammer,
    #[value(name = "theta")]
    Theta,
    #[value(name = "ramanujan_a")]
    RamanujanA,
    #[value(name = "b_function")]
    BFunction,
    #[value(name = "laguerre")]
    Laguerre,
    #[value(name = "normalized_laguerre")]
    NormalizedLaguerre,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalFormat {
    Text,
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct EvalCmd {
    #[arg(value_enum)]
    function: Function,
    #[command(flatten)]
    ctx: ContextArgs,
    /// Pochhammer base, real part
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    /// Pochhammer base, imaginary part
    #[arg(long = "a-im", default_value_t = 0.0, allow_hyphen_values = true)]
    a_im: f64,
    /// Pochhammer length (infinite when absent) or Laguerre degree
    #[arg(long)]
    n: Option<i64>,
    /// Scale the Laguerre argument to x_n(z, s); laguerre uses x = z otherwise
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<String>,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    theta: String,
    #[command(flatten)]
    assume: Assumption,
    #[arg(long, value_enum, default_value_t = EvalFormat::Text)]
    format: EvalFormat,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

impl EvalCmd {
    fn degree(&self) -> Result<usize, Failure> {
        match self.n {
            Some(n) if n >= 0 => Ok(n as usize),
            Some(n) => Err(Failure::usage(format!("degree must be non-negative, got {n}"))),
            None => Err(Failure::usage("this function needs --n")),
        }
    }

    fn scaling(&self, tau: &str) -> Result<ScalingParameter, Failure> {
        Ok(ScalingParameter::new(
            self.assume.parse("tau", tau)?,
            self.assume.parse("theta", &self.theta)?,
        ))
    }

    fn value(&self) -> Result<LogPolarComplex, Failure> {
        let control = series_control()?;
        let q = self.ctx.q;
        let z = self.ctx.z();
        let lp = LogPolarComplex::from_complex;
        Ok(match self.function {
            Function::Pochhammer => {
                let a = self
                    .a
                    .ok_or_else(|| Failure::usage("pochhammer needs --a"))?;
                let order = match self.n {
                    Some(n) => PochhammerOrder::Finite(n),
                    None => PochhammerOrder::Infinite,
                };
                lp(control.pochhammer(Complex64::new(a, self.a_im), q, order)?)
            }
            Function::Theta => lp(control.theta(z, q)?),
            Function::RamanujanA => lp(control.ramanujan_a(q, z)?),
            Function::BFunction => lp(control.b_function(q, z)?),
            Function::Laguerre => {
                let n = self.degree()?;
                let ctx = self.ctx.context()?;
                let x = match &self.tau {
                    Some(t) => scale_point(&ctx, &self.scaling(t)?, n),
                    None => lp(z),
                };
                laguerre_log_polar(&ctx, n, x)?
            }
            Function::NormalizedLaguerre => {
                let n = self.degree()?;
                let ctx = self.ctx.context()?;
                let tau = self
                    .tau
                    .as_deref()
                    .ok_or_else(|| Failure::usage("normalized_laguerre needs --tau"))?;
                let sp = self.scaling(tau)?;
                if sp.tau.cmp_int(0).is_lt() {
                    split_sums(&ctx, &sp, n)?.normalized()
                } else {
                    normalized_laguerre(&ctx, &sp, n)?
                }
            }
        })
    }

    pub fn run(self) -> Result<u8, Failure> {
        let row = EvalRow::new(
            self.function.to_possible_value().unwrap().get_name(),
            self.value()?,
        );
        let mut out = open_output(self.output.as_deref())?;
        match self.format {
            EvalFormat::Text => {
                out.write_all(row.text().as_bytes())?;
                out.flush()?;
            }
            EvalFormat::Csv => write_table(&mut *out, crate::args::TableFormat::Csv, &[row])?,
            EvalFormat::Json => write_table(&mut *out, crate::args::TableFormat::Json, &[row])?,
        }
        Ok(EXIT_OK)
    }
}

/// Scaling and witness options shared by `verify` and `sweep`.
#[derive(Args, Debug, Clone)]
pub struct RegimeArgs {
    #[command(flatten)]
    ctx: ContextArgs,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    theta: String,
    #[command(flatten)]
    assume: Assumption,
    /// Degrees: `a..b`, `a..b:step` or `n1,n2,...`
    #[arg(long)]
    n: String,
    /// Target of the first irrational component
    #[arg(long, default_value = "0")]
    beta: String,
    /// Target of theta when tau and theta are both irrational
    #[arg(long, default_value = "0")]
    beta2: String,
    /// Witness exponent; 1 for quadratic irrationals aimed at 0, else 1/2
    #[arg(long)]
    rho: Option<f64>,
}

impl RegimeArgs {
    fn options(&self, sp: &ScalingParameter) -> Result<VerifyOptions, Failure> {
        let beta = parse_beta(&self.beta)?;
        let beta2 = parse_beta(&self.beta2)?;
        let rho = match self.rho {
            Some(r) => r,
            None => {
                let neg_tau = sp.tau.neg();
                let mut r = f64::INFINITY;
                if !neg_tau.is_rational() {
                    r = r.min(default_rho(&neg_tau, &beta));
                }
                if !sp.theta.is_rational() {
                    let b = if neg_tau.is_rational() { &beta } else { &beta2 };
                    r = r.min(default_rho(&sp.theta, b));
                }
                if r.is_finite() {
                    r
                } else {
                    1.0
                }
            }
        };
        Ok(VerifyOptions { beta, beta2, rho })
    }

    fn reports(
        &self,
        ctx: &QContext,
        sp: &ScalingParameter,
        case: u8,
    ) -> Result<Vec<RegimeReport>, Failure> {
        let opts = self.options(sp)?;
        let ns = parse_degrees(&self.n)?;
        let rows: Vec<Option<RegimeReport>> = ns
            .par_iter()
            .map(|&n| evaluate(ctx, sp, case, n, &opts))
            .collect::<Result<_, _>>()?;
        Ok(rows.into_iter().flatten().collect())
    }
}

fn summary(case: u8, reports: &[RegimeReport]) -> String {
    let eligible = reports.iter().filter(|r| r.eligible).count();
    let violated = reports.iter().filter(|r| r.violated()).count();
    let worst = reports
        .iter()
        .filter(|r| r.eligible)
        .map(RegimeReport::ratio)
        .fold(0.0, f64::max);
    format!(
        "case {case}: {} rows, {eligible} eligible, {violated} violations, worst eligible error/bound {worst:e}",
        reports.len()
    )
}

#[derive(Args, Debug)]
pub struct VerifyCmd {
    /// Regime 1-7; must agree with the one implied by tau and theta
    #[arg(long)]
    case: Option<u8>,
    #[arg(long, allow_hyphen_values = true)]
    tau: String,
    #[command(flatten)]
    regime: RegimeArgs,
    #[command(flatten)]
    out: OutputArgs,
}

impl VerifyCmd {
    pub fn run(self) -> Result<u8, Failure> {
        let r = &self.regime;
        let sp = ScalingParameter::new(
            r.assume.parse("tau", &self.tau)?,
            r.assume.parse("theta", &r.theta)?,
        );
        if let Some(advisory) = theorem_remark_check(&sp.tau) {
            eprintln!("advisory: {advisory}");
            open_output(self.out.output.as_deref())?.flush()?;
            return Ok(EXIT_NONE);
        }
        let ctx = r.ctx.context()?;
        let case = resolve_case(&sp, self.case)?;
        let reports = r.reports(&ctx, &sp, case)?;
        let rows: Vec<ReportRow> = reports.iter().map(ReportRow::from).collect();
        let mut out = open_output(self.out.output.as_deref())?;
        write_table(&mut *out, self.out.format, &rows)?;
        eprintln!("{}", summary(case, &reports));
        Ok(match verdict(&reports) {
            Verdict::Pass => EXIT_OK,
            Verdict::Violation => EXIT_VIOLATION,
            Verdict::NoEligible => EXIT_NONE,
        })
    }
}

#[derive(Args, Debug)]
pub struct WitnessCmd {
    #[arg(long, allow_hyphen_values = true)]
    theta: String,
    /// Second angle for simultaneous witnesses
    #[arg(long, allow_hyphen_values = true)]
    theta2: Option<String>,
    #[arg(long, default_value = "0")]
    beta: String,
    #[arg(long, default_value = "0")]
    beta2: String,
    /// 1 for quadratic irrationals aimed at 0, else 1/2
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long)]
    nmax: usize,
    #[command(flatten)]
    assume: Assumption,
    #[command(flatten)]
    out: OutputArgs,
}

impl WitnessCmd {
    fn search(&self) -> Result<Vec<DiophantineWitness>, Failure> {
        let theta = self.assume.parse("theta", &self.theta)?;
        let beta = parse_beta(&self.beta)?;
        let mut rho = default_rho(&theta, &beta);
        let rows = match &self.theta2 {
            None => {
                let rho = self.rho.unwrap_or(rho);
                witness_search(&theta, &beta, rho, self.nmax)?
            }
            Some(t2) => {
                let theta2 = self.assume.parse("theta2", t2)?;
                let beta2 = parse_beta(&self.beta2)?;
                rho = rho.min(default_rho(&theta2, &beta2));
                let rho = self.rho.unwrap_or(rho);
                joint_witness_search(&theta, &theta2, &beta, &beta2, rho, self.nmax)?
                    .iter()
                    .map(|j| j.to_row())
                    .collect()
            }
        };
        Ok(rows)
    }

    pub fn run(self) -> Result<u8, Failure> {
        let found = self.search()?;
        let mut out = open_output(self.out.output.as_deref())?;
        if found.is_empty() {
            out.flush()?;
            eprintln!("no witness up to n = {}", self.nmax);
            return Ok(EXIT_NONE);
        }
        let rows: Vec<WitnessRow> = found.iter().map(WitnessRow::from).collect();
        write_table(&mut *out, self.out.format, &rows)?;
        Ok(EXIT_OK)
    }
}

#[derive(Args, Debug)]
pub struct SweepCmd {
    /// Comma-separated tau grid inside (-2, 0) or (0, 2)
    #[arg(long, allow_hyphen_values = true)]
    taus: String,
    #[command(flatten)]
    regime: RegimeArgs,
    /// Also write every per-n row, in the verify layout, to this file
    #[arg(long)]
    detail: Option<PathBuf>,
    #[command(flatten)]
    out: OutputArgs,
}

/// Least-squares slope of `y` against `x`.
fn linear_slope(points: &[(f64, f64)]) -> f64 {
    let k = points.len() as f64;
    if points.len() < 2 {
        return f64::NAN;
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Name and natural log of the order the regime predicts for the error.
fn predicted_order(case: u8, tau: f64, q: f64, rho: f64) -> (&'static str, impl Fn(usize) -> f64) {
    let lq = q.ln();
    let name = match case {
        1 => "q^(tau n)",
        2 => "q^(n/2)",
        4 => "q^(nu_n)",
        _ => "n^(-rho) log^2 n",
    };
    let f = move |n: usize| {
        let nf = n as f64;
        match case {
            1 => tau * nf * lq,
            2 => 0.5 * nf * lq,
            4 => nu_n(4, n, tau, q).map_or(f64::NAN, |v| v as f64 * lq),
            _ => -rho * nf.ln() + 2.0 * nf.ln().ln(),
        }
    };
    (name, f)
}

impl SweepCmd {
    pub fn run(self) -> Result<u8, Failure> {
        let r = &self.regime;
        let ctx = r.ctx.context()?;
        let theta = r.assume.parse("theta", &r.theta)?;
        let mut rows = Vec::new();
        let mut detail = Vec::new();
        for t in self.taus.split(',').map(str::trim) {
            let tau = r.assume.parse("tau", t)?;
            let inside = tau.cmp_int(-2).is_gt() && tau.cmp_int(2).is_lt() && !tau.cmp_int(0).is_eq();
            if !inside {
                return Err(Failure::usage(format!("sweep tau {tau} must lie in (-2, 0) or (0, 2)")));
            }
            let sp = ScalingParameter::new(tau, theta.clone());
            let case = classify(&sp)?;
            let reports = r.reports(&ctx, &sp, case)?;
            let rho = r.options(&sp)?.rho;
            let (name, order) = predicted_order(case, sp.tau.value(), ctx.q, rho);
            let fitted: Vec<(f64, f64)> = reports
                .iter()
                .filter(|x| x.observed_error > 0.0 && x.observed_error.is_finite())
                .map(|x| (x.n as f64, x.observed_error.ln()))
                .collect();
            let predicted: Vec<(f64, f64)> = reports.iter().map(|x| (x.n as f64, order(x.n))).collect();
            let fitted_slope = linear_slope(&fitted);
            let predicted_slope = linear_slope(&predicted);
            eprintln!("tau {}: {}", sp.tau, summary(case, &reports));
            rows.push(SweepRow {
                tau: sp.tau.to_string(),
                theta: sp.theta.to_string(),
                case_id: case,
                rows: reports.len(),
                eligible_rows: reports.iter().filter(|x| x.eligible).count(),
                fitted_slope,
                predicted_order: name.to_string(),
                predicted_slope,
                ratio: fitted_slope / predicted_slope,
            });
            detail.extend(reports.iter().map(ReportRow::from));
        }
        if let Some(path) = &self.detail {
            let mut d = open_output(Some(path))?;
            write_table(&mut *d, self.out.format, &detail)?;
        }
        let mut out = open_output(self.out.output.as_deref())?;
        write_table(&mut *out, self.out.format, &rows)?;
        Ok(EXIT_OK)
    }
}
