use clap::{Args, ValueEnum};
use num_complex::Complex64;
use qpr_core::diophantine::DeclaredReal;
use qpr_core::qseries::{QContext, SeriesControl};

use crate::Failure;

/// Environment variable overriding the series term cap.
pub const MAX_TERMS_ENV: &str = "QPR_MAX_TERMS";

#[derive(Args, Debug, Clone)]
pub struct ContextArgs {
    /// Nome, 0 < q < 1
    #[arg(long, default_value_t = 0.5)]
    pub q: f64,
    /// Laguerre parameter, alpha > -1
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Real part of z
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub z: f64,
    /// Imaginary part of z
    #[arg(long = "z-im", default_value_t = 0.0, allow_hyphen_values = true)]
    pub z_im: f64,
}

impl ContextArgs {
    pub fn z(&self) -> Complex64 {
        Complex64::new(self.z, self.z_im)
    }

    pub fn context(&self) -> Result<QContext, Failure> {
        Ok(QContext::new(self.q, self.alpha, self.z())?.with_control(series_control()?))
    }
}

/// Declared arithmetic nature for free decimals such as `0.25`.
#[derive(Args, Debug, Clone, Copy, Default)]
pub struct Assumption {
    /// Read decimal tau/theta values as exact rationals
    #[arg(long, conflicts_with = "assume_irrational")]
    pub assume_rational: bool,
    /// Read decimal tau/theta values as irrational
    #[arg(long)]
    pub assume_irrational: bool,
}

impl Assumption {
    /// Exact syntax (`-3/4`, `sqrt2`, `golden`, `liouville4`) always works;
    /// decimals need one of the assumption flags.
    pub fn parse(&self, name: &str, s: &str) -> Result<DeclaredReal, Failure> {
        if let Ok(v) = DeclaredReal::parse_exact(s) {
            return Ok(v);
        }
        let value: f64 = s
            .parse()
            .map_err(|_| Failure::usage(format!("cannot read --{name} {s}")))?;
        if self.assume_rational {
            Ok(DeclaredReal::parse_decimal_as_rational(s)?)
        } else if self.assume_irrational {
            Ok(DeclaredReal::Decimal {
                value,
                rational: false,
            })
        } else {
            Err(Failure::usage(format!(
                "--{name} {s} is a bare decimal; write it exactly (e.g. 1/4, sqrt2) \
                 or pass --assume-rational / --assume-irrational"
            )))
        }
    }
}

/// A target `beta` in `[0, 1)`; decimals are exact rationals.
pub fn parse_beta(s: &str) -> Result<DeclaredReal, Failure> {
    DeclaredReal::parse_exact(s)
        .or_else(|_| DeclaredReal::parse_decimal_as_rational(s))
        .map_err(|e| Failure::usage(format!("cannot read beta {s}: {e}")))
}

/// `a..b` (inclusive), `a..b:step` or a comma list.
pub fn parse_degrees(s: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::usage(format!("cannot read degree range {s}"));
    if let Some((lo, rest)) = s.split_once("..") {
        let (hi, step) = match rest.split_once(':') {
            Some((hi, step)) => (hi, step.trim().parse::<usize>().map_err(|_| bad())?),
            None => (rest, 1),
        };
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        if step == 0 || lo > hi {
            return Err(bad());
        }
        Ok((lo..=hi).step_by(step).collect())
    } else {
        let mut ns: Vec<usize> = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        ns.sort_unstable();
        ns.dedup();
        Ok(ns)
    }
}

pub fn series_control() -> Result<SeriesControl, Failure> {
    let mut c = SeriesControl::default();
    if let Ok(v) = std::env::var(MAX_TERMS_ENV) {
        c.max_terms = v
            .trim()
            .parse()
            .ok()
            .filter(|&m: &usize| m > 0)
            .ok_or_else(|| Failure::usage(format!("{MAX_TERMS_ENV}={v} is not a positive integer")))?;
    }
    Ok(c)
}

/// Default `rho`: 1 for a quadratic irrational aimed at 0, otherwise 1/2.
pub fn default_rho(theta: &DeclaredReal, beta: &DeclaredReal) -> f64 {
    let quadratic = matches!(theta, DeclaredReal::Surd(_));
    if quadratic && beta.cmp_int(0).is_eq() {
        1.0
    } else {
        0.5
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
    /// Output file; standard output when absent
    #[arg(long, short)]
    pub output: Option<std::path::PathBuf>,
}
