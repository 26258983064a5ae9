//! Output rows. CSV columns and JSON keys are the struct fields, in order.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use qpr_core::asymptotics::RegimeReport;
use qpr_core::diophantine::DiophantineWitness;
use qpr_core::LogPolarComplex;
use serde::Serialize;

use crate::args::TableFormat;
use crate::Failure;

/// Ordinary components are left empty beyond this decimal exponent.
const ORDINARY_LIMIT: f64 = 300.0;

fn ordinary(v: LogPolarComplex) -> (Option<f64>, Option<f64>) {
    if v.is_zero() || v.log10_mag().abs() <= ORDINARY_LIMIT {
        let c = v.to_complex();
        (Some(c.re), Some(c.im))
    } else {
        (None, None)
    }
}

fn log10_or_none(v: LogPolarComplex) -> Option<f64> {
    (!v.is_zero()).then(|| v.log10_mag())
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct EvalRow {
    pub function: String,
    pub re: Option<f64>,
    pub im: Option<f64>,
    pub log10_mag: Option<f64>,
    pub phase_deg: f64,
}

impl EvalRow {
    pub fn new(function: &str, v: LogPolarComplex) -> Self {
        let (re, im) = ordinary(v);
        Self {
            function: function.to_string(),
            re,
            im,
            log10_mag: log10_or_none(v),
            phase_deg: v.phase.to_degrees(),
        }
    }

    pub fn text(&self) -> String {
        let plain = self.log10_mag.map_or(true, |l| (-5.0..=15.0).contains(&l));
        let num = |x: f64| if plain { format!("{x}") } else { format!("{x:e}") };
        let mut s = match (self.re, self.im) {
            (Some(re), Some(im)) if im == 0.0 => format!("{}\n", num(re)),
            (Some(re), Some(im)) => {
                format!("{}{}{}i\n", num(re), if im < 0.0 { "-" } else { "+" }, num(im.abs()))
            }
            _ => String::new(),
        };
        match self.log10_mag {
            Some(l) => s += &format!("log10|value| = {l}, arg = {} deg\n", self.phase_deg),
            None => s += "value is zero\n",
        }
        s
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub case_id: u8,
    pub n: usize,
    pub eligible: bool,
    pub violated: bool,
    pub observed_error: f64,
    pub bound: f64,
    pub ratio: f64,
    pub exact_re: Option<f64>,
    pub exact_im: Option<f64>,
    pub exact_log10_mag: Option<f64>,
    pub exact_phase_deg: f64,
    pub main_re: f64,
    pub main_im: f64,
    pub nu: Option<u64>,
    pub m: Option<i64>,
    pub m1: Option<i64>,
    pub beta: Option<f64>,
    pub residual: Option<f64>,
    pub rho: Option<f64>,
    pub eligibility_notes: String,
    pub notes: String,
}

impl From<&RegimeReport> for ReportRow {
    fn from(r: &RegimeReport) -> Self {
        let (exact_re, exact_im) = ordinary(r.exact);
        let w = r.witness.as_ref();
        Self {
            case_id: r.case_id,
            n: r.n,
            eligible: r.eligible,
            violated: r.violated(),
            observed_error: r.observed_error,
            bound: r.bound,
            ratio: r.ratio(),
            exact_re,
            exact_im,
            exact_log10_mag: log10_or_none(r.exact),
            exact_phase_deg: r.exact.phase.to_degrees(),
            main_re: r.main.re,
            main_im: r.main.im,
            nu: r.nu,
            m: w.map(|w| w.m),
            m1: w.and_then(|w| w.m1),
            beta: w.map(|w| w.target_beta),
            residual: w.map(|w| w.residual),
            rho: w.map(|w| w.rho).filter(|r| r.is_finite()),
            eligibility_notes: r.eligibility_notes.clone(),
            notes: r.notes.join("; "),
        }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct WitnessRow {
    pub n: usize,
    pub m: i64,
    pub m1: Option<i64>,
    pub beta: f64,
    pub residual: f64,
    pub rho: f64,
}

impl From<&DiophantineWitness> for WitnessRow {
    fn from(w: &DiophantineWitness) -> Self {
        Self {
            n: w.n,
            m: w.m,
            m1: w.m1,
            beta: w.target_beta,
            residual: w.residual,
            rho: w.rho,
        }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub tau: String,
    pub theta: String,
    pub case_id: u8,
    pub rows: usize,
    pub eligible_rows: usize,
    pub fitted_slope: f64,
    pub predicted_order: String,
    pub predicted_slope: f64,
    pub ratio: f64,
}

pub fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn write_table<T: Serialize>(out: &mut dyn Write, format: TableFormat, rows: &[T]) -> Result<(), Failure> {
    match format {
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        TableFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)?;
        }
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_text_forms() {
        let r = EvalRow::new("x", LogPolarComplex::from_real(0.375));
        assert!(r.text().starts_with("0.375\n"));
        let z = EvalRow::new("x", LogPolarComplex::from_real(0.0));
        assert_eq!(z.text(), "0\nvalue is zero\n");
        let huge = EvalRow::new("x", LogPolarComplex::from_log(1000.0));
        assert_eq!(huge.re, None);
        let big = EvalRow::new("x", LogPolarComplex::from_real(-2.5e40));
        let first = big.text().lines().next().unwrap().to_string();
        assert!(first.contains('e'));
        assert!((first.parse::<f64>().unwrap() / -2.5e40 - 1.0).abs() < 1e-14);
        assert!(huge.text().starts_with("log10|value| = 434.29"));
    }

    #[test]
    fn csv_header_follows_fields() {
        let mut buf = Vec::new();
        let rows = [WitnessRow {
            n: 12,
            m: 17,
            m1: None,
            beta: 0.0,
            residual: -0.03,
            rho: 1.0,
        }];
        write_table(&mut buf, TableFormat::Csv, &rows).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s.lines().next(), Some("n,m,m1,beta,residual,rho"));
        assert_eq!(s.lines().nth(1), Some("12,17,,0.0,-0.03,1.0"));
    }
}
