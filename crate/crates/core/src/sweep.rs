//! Parameter sweeps over marginals and correlation gap, with CSV output.

use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::welfare_compare;
use crate::error::Error;
use crate::prior::JointPrior;

pub const CSV_HEADER: &str =
    "m_sigma1,m_rho1,c,case_rational,case_naive,v_rational,v_naive,u_rational,u_naive,nu,strict";

/// Inclusive arithmetic range written `start:end:step`, or a single value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRange {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl GridRange {
    pub fn single(value: f64) -> Self {
        Self {
            start: value,
            end: value,
            step: 1.0,
        }
    }

    /// Grid values, snapped to 12 decimals so that e.g. `-0.1 + 2 * 0.05`
    /// lands on exactly zero.
    pub fn values(&self) -> Vec<f64> {
        let n = ((self.end - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n)
            .map(|i| {
                let v = self.start + i as f64 * self.step;
                let snapped = (v * 1e12).round() / 1e12;
                if snapped == 0.0 {
                    0.0
                } else {
                    snapped
                }
            })
            .collect()
    }

    /// Fails unless every value lies in the open interval `(lo, hi)`.
    pub fn check_within(&self, name: &str, lo: f64, hi: f64) -> Result<(), Error> {
        if self.start > lo && self.end < hi {
            Ok(())
        } else {
            Err(Error::InvalidRange(format!(
                "{name} range {}:{} must lie within ({lo}, {hi})",
                self.start, self.end
            )))
        }
    }
}

impl FromStr for GridRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::InvalidRange(format!("`{s}` is not of the form a:b:step"));
        let parts: Vec<&str> = s.split(':').collect();
        let nums = parts
            .iter()
            .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<Vec<f64>, _>>()?;
        let range = match nums.as_slice() {
            [v] => GridRange::single(*v),
            [start, end, step] => GridRange {
                start: *start,
                end: *end,
                step: *step,
            },
            _ => return Err(bad()),
        };
        if !(range.start.is_finite() && range.end.is_finite() && range.step.is_finite()) {
            return Err(bad());
        }
        if range.step <= 0.0 {
            return Err(Error::InvalidRange(format!("step in `{s}` must be positive")));
        }
        if range.end < range.start {
            return Err(Error::InvalidRange(format!("`{s}` has end below start")));
        }
        Ok(range)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub m_sigma1: f64,
    pub m_rho1: f64,
    pub c: f64,
    pub case_rational: &'static str,
    pub case_naive: &'static str,
    pub v_rational: f64,
    pub v_naive: f64,
    pub u_rational: f64,
    pub u_naive: f64,
    pub nu: f64,
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    pub rows: Vec<SweepRow>,
    /// Grid points whose gap leaves some cell outside `[0, 1]`.
    pub skipped: usize,
}

fn row_at(m_sigma1: f64, m_rho1: f64, c: f64) -> Option<SweepRow> {
    let prior = JointPrior::from_marginals_and_gap(m_sigma1, m_rho1, c).ok()?;
    let w = welfare_compare(&prior);
    Some(SweepRow {
        m_sigma1,
        m_rho1,
        c,
        case_rational: w.rational.case_name(),
        case_naive: w.naive.case_name(),
        v_rational: w.v_rational,
        v_naive: w.v_naive,
        u_rational: w.u_rational,
        u_naive: w.u_naive,
        nu: w.nu,
        strict: w.strict,
    })
}

/// Evaluates every grid point in lexicographic `(m_sigma1, m_rho1, c)` order.
pub fn sweep(m_sigma1: &GridRange, m_rho1: &GridRange, c: &GridRange) -> Result<SweepOutput, Error> {
    m_sigma1.check_within("m-sigma1", 0.0, 1.0)?;
    m_rho1.check_within("m-rho1", 0.0, 0.5)?;
    let mut points = Vec::new();
    for s in m_sigma1.values() {
        for r in m_rho1.values() {
            for g in c.values() {
                points.push((s, r, g));
            }
        }
    }
    let evaluated: Vec<Option<SweepRow>> = points.par_iter().map(|&(s, r, g)| row_at(s, r, g)).collect();
    let skipped = evaluated.iter().filter(|r| r.is_none()).count();
    Ok(SweepOutput {
        rows: evaluated.into_iter().flatten().collect(),
        skipped,
    })
}

/// Fixed 15-decimal rendering; never prints a negative zero.
pub fn fmt_decimal(x: f64) -> String {
    let s = format!("{x:.15}");
    if s.trim_start_matches('-').bytes().all(|b| b == b'0' || b == b'.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

/// Writes the header, one line per row, and a `#` footer when points were
/// skipped. LF line endings.
pub fn write_csv<W: Write>(out: &mut W, sweep: &SweepOutput) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in &sweep.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            fmt_decimal(r.m_sigma1),
            fmt_decimal(r.m_rho1),
            fmt_decimal(r.c),
            r.case_rational,
            r.case_naive,
            fmt_decimal(r.v_rational),
            fmt_decimal(r.v_naive),
            fmt_decimal(r.u_rational),
            fmt_decimal(r.u_naive),
            fmt_decimal(r.nu),
            r.strict
        )?;
    }
    if sweep.skipped > 0 {
        writeln!(out, "# skipped {} infeasible grid points", sweep.skipped)?;
    }
    Ok(())
}
