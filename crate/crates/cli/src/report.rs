//! Report records, serialization, and exit-status mapping.
//!
//! Every check contributes one row with a fixed schema
//! `(check, error, bound, pass, seconds)`. Rows are deterministic given the
//! configuration and seed; the `seconds` column is wall-clock and excluded
//! from that guarantee.

use std::io::Write;

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub error: f64,
    pub bound: f64,
    pub pass: bool,
    pub seconds: f64,
}

impl CheckRecord {
    /// A check that passes when the measured error stays within the bound.
    pub fn within(check: impl Into<String>, error: f64, bound: f64, seconds: f64) -> Self {
        CheckRecord {
            check: check.into(),
            error,
            bound,
            pass: error.is_finite() && error <= bound,
            seconds,
        }
    }

    /// A check that passes when the measured value exceeds the bound (used
    /// for contrast witnesses, where large is good).
    pub fn exceeds(check: impl Into<String>, value: f64, bound: f64, seconds: f64) -> Self {
        CheckRecord {
            check: check.into(),
            error: value,
            bound,
            pass: value.is_finite() && value > bound,
            seconds,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub order: Option<usize>,
    pub depth: u32,
    pub tol_scale: f64,
    pub overall_pass: bool,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new(
        suite: impl Into<String>,
        seed: u64,
        order: Option<usize>,
        depth: u32,
        tol_scale: f64,
        checks: Vec<CheckRecord>,
    ) -> Self {
        let overall_pass = checks.iter().all(|c| c.pass);
        VerificationReport {
            suite: suite.into(),
            seed,
            order,
            depth,
            tol_scale,
            overall_pass,
            checks,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,error,bound,pass,seconds\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},{:.17e},{:.17e},{},{:.3}\n",
                c.check, c.error, c.bound, c.pass, c.seconds
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn write_to(&self, mut w: impl Write, format: Format) -> std::io::Result<()> {
        match format {
            Format::Csv => w.write_all(self.to_csv().as_bytes()),
            Format::Json => {
                w.write_all(self.to_json().as_bytes())?;
                w.write_all(b"\n")
            }
        }
    }

    /// 0 when everything passed, 1 when some numerical check failed.
    pub fn exit_code(&self) -> i32 {
        if self.overall_pass {
            0
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}
