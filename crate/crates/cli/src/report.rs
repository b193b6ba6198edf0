use std::io::{self, Write};

use serde::Serialize;

use crate::config::{Params, ReportFormat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Fail,
}

/// One family of inputs checked against one identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub input: String,
    pub cases: usize,
    pub status: Status,
    /// Terms in the first nonzero residual, 0 when the check passed.
    pub residual_terms: usize,
    /// First failing input and what went wrong there.
    pub witness: Option<String>,
}

impl Check {
    pub fn ok(&self) -> bool {
        self.status == Status::Ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: Params,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn new(suite: String, params: Params, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(Check::ok);
        VerificationReport {
            suite,
            params,
            checks,
            passed,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut s = format!(
            "suite {}  dim {}  weight ≤ {}  arity ≤ {}  bar length ≤ {}  {}",
            self.suite,
            self.params.dim,
            self.params.max_weight,
            self.params.max_arity,
            self.params.max_bar_length,
            self.params.sweep
        );
        if self.params.sweep == "sampled" {
            s += &format!(" ({} per sweep, seed {})", self.params.samples, self.params.seed);
        }
        if let Some(i) = &self.params.inject {
            s += &format!("  inject {i}");
        }
        s.push('\n');
        for c in &self.checks {
            let status = if c.ok() { "ok  " } else { "FAIL" };
            s += &format!("{status} {:<width$} {:>7}  {}", c.name, c.cases, c.input);
            if let Some(w) = &c.witness {
                s += &format!("\n     witness: {w}");
                if c.residual_terms > 0 {
                    s += &format!(" ({} residual terms)", c.residual_terms);
                }
            }
            s.push('\n');
        }
        let failed = self.failures().count();
        s += &if self.passed {
            format!("passed: {} checks\n", self.checks.len())
        } else {
            format!("FAILED: {failed} of {} checks\n", self.checks.len())
        };
        s
    }
}

pub fn emit_report(report: &VerificationReport, format: ReportFormat, out: &mut impl Write) -> io::Result<()> {
    match format {
        ReportFormat::Text => out.write_all(report.to_text().as_bytes()),
        ReportFormat::Json => {
            out.write_all(report.to_json().as_bytes())?;
            out.write_all(b"\n")
        }
    }
}
