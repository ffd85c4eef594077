//! Check records and their JSON / CSV serialisations.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::SuiteConfig;
use crate::error::{Error, Result};

/// Bumped whenever a field is added, removed or reordered.
pub const REPORT_VERSION: &str = "1.0";

/// One verified inequality instance.
///
/// `ratio` is lhs/rhs (NaN, written as null, when rhs = 0). `flag` marks rows
/// that are reported but not asserted, e.g. `one_sided_bound`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: String,
    pub params: String,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub stderr_mc: Option<f64>,
    pub runtime_ms: u64,
    pub seed: u64,
    pub flag: Option<String>,
}

/// CSV column order.
pub const CSV_COLUMNS: &[&str] = &[
    "check_id",
    "params",
    "lhs",
    "rhs",
    "ratio",
    "tolerance",
    "pass",
    "stderr_mc",
    "runtime_ms",
    "seed",
    "flag",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            other => Err(Error::Config(format!("unknown report format `{other}` (json or csv)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
}

/// Top-level JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub config_echo: Option<SuiteConfig>,
    pub checks: Vec<CheckReport>,
    pub summary: Summary,
}

impl Report {
    pub fn new(checks: Vec<CheckReport>, config: Option<&SuiteConfig>) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        Self {
            version: REPORT_VERSION.into(),
            config_echo: config.cloned(),
            summary: Summary {
                total: checks.len(),
                passed,
            },
            checks,
        }
    }
}

fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x}")
    } else {
        String::new()
    }
}

/// Writes the report in the chosen format.
pub fn write_report<W: Write>(report: &Report, format: ReportFormat, out: W) -> Result<()> {
    match format {
        ReportFormat::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, report)?;
            out.write_all(b"\n")?;
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_COLUMNS)?;
            for c in &report.checks {
                w.write_record([
                    c.check_id.clone(),
                    c.params.clone(),
                    num(c.lhs),
                    num(c.rhs),
                    num(c.ratio),
                    num(c.tolerance),
                    c.pass.to_string(),
                    c.stderr_mc.map(num).unwrap_or_default(),
                    c.runtime_ms.to_string(),
                    c.seed.to_string(),
                    c.flag.clone().unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// Writes `reports` (with the config echoed, if given) to `path`.
pub fn emit_report(reports: &[CheckReport], config: Option<&SuiteConfig>, format: ReportFormat, path: &Path) -> Result<()> {
    let report = Report::new(reports.to_vec(), config);
    let file = BufWriter::new(File::create(path)?);
    write_report(&report, format, file)
}
