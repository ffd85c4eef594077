//! Verification harness: configuration, suites and reports.

mod config;
mod report;
mod suites;
mod sweep;

pub use config::{default_params, default_tolerance, SuiteConfig, SUITES};
pub use report::{emit_report, write_report, CheckReport, Report, ReportFormat, Summary, CSV_COLUMNS, REPORT_VERSION};
pub use suites::{run_suite, DILATIONS, ONE_SIDED};
pub use sweep::{sweep, write_sweep_csv, SweepParam, SweepQuantity, SweepRow};
