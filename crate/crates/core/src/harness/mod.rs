//! Theorem-level verification, sweeps, reports and configuration files.

pub mod config;
pub mod report;
pub mod sweep;
pub mod verify;

pub use config::{Config, SeriesConfig, WeightConfig};
pub use report::{
    exit_code, write_reports_json, MaxArg, ReportGrid, ReportParams, Verdict, VerificationReport,
};
pub use sweep::{sweep, SweepRow, SweepSource, SweepTable};
pub use verify::{default_suite, verify, verify_suite, VerifyConfig};
