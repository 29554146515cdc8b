//! Verification harness shared by the command-line tool and the test suites.

pub mod config;
pub mod report;
pub mod suites;

pub use config::{OutputFormat, ParameterGrid, RunConfig, CONFIG_ENV_VAR};
pub use report::{ReportValue, SuiteSummary, VerificationReport};
pub use suites::{run_suite, run_suite_where, SUITE_NAMES};
