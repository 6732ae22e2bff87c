//! Batch verification runs over the `jetmoment` library: suites of residual
//! checks, a JSON or CSV report, and tables and plots of the obstruction
//! cocycle.

pub mod config;
pub mod output;
pub mod suites;

pub use config::{ConfigError, Format, RunConfig, Suite, TolOverride};
pub use output::{write_atomic, write_report, write_tau_table};
pub use suites::{run, tau_table, Entry, Report, TableCochain, TauTable};

/// Process exit status.
pub mod exit {
    pub const PASS: u8 = 0;
    pub const SUITE_FAILURE: u8 = 1;
    pub const CONFIG_ERROR: u8 = 2;
}
