//! Comparison harness for the Jacobi integral closed forms: seeded sweeps
//! against the quadrature and series oracles, identity suites, and the
//! JSON Lines report format shared by the `jacint` binary.

pub mod config;
pub mod identities;
pub mod record;
pub mod sweep;

pub use config::{Interval, SweepConfig, SweepKind, TOL_ENV};
pub use identities::{run_identities, IdentityRecord};
pub use record::{compare_quad, compare_series, ComparisonRecord, ReportHeader};
pub use sweep::{draw_specs, run_sweep, write_report, write_report_file};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Integral(#[from] jacobi_integrals::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;
