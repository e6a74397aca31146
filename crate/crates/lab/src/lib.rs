//! Named verification suites over `ulat-core`, with deterministic JSON and
//! markdown reports.

pub mod check;
pub mod config;
pub mod examples;
pub mod report;
pub mod suites;

pub use config::{Format, SuiteConfig};
pub use report::{Report, SuiteRecord, SuiteRun, SuiteStatus};
pub use suites::{run_suite, run_suites};

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error("unknown example `{0}` (expected ex-r, ex or o1o2)")]
    UnknownExample(String),
    #[error("check document: {0}")]
    Document(String),
    #[error(transparent)]
    Core(#[from] ulat_core::Error),
}

impl LabError {
    /// Process exit code: 2 for usage errors, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::UnknownSuite(_) | LabError::Config(_) | LabError::UnknownExample(_) | LabError::Document(_) => 2,
            LabError::Core(_) => 1,
        }
    }
}
