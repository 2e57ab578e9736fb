//! Orchestration for the `semiclass-lab` binary: configuration, suite
//! execution, manifests and reports.

pub mod config;
pub mod error;
pub mod oracle;
pub mod output;
pub mod record;
pub mod report;
pub mod run;

pub use config::{Format, ModelName, Overrides, RunConfig, Suite};
pub use error::HarnessError;
pub use record::{exit_code, Manifest, Status, VerificationRecord};
pub use run::{valid_ids, verify, RunOutcome};

/// Thread cap from `SEMICLASS_THREADS`; applies to both the symbolic and the
/// numeric thread pool.
pub const THREADS_ENV: &str = "SEMICLASS_THREADS";

pub fn init_threads_from_env() -> Result<Option<usize>, HarnessError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => {
            let n: usize = v
                .trim()
                .parse()
                .ok()
                .filter(|n| *n > 0)
                .ok_or_else(|| HarnessError::Usage(format!("{THREADS_ENV} must be a positive integer (got `{v}`)")))?;
            tensor_algebra::exec::init_threads(n);
            Ok(Some(n))
        }
        Err(_) => Ok(None),
    }
}
