//! Command implementations behind the `repmult` binary. Every coefficient is
//! computed by at least two backends and cross-checked before it is printed.

pub mod bench;
pub mod coefficients;
pub mod record;
pub mod simulate;

use std::io::Write;

use thiserror::Error;

pub use coefficients::{Backend, Instance, RunOptions};
pub use record::{Problem, ResultRecord, SCHEMA_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("backends disagree: {0}")]
    Mismatch(String),

    #[error(transparent)]
    Core(#[from] repmult::Error),

    #[error("output: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use repmult::Error as E;
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Mismatch(_) => EXIT_MISMATCH,
            CliError::Core(E::SizeLimit { .. }) => EXIT_CAP,
            CliError::Core(E::Parse(_) | E::Domain(_) | E::Unsupported(_)) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

pub fn write_json<W: Write, T: serde::Serialize>(out: &mut W, value: &T) -> CliResult<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

/// Runs `f` on a dedicated pool when a worker count is given.
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> CliResult<T> {
    match workers {
        None => Ok(f()),
        Some(0) => Err(CliError::Usage("--workers must be at least 1".into())),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| CliError::Usage(format!("cannot start {k} workers: {e}")))?;
            Ok(pool.install(f))
        }
    }
}
