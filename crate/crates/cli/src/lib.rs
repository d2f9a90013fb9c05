//! Command-line front end: job specs, dispatch, and result records.

pub mod args;
mod run;
mod sweep;

use std::fmt;
use std::path::{Path, PathBuf};

use arith_torsion::Error;
use serde::{Deserialize, Serialize};
use serde_json::json;

pub use args::{Cli, Command};
pub use run::run;
pub use sweep::{sweep_csv, SweepRow};

pub const TOOL: &str = "arith-torsion";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Everything needed to re-run a job.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    #[serde(flatten)]
    pub command: Command,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub tool: String,
    pub version: String,
    pub job: JobSpec,
    pub result: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

#[derive(Debug)]
pub enum Output {
    Record(Box<ResultRecord>),
    Csv(String),
}

/// What `run` produced, and the process exit status it implies.
#[derive(Debug)]
pub struct Outcome {
    pub output: Output,
    /// Nonzero when a verification ran and failed.
    pub exit_code: i32,
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    InFile { path: PathBuf, source: Error },
    Io { path: PathBuf, message: String },
}

pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_VALIDATION: i32 = 4;
pub const EXIT_CAPACITY: i32 = 5;
pub const EXIT_IO: i32 = 6;
pub const EXIT_INTERNAL: i32 = 70;

impl CliError {
    fn core(&self) -> Option<&Error> {
        match self {
            CliError::Core(e) | CliError::InFile { source: e, .. } => Some(e),
            CliError::Io { .. } => None,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.core() {
            None => EXIT_IO,
            Some(Error::Parse { .. }) => EXIT_PARSE,
            Some(Error::Capacity { .. } | Error::CapExceeded(_)) => EXIT_CAPACITY,
            Some(Error::Internal(_)) => EXIT_INTERNAL,
            Some(_) => EXIT_VALIDATION,
        }
    }

    /// Machine-readable error object for stderr.
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = json!({
            "kind": self.core().map_or("io", Error::kind),
            "message": self.to_string(),
            "exit_code": self.exit_code(),
        });
        if let Some(Error::Parse { line, column, .. }) = self.core() {
            v["line"] = json!(line);
            v["column"] = json!(column);
        }
        match self {
            CliError::InFile { path, .. } | CliError::Io { path, .. } => v["path"] = json!(path),
            CliError::Core(_) => {}
        }
        json!({ "error": v })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::InFile { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Io { path, message } => write!(f, "{}: {message}", path.display()),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub(crate) fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

pub(crate) fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// Attaches `path` to errors raised while interpreting a file's contents.
pub(crate) fn in_file<T>(path: &Path, r: arith_torsion::Result<T>) -> Result<T, CliError> {
    r.map_err(|source| CliError::InFile {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    #[test]
    fn job_spec_round_trips() {
        let cli = Cli::parse_from(["arith-torsion", "verify", "--lens", "5,1", "--seed", "3"]);
        let job = JobSpec {
            command: cli.command,
            seed: cli.seed,
            output: cli.output,
        };
        let text = serde_json::to_string(&job).unwrap();
        assert!(text.starts_with(r#"{"command":"verify""#), "{text}");
        assert_eq!(serde_json::from_str::<JobSpec>(&text).unwrap(), job);
    }

    #[test]
    fn exit_codes_by_kind() {
        assert_eq!(CliError::from(Error::parse(1, 1, "x")).exit_code(), EXIT_PARSE);
        assert_eq!(CliError::from(Error::CapExceeded("x".into())).exit_code(), EXIT_CAPACITY);
        assert_eq!(CliError::from(Error::Invalid("x".into())).exit_code(), EXIT_VALIDATION);
        let io = CliError::Io {
            path: "p".into(),
            message: "gone".into(),
        };
        assert_eq!(io.exit_code(), EXIT_IO);
        assert_eq!(io.to_json()["error"]["path"], "p");
    }
}
