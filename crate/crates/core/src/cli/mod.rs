//! Command-line front end: argument and config-file parsing, dispatch, and
//! CSV/JSON rendering.
//!
//! Exit codes: 0 success, 1 configuration error, 2 computation error,
//! 3 reference mismatch under `--golden`. Failures print a one-line JSON
//! record to stderr.

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub mod config;
pub mod output;
pub mod run;

pub use config::{Args, Format, RunConfig, Subcommand};
pub use output::{emit_plot_data, PlotSource, Table};
pub use run::{run, Artifact};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Compute(#[from] crate::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Compute(_) => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "ConfigError",
            CliError::Compute(e) => e.kind(),
        }
    }

    /// `{"error": kind, "message": ..., "exit_code": n}`.
    pub fn record(&self) -> String {
        serde_json::json!({
            "error": self.kind(),
            "message": self.to_string(),
            "exit_code": self.exit_code(),
        })
        .to_string()
    }
}

/// Parse `args`, run, and write the artifact to `--out` or `stdout`.
/// Returns the process exit code.
pub fn execute<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let parsed = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            let _ = write!(stdout, "{e}");
            return 0;
        }
        Err(e) => return fail(stderr, &CliError::Config(e.kind().to_string() + ": " + &first_line(&e.to_string()))),
    };
    let result = RunConfig::from_args(parsed).and_then(|cfg| run(&cfg).map(|a| (cfg, a)));
    let (cfg, artifact) = match result {
        Ok(v) => v,
        Err(e) => return fail(stderr, &e),
    };
    let written = match &cfg.output_path {
        Some(path) if !cfg.golden => std::fs::write(path, &artifact.text)
            .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display()))),
        _ => stdout
            .write_all(artifact.text.as_bytes())
            .map_err(|e| CliError::Config(format!("cannot write output: {e}"))),
    };
    if let Err(e) = written {
        return fail(stderr, &e);
    }
    if artifact.mismatch {
        3
    } else {
        0
    }
}

fn first_line(s: &str) -> String {
    s.lines().next().unwrap_or("").trim_start_matches("error: ").to_string()
}

fn fail(stderr: &mut dyn Write, e: &CliError) -> i32 {
    let _ = writeln!(stderr, "{}", e.record());
    e.exit_code()
}
