//! Command-line front end: MSA optimization, alignment scoring, tree
//! comparison and the ZDT1 effort-allocation ablation.
//!
//! Exit codes: 0 on success, 1 for runtime or data errors, 2 for usage and
//! configuration errors. Reports are tab-separated with a header line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

mod bench;
mod optimize;
mod score;
mod treecmp;

pub use bench::{bench, median, BenchArgs, BenchProblem, BenchReport};
pub use optimize::OptimizeArgs;
pub use score::ScoreArgs;
pub use treecmp::TreecmpArgs;

#[derive(Debug, Parser)]
#[command(name = "moead-adf", version, about = "Decomposition-based multi-objective alignment search")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)]
pub enum Command {
    /// Optimize an alignment of the input sequences and write one alignment
    /// and tree per subproblem.
    Optimize(OptimizeArgs),
    /// Score an alignment under the selected objectives.
    Score(ScoreArgs),
    /// False-negative rate of estimated trees against a true tree.
    Treecmp(TreecmpArgs),
    /// Paired hypervolume comparison of adaptive and uniform effort on ZDT1.
    Bench(BenchArgs),
}

/// A failed command and its exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub(crate) fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

pub(crate) fn runtime(e: impl std::fmt::Display) -> CliError {
    CliError::Runtime(e.to_string())
}

/// Reads an input file; a missing or unreadable input is a usage error.
pub(crate) fn read_input(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

pub(crate) fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| runtime(format!("cannot create {}: {e}", dir.display())))?;
    }
    std::fs::write(path, contents).map_err(|e| runtime(format!("cannot write {}: {e}", path.display())))
}

/// Regular files in `dir` with one of `extensions`, sorted by name.
pub(crate) fn list_files(dir: &Path, extensions: &[&str]) -> CliResult<Vec<PathBuf>> {
    let entries = std::fs::read_dir(dir).map_err(|e| usage(format!("cannot read {}: {e}", dir.display())))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry.map_err(runtime)?.path();
        let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
        if path.is_file() && extensions.contains(&ext) {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let result = match cli.command {
        Command::Optimize(a) => optimize::run(a, out, err),
        Command::Score(a) => score::run(a, out),
        Command::Treecmp(a) => treecmp::run(a, out),
        Command::Bench(a) => bench::run(a, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
