use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Serialize;

use crate::error::{CliError, CliResult};

/// Directory used for output files when `--out` is not given.
pub const OUT_DIR_ENV: &str = "HOOKE_OUT_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Clone, Debug)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output path; defaults to `$HOOKE_OUT_DIR/<name>`, else stdout for
    /// tables and the working directory for profiles.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl OutputArgs {
    /// Destination of a table, `None` for stdout.
    pub fn table_path(&self, default_name: &str) -> Option<PathBuf> {
        self.out.clone().or_else(|| env_dir().map(|d| d.join(default_name)))
    }

    /// Destination of a profile file, always a path.
    pub fn file_path(&self, default_name: &str) -> PathBuf {
        self.table_path(default_name).unwrap_or_else(|| PathBuf::from(default_name))
    }

    pub fn extension(&self) -> &'static str {
        match self.format {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

fn env_dir() -> Option<PathBuf> {
    std::env::var_os(OUT_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    let io = |source| CliError::Io { path: path.display().to_string(), source };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(io)?;
    }
    std::fs::write(path, contents).map_err(io)
}

/// Writes to `path` or prints to stdout.
pub fn emit(path: Option<&Path>, contents: &str) -> CliResult<()> {
    match path {
        Some(p) => write_file(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable value");
    s.push('\n');
    s
}

/// `dir/stem.suffix` next to `path`.
pub fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "out".into());
    path.with_file_name(format!("{stem}.{suffix}"))
}
