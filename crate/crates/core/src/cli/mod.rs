//! Command layer shared by the `abshield` binary and the FFI crate.

mod commands;
mod config;
mod table;
mod verify;

use std::path::{Path, PathBuf};

pub use commands::VERSION;
pub use config::{Format, RunConfig, SolverKind, DEFAULT_CONFIG};
pub use table::{fmt_float, Cell, ResultTable};
pub use verify::{run_checks, Check};

use crate::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error at `{key}`: {message}")]
    Config { key: String, message: String },
    #[error("{stage} failed: {source}")]
    Solver {
        stage: &'static str,
        #[source]
        source: Error,
    },
    #[error("cannot access {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{failed} verification check(s) failed")]
    VerifyFailed { failed: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Config { .. } => 2,
            CliError::Solver { .. } => 3,
            CliError::VerifyFailed { .. } => 4,
        }
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.to_path_buf(), source }
    }
}

pub(crate) fn solver(stage: &'static str) -> impl Fn(Error) -> CliError {
    move |source| CliError::Solver { stage, source }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Spectrum,
    Fields,
    Energy,
    Toy,
    Decompose,
    Verify,
}

impl Command {
    pub const ALL: [Command; 6] =
        [Command::Spectrum, Command::Fields, Command::Energy, Command::Toy, Command::Decompose, Command::Verify];

    pub fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Fields => "fields",
            Command::Energy => "energy",
            Command::Toy => "toy",
            Command::Decompose => "decompose",
            Command::Verify => "verify",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Command::ALL.into_iter().find(|c| c.name() == name)
    }
}

/// Tables a command produced. A failed `verify` still carries its table;
/// `failed` counts the checks that did not pass.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub tables: Vec<ResultTable>,
    pub failed: usize,
}

impl Outcome {
    pub fn status(&self) -> Result<(), CliError> {
        match self.failed {
            0 => Ok(()),
            failed => Err(CliError::VerifyFailed { failed }),
        }
    }
}

pub fn execute(cfg: &RunConfig, cmd: Command) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let tables = match cmd {
        Command::Spectrum => vec![commands::spectrum(cfg)?],
        Command::Fields => commands::fields(cfg)?,
        Command::Energy => vec![commands::energy(cfg)?],
        Command::Toy => vec![commands::toy(cfg)?],
        Command::Decompose => vec![commands::decompose(cfg)?],
        Command::Verify => {
            let checks = run_checks(cfg).map_err(solver("verification"))?;
            let mut t = ResultTable::new("verify", &["check", "value", "tolerance", "pass"]);
            t.meta("version", VERSION);
            for (k, v) in cfg.echo() {
                t.meta(&k, v);
            }
            let failed = checks.iter().filter(|c| !c.pass).count();
            for c in checks {
                t.push(vec![c.name.into(), c.value.into(), c.tolerance.into(), c.pass.into()]);
            }
            return Ok(Outcome { tables: vec![t], failed });
        }
    };
    Ok(Outcome { tables, failed: 0 })
}

/// Output path of the `index`-th table: the first goes to `base`, later
/// ones get `_<suffix>` before the extension (`out.csv` -> `out_profile.csv`).
pub fn table_path(base: &Path, table: &ResultTable, index: usize) -> PathBuf {
    if index == 0 {
        return base.to_path_buf();
    }
    let suffix = table.name.rsplit('_').next().unwrap_or(&table.name);
    let stem = base.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match base.extension() {
        Some(ext) => format!("{stem}_{suffix}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{suffix}"),
    };
    base.with_file_name(name)
}
