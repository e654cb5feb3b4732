use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use abshield::cli::{execute, table_path, CliError, Command, Format, Outcome, RunConfig};

#[derive(Parser)]
#[command(name = "abshield", version, about = "Aharonov-Bohm spectra and London shielding")]
struct Args {
    #[command(subcommand)]
    command: Cmd,
    /// TOML scenario; the built-in default is used when absent.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Overrides `output.format` from the config.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Ring spectrum and ground-state shift over the flux grid.
    Spectrum,
    /// Field profile and shielding summary.
    Fields,
    /// Interaction energy ledgers.
    Energy,
    /// Two-sheet toy model and diamagnet comparison.
    Toy,
    /// Electron vacuum field next to its screening response.
    Decompose,
    /// Numerical self-checks; exits 4 if any fails.
    Verify,
}

#[derive(ValueEnum, Clone, Copy)]
enum FormatArg {
    Csv,
    Json,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Spectrum => Command::Spectrum,
            Cmd::Fields => Command::Fields,
            Cmd::Energy => Command::Energy,
            Cmd::Toy => Command::Toy,
            Cmd::Decompose => Command::Decompose,
            Cmd::Verify => Command::Verify,
        }
    }
}

fn load(path: Option<&Path>) -> Result<RunConfig, CliError> {
    match path {
        None => Ok(RunConfig::default_scenario()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::io(p, e))?;
            RunConfig::parse(&text)
        }
    }
}

fn emit(outcome: &Outcome, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    for (i, t) in outcome.tables.iter().enumerate() {
        let text = t.render(format);
        match out {
            Some(base) => {
                let path = table_path(base, t, i);
                std::fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
            }
            None => {
                match std::io::stdout().lock().write_all(text.as_bytes()) {
                    // reader went away (`| head`); nothing left to do
                    Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => return Ok(()),
                    r => r.map_err(|e| CliError::io(Path::new("<stdout>"), e))?,
                }
            }
        }
    }
    Ok(())
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("ABSHIELD_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().map_err(|_| CliError::Config {
        key: "ABSHIELD_THREADS".into(),
        message: format!("expected a thread count, got `{raw}`"),
    })?;
    // a second initialisation only fails if a pool already exists
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn run(args: Args) -> Result<(), CliError> {
    configure_threads()?;
    let cfg = load(args.config.as_deref())?;
    let format = match args.format {
        Some(FormatArg::Csv) => Format::Csv,
        Some(FormatArg::Json) => Format::Json,
        None => cfg.output.format,
    };
    let out = args.out.or_else(|| cfg.output.path.as_ref().map(PathBuf::from));
    let outcome = execute(&cfg, args.command.into())?;
    emit(&outcome, format, out.as_deref())?;
    outcome.status()
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("abshield: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
