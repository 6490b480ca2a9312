//! `weyl-scatter`: scattering-matrix sweeps and the numerical checks around
//! them, written as CSV tables and JSON manifests.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

mod commands;
pub mod format;
pub mod spec;

pub use spec::RunSpec;

/// Environment variable capping the worker count; 0 or unset is automatic.
pub const THREADS_ENV: &str = "WEYL_SCATTER_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_PARTIAL: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Failed(String),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

#[derive(Debug, Parser)]
#[command(name = "weyl-scatter", version, about = "Scattering matrices from Weyl functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CommandArgs {
    /// JSON run-spec; flags override its fields.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[command(flatten)]
    pub run: RunSpec,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// S(λ) over a λ grid: smatrix.csv and manifest.json.
    Smatrix(CommandArgs),
    /// Eigenphases of S(λ) over a λ grid.
    Eigenphases(CommandArgs),
    /// Krein resolvent-formula residuals.
    KreinCheck(CommandArgs),
    /// Singular-value decay against a Schatten bound.
    SvDecay(CommandArgs),
    /// Weyl-function, stationary and rank-one routes on the Jacobi chain.
    StationaryCheck(CommandArgs),
    /// Nevanlinna structure of M(z), and the γ-field identities on the chain.
    NevanlinnaAudit(CommandArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Smatrix(_) => "smatrix",
            Command::Eigenphases(_) => "eigenphases",
            Command::KreinCheck(_) => "krein-check",
            Command::SvDecay(_) => "sv-decay",
            Command::StationaryCheck(_) => "stationary-check",
            Command::NevanlinnaAudit(_) => "nevanlinna-audit",
        }
    }

    fn args(&self) -> &CommandArgs {
        match self {
            Command::Smatrix(a)
            | Command::Eigenphases(a)
            | Command::KreinCheck(a)
            | Command::SvDecay(a)
            | Command::StationaryCheck(a)
            | Command::NevanlinnaAudit(a) => a,
        }
    }
}

/// Files produced by a command, written only once it has finished.
#[derive(Debug, Default)]
pub struct Outcome {
    pub files: Vec<(String, String)>,
    /// Some grid points failed.
    pub partial: bool,
}

/// Worker count from [`THREADS_ENV`], None for automatic.
pub fn thread_setting() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) if v.trim().is_empty() => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(0) => Ok(None),
            Ok(n) => Ok(Some(n)),
            Err(_) => Err(CliError::Config(format!("{THREADS_ENV}='{v}' is not a non-negative integer"))),
        },
    }
}

/// Runs one command and writes its files. Does not touch the file system
/// when the configuration is invalid.
pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    let args = command.args();
    let run = match &args.spec {
        Some(path) => args.run.clone().over(RunSpec::from_file(path)?),
        None => args.run.clone(),
    };
    let outcome = match command {
        Command::Smatrix(_) => commands::smatrix(&run)?,
        Command::Eigenphases(_) => commands::eigenphases(&run)?,
        Command::KreinCheck(_) => commands::krein_check(&run)?,
        Command::SvDecay(_) => commands::sv_decay(&run)?,
        Command::StationaryCheck(_) => commands::stationary_check(&run)?,
        Command::NevanlinnaAudit(_) => commands::nevanlinna_audit(&run)?,
    };
    write_files(&run.out_dir(), &outcome.files)?;
    Ok(outcome)
}

fn write_files(dir: &Path, files: &[(String, String)]) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
    for (name, text) in files {
        let path = dir.join(name);
        std::fs::write(&path, text).map_err(|source| CliError::Io { path, source })?;
    }
    Ok(())
}

/// Full entry point: parses arguments, sets up the worker pool, runs the
/// command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = e.print();
                return if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand { EXIT_CONFIG } else { EXIT_OK };
            }
            let text = e.to_string();
            eprintln!("{}", text.lines().next().unwrap_or("invalid arguments"));
            return EXIT_CONFIG;
        }
    };
    match thread_setting() {
        Ok(n) => {
            let mut b = rayon::ThreadPoolBuilder::new();
            if let Some(n) = n {
                b = b.num_threads(n);
            }
            // a pool already built in this process keeps its size
            let _ = b.build_global();
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CONFIG;
        }
    }
    match execute(&cli.command) {
        Ok(o) if o.partial => EXIT_PARTIAL,
        Ok(_) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {}", e.to_string().replace('\n', " "));
            match e {
                CliError::Failed(_) => EXIT_PARTIAL,
                _ => EXIT_CONFIG,
            }
        }
    }
}
