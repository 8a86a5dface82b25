use std::path::PathBuf;
use std::process::ExitCode;

use arrpi1_cli::commands::{self, CliError};
use clap::{Parser, Subcommand};

/// Fundamental groups of complex line arrangement complements.
#[derive(Parser)]
#[command(name = "arrpi1", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline on an affine arrangement; JSON report on stdout.
    Analyze {
        path: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: usize,
        #[arg(long)]
        no_timings: bool,
    },
    /// Print the presentation read off the wiring diagram.
    Present {
        path: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: usize,
        /// Change generators so the first actual vertex reads as a commutator of plain products.
        #[arg(long)]
        rebased: bool,
    },
    /// Print the wiring diagram, optionally drawing it as SVG.
    Wiring {
        path: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: usize,
        #[arg(long, value_name = "OUT")]
        svg: Option<PathBuf>,
    },
    /// Freeness of a projective hyperplane arrangement.
    Projective {
        path: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: usize,
        #[arg(long)]
        no_timings: bool,
    },
    /// Run every arrangement file in a directory.
    Batch {
        dir: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: usize,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Also run the invariant suite on each file.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        no_timings: bool,
    },
}

fn run(cli: Cli) -> Result<(String, u8), CliError> {
    match cli.command {
        Command::Analyze { path, seed, no_timings } => Ok((commands::analyze(&path, seed, !no_timings)?, 0)),
        Command::Present { path, seed, rebased } => Ok((commands::present(&path, seed, rebased)?, 0)),
        Command::Wiring { path, seed, svg } => Ok((commands::wiring(&path, seed, svg.as_deref())?, 0)),
        Command::Projective { path, seed, no_timings } => Ok((commands::projective_cmd(&path, seed, !no_timings)?, 0)),
        Command::Batch { dir, seed, out, verify, no_timings } => {
            let report = commands::batch(&dir, seed, verify, !no_timings)?;
            let text = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
            let code = report.exit_code();
            match out {
                Some(path) => {
                    std::fs::write(&path, text).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
                    let s = &report.summary;
                    Ok((format!("{} files: {} ok, {} errored, {} invariant violations\n", s.files, s.ok, s.errored, s.invariant_violations), code))
                }
                None => Ok((text, code)),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Usage errors are input errors; exit code 2 is reserved.
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error [{}]: {e}", e.code());
            ExitCode::from(e.exit_code())
        }
    }
}
