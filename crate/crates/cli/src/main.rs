use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use nucleosim_cli::commands::{Artifact, Command};
use nucleosim_cli::error::{exit, CliError};
use nucleosim_cli::{load_config, sweep, write_artifacts, write_sidecar};

/// Soliton-pair nucleation, inflation and QCD-ball numerics.
#[derive(Parser, Debug)]
#[command(name = "nucleosim", version)]
struct Cli {
    /// potential-scan, vacua, calibrate, soliton, nucleate, inflate, qcdball or eta
    subcommand: Command,
    /// `key = value` configuration file; defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Main output file (required except for `eta`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override applied after the config file, e.g. `--set m=0.2`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let start = Instant::now();
    let cfg = load_config(cli.config.as_deref(), &cli.set)?;
    if cli.out.is_none() && cli.subcommand != Command::Eta {
        return Err(CliError::Usage(format!("{} needs --out <path>", cli.subcommand)));
    }
    let artifacts = sweep::execute(cli.subcommand, &cfg)?;
    if cli.subcommand == Command::Eta {
        for a in &artifacts {
            if let Artifact::Csv { table, .. } = a {
                print!("{}", table.to_csv_string());
            }
        }
    }
    if let Some(out) = &cli.out {
        let written = write_artifacts(&artifacts, out)?;
        let elapsed = start.elapsed().as_secs_f64();
        write_sidecar(out, cli.subcommand, cli.config.as_deref(), &cli.set, &cfg, &written, elapsed)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::PARSE } else { exit::OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nucleosim {}: {e}", cli.subcommand);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
