//! Runs a command over every sweep cell and merges the results by cell index.

use nucleosim_core::export::{fmt_f64, Table};
use rayon::prelude::*;

use crate::commands::{run, Artifact, Command};
use crate::config::{ConfigError, RunConfig};
use crate::error::CliError;

pub fn execute(cmd: Command, cfg: &RunConfig) -> Result<Vec<Artifact>, CliError> {
    if cfg.sweeps.is_empty() {
        return run(cmd, cfg);
    }
    if cmd == Command::Calibrate {
        return Err(ConfigError::Validation("calibrate does not accept sweep axes".into()).into());
    }
    let cells = cfg.cells();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.count("workers"))
        .build()
        .map_err(|e| CliError::Io(format!("cannot start worker pool: {e}")))?;
    let results: Vec<Result<Vec<Artifact>, CliError>> =
        pool.install(|| cells.par_iter().map(|cell| run(cmd, &cfg.cell_config(cell))).collect());

    let keys: Vec<&str> = cfg.sweeps.iter().map(|a| a.key).collect();
    let mut merged: Vec<Artifact> = Vec::new();
    for (i, (cell, result)) in cells.iter().zip(results).enumerate() {
        let artifacts = result?;
        if merged.is_empty() {
            merged = artifacts.iter().map(|a| prefixed_empty(a, &keys)).collect::<Result<_, _>>()?;
        }
        let prefix: Vec<String> = std::iter::once(i.to_string()).chain(cell.iter().map(|(_, v)| fmt_f64(*v))).collect();
        for (target, artifact) in merged.iter_mut().zip(artifacts) {
            if let (Artifact::Csv { table: out, .. }, Artifact::Csv { table, .. }) = (target, artifact) {
                for row in table.rows {
                    out.push(prefix.iter().cloned().chain(row).collect());
                }
            }
        }
    }
    Ok(merged)
}

fn prefixed_empty(a: &Artifact, keys: &[&str]) -> Result<Artifact, CliError> {
    match a {
        Artifact::Csv { suffix, table } => {
            let header: Vec<String> = std::iter::once("cell".to_string())
                .chain(keys.iter().map(|k| k.to_string()))
                .chain(table.header.iter().cloned())
                .collect();
            Ok(Artifact::Csv { suffix: *suffix, table: Table::new(&header) })
        }
        Artifact::Text { .. } => Err(CliError::Usage("text artifacts cannot be swept".into())),
    }
}
