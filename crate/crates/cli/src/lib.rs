//! Driver for `nucleosim`: configuration, subcommands, sweeps and file output.

pub mod commands;
pub mod config;
pub mod error;
pub mod sweep;

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use commands::{Artifact, Command};
use config::{parse_document, RunConfig};
use error::CliError;

/// Path of a companion artifact: `run.csv` + `scales` → `run.scales.csv`.
pub fn companion_path(out: &Path, suffix: &str) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match out.extension() {
        Some(ext) => format!("{stem}.{suffix}.{}", ext.to_string_lossy()),
        None => format!("{stem}.{suffix}"),
    };
    out.with_file_name(name)
}

/// Sidecar holding run metadata, kept out of the data files.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(".meta");
    out.with_file_name(name)
}

/// Reads the config file (if any) and applies `--set` overrides in order.
pub fn load_config(path: Option<&Path>, overrides: &[String]) -> Result<RunConfig, CliError> {
    let text = match path {
        Some(p) => fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
        None => String::new(),
    };
    let mut cfg = parse_document(&text)?;
    for o in overrides {
        cfg.apply_override(o)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Writes every artifact and returns the paths written.
pub fn write_artifacts(artifacts: &[Artifact], out: &Path) -> Result<Vec<PathBuf>, CliError> {
    let mut written = Vec::new();
    for a in artifacts {
        let path = match a {
            Artifact::Csv { suffix, .. } | Artifact::Text { suffix, .. } => {
                suffix.map_or_else(|| out.to_path_buf(), |s| companion_path(out, s))
            }
        };
        match a {
            Artifact::Csv { table, .. } => {
                let f = File::create(&path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                table.write_csv(BufWriter::new(f))?;
            }
            Artifact::Text { text, .. } => {
                fs::write(&path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            }
        }
        written.push(path);
    }
    Ok(written)
}

pub fn write_sidecar(
    out: &Path,
    cmd: Command,
    config: Option<&Path>,
    overrides: &[String],
    cfg: &RunConfig,
    written: &[PathBuf],
    elapsed_s: f64,
) -> Result<(), CliError> {
    let mut text = format!("command = {cmd}\nversion = {}\n", env!("CARGO_PKG_VERSION"));
    if let Some(c) = config {
        text.push_str(&format!("config = {}\n", c.display()));
    }
    for o in overrides {
        text.push_str(&format!("set = {o}\n"));
    }
    for w in written {
        text.push_str(&format!("artifact = {}\n", w.display()));
    }
    text.push_str(&format!("elapsed_s = {elapsed_s:.3}\n[config]\n"));
    text.push_str(&cfg.to_text());
    let path = sidecar_path(out);
    fs::write(&path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn output_paths() {
        assert_eq!(companion_path(Path::new("out/run.csv"), "scales"), Path::new("out/run.scales.csv"));
        assert_eq!(companion_path(Path::new("run"), "scales"), Path::new("run.scales"));
        assert_eq!(sidecar_path(Path::new("out/run.csv")), Path::new("out/run.csv.meta"));
    }
}
