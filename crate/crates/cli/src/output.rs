//! Machine-readable outputs: results.csv and the run manifest.
//!
//! Rows are written in deterministic cell order and floats carry 12
//! significant digits, so identical configs and seeds reproduce the file
//! byte for byte (wall-clock timing is zeroed unless explicitly enabled).

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use fairsub_core::ExperimentOutcome;

use crate::config::Config;
use crate::error::{CliError, CliResult};
use crate::ingest::FileStamp;

/// 12 significant digits, stable across runs.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x:.11e}")
    }
}

pub fn write_results_csv(
    path: &Path,
    outcome: &ExperimentOutcome,
    wall_clock: bool,
) -> CliResult<()> {
    let mut out = String::new();
    out.push_str("algorithm,k,seed,objective,err,oracle_calls,peak_stored_elements,wall_ms\n");
    for cell in &outcome.cells {
        let seed = cell.seed.map(|s| s.to_string()).unwrap_or_default();
        match &cell.result {
            Ok(report) => {
                let wall_ms = if wall_clock {
                    report.wall_time.as_millis()
                } else {
                    0
                };
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    cell.algorithm,
                    cell.k,
                    seed,
                    format_float(report.objective),
                    report.fairness_err,
                    report.oracle_calls,
                    report.peak_stored_elements,
                    wall_ms
                ));
            }
            Err(message) => {
                out.push_str(&format!(
                    "{},{},{},error: {},,,,\n",
                    cell.algorithm,
                    cell.k,
                    seed,
                    message.replace(',', ";")
                ));
            }
        }
    }
    write_atomic(path, out.as_bytes())
}

#[derive(Serialize)]
struct Manifest<'a> {
    resolved_config: &'a Config,
    dataset: ManifestDataset,
    warnings: &'a [String],
}

#[derive(Serialize)]
struct ManifestDataset {
    elements: usize,
    colors: u32,
    labels: Vec<String>,
    files: Vec<ManifestFile>,
}

#[derive(Serialize)]
struct ManifestFile {
    path: String,
    sha256: String,
    rows: usize,
}

pub fn write_manifest(
    path: &Path,
    config: &Config,
    elements: usize,
    colors: u32,
    labels: &[String],
    files: &[FileStamp],
    warnings: &[String],
) -> CliResult<()> {
    let manifest = Manifest {
        resolved_config: config,
        dataset: ManifestDataset {
            elements,
            colors,
            labels: labels.to_vec(),
            files: files
                .iter()
                .map(|f| ManifestFile {
                    path: f.path.clone(),
                    sha256: f.sha256.clone(),
                    rows: f.rows,
                })
                .collect(),
        },
        warnings,
    };
    let text = toml::to_string_pretty(&manifest)
        .map_err(|e| CliError::parse(path, format!("cannot serialize manifest: {e}")))?;
    write_atomic(path, text.as_bytes())
}

fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)
            .map_err(|e| CliError::parse(path, format!("cannot create directory: {e}")))?;
    }
    let mut file = std::fs::File::create(path)
        .map_err(|e| CliError::parse(path, format!("cannot create: {e}")))?;
    file.write_all(bytes)
        .map_err(|e| CliError::parse(path, format!("cannot write: {e}")))?;
    Ok(())
}
