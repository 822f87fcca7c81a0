//! Dataset loading and objective construction.
//!
//! Formats: `edge_list` holds whitespace-separated `u v` pairs per line;
//! `feature_csv`, `kernel_csv` and `movie_csv` hold headerless
//! comma-separated real rows; the colors file holds one raw label per
//! element, dictionary-encoded in first-appearance order. Kernels must be
//! symmetric PSD within 1e-8. Parse errors name the file and line.

use std::path::{Path, PathBuf};

use nalgebra::DMatrix;
use sha2::{Digest, Sha256};

use fairsub_core::{
    CoverageInstance, CutInstance, FacilityLocationInstance, GroundSet, KernelObjectiveInstance,
    MovieUtilityInstance, ObjectiveOracle,
};

use crate::config::{Config, DatasetFormat, ObjectiveFamily};
use crate::error::{CliError, CliResult};

pub const KERNEL_PSD_TOLERANCE: f64 = 1e-8;

/// A loaded dataset: colored ground set plus the objective payload and
/// provenance stamps of every file read.
#[derive(Debug)]
pub struct DatasetBundle {
    pub ground: GroundSet,
    pub labels: Vec<String>,
    pub payload: Payload,
    pub provenance: Vec<FileStamp>,
}

#[derive(Debug)]
pub enum Payload {
    Arcs { arcs: Vec<(u32, u32)>, directed: bool },
    Features(Vec<Vec<f64>>),
    Kernel(DMatrix<f64>),
    Movies(Vec<Vec<f64>>),
}

#[derive(Clone, Debug)]
pub struct FileStamp {
    pub path: String,
    pub sha256: String,
    pub rows: usize,
}

fn stamp(path: &Path, bytes: &[u8], rows: usize) -> FileStamp {
    let digest = Sha256::digest(bytes);
    let sha256 = digest.iter().map(|b| format!("{b:02x}")).collect();
    FileStamp {
        path: path.display().to_string(),
        sha256,
        rows,
    }
}

fn read(path: &Path) -> CliResult<(String, Vec<u8>)> {
    let bytes =
        std::fs::read(path).map_err(|e| CliError::parse(path, format!("cannot read: {e}")))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| CliError::parse(path, "file is not valid UTF-8"))?;
    Ok((text, bytes))
}

fn parse_colors(path: &Path) -> CliResult<(Vec<String>, FileStamp)> {
    let (text, bytes) = read(path)?;
    let labels: Vec<String> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::to_owned)
        .collect();
    if labels.is_empty() {
        return Err(CliError::parse(path, "colors file holds no labels"));
    }
    let stamp = stamp(path, &bytes, labels.len());
    Ok((labels, stamp))
}

fn parse_edge_list(path: &Path, n: usize) -> CliResult<(Vec<(u32, u32)>, FileStamp)> {
    let (text, bytes) = read(path)?;
    let mut arcs = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let (u, v) = match (fields.next(), fields.next(), fields.next()) {
            (Some(u), Some(v), None) => (u, v),
            _ => {
                return Err(CliError::parse_at(
                    path,
                    line_no,
                    format!("expected 'u v', got '{trimmed}'"),
                ))
            }
        };
        let parse = |s: &str| -> CliResult<u32> {
            s.parse::<u32>().map_err(|_| {
                CliError::parse_at(path, line_no, format!("'{s}' is not an element id"))
            })
        };
        let (u, v) = (parse(u)?, parse(v)?);
        for id in [u, v] {
            if id as usize >= n {
                return Err(CliError::parse_at(
                    path,
                    line_no,
                    format!("element {id} out of range ({n} elements in the colors file)"),
                ));
            }
        }
        arcs.push((u, v));
    }
    let stamp = stamp(path, &bytes, arcs.len());
    Ok((arcs, stamp))
}

fn parse_csv_matrix(path: &Path) -> CliResult<(Vec<Vec<f64>>, FileStamp)> {
    let (text, bytes) = read(path)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for cell in trimmed.split(',') {
            let value = cell.trim().parse::<f64>().map_err(|_| {
                CliError::parse_at(path, line_no, format!("'{}' is not numeric", cell.trim()))
            })?;
            row.push(value);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(CliError::parse_at(
                    path,
                    line_no,
                    format!("ragged row: {} cells, expected {}", row.len(), first.len()),
                ));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CliError::parse(path, "matrix file holds no rows"));
    }
    let stamp = stamp(path, &bytes, rows.len());
    Ok((rows, stamp))
}

/// Loads the dataset referenced by `config`, resolving paths against
/// `base` (the config file's directory).
pub fn ingest(config: &Config, base: &Path) -> CliResult<DatasetBundle> {
    let colors_path = resolve(base, &config.dataset.colors);
    let (raw_labels, colors_stamp) = parse_colors(&colors_path)?;
    let (ground, labels) = GroundSet::from_labels(&raw_labels);
    let n = ground.len();

    let payload_path = resolve(base, &config.dataset.path);
    let mut provenance = vec![colors_stamp];
    let payload = match config.dataset.format {
        DatasetFormat::EdgeList => {
            let (arcs, stamp) = parse_edge_list(&payload_path, n)?;
            provenance.push(stamp);
            Payload::Arcs {
                arcs,
                directed: config.dataset.directed,
            }
        }
        DatasetFormat::FeatureCsv | DatasetFormat::MovieCsv => {
            let (rows, stamp) = parse_csv_matrix(&payload_path)?;
            provenance.push(stamp);
            if rows.len() != n {
                return Err(CliError::parse(
                    &payload_path,
                    format!("{} rows but the colors file lists {n} elements", rows.len()),
                ));
            }
            if config.dataset.format == DatasetFormat::FeatureCsv {
                Payload::Features(rows)
            } else {
                Payload::Movies(rows)
            }
        }
        DatasetFormat::KernelCsv => {
            let (rows, stamp) = parse_csv_matrix(&payload_path)?;
            provenance.push(stamp);
            if rows.len() != n || rows[0].len() != n {
                return Err(CliError::parse(
                    &payload_path,
                    format!(
                        "kernel is {}x{} but the colors file lists {n} elements",
                        rows.len(),
                        rows[0].len()
                    ),
                ));
            }
            let kernel = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
            validate_kernel(&kernel, &payload_path)?;
            Payload::Kernel(kernel)
        }
    };

    Ok(DatasetBundle {
        ground,
        labels,
        payload,
        provenance,
    })
}

fn resolve(base: &Path, path: &str) -> PathBuf {
    let p = Path::new(path);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

fn validate_kernel(kernel: &DMatrix<f64>, path: &Path) -> CliResult<()> {
    let n = kernel.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            if (kernel[(i, j)] - kernel[(j, i)]).abs() > KERNEL_PSD_TOLERANCE {
                return Err(CliError::parse(
                    path,
                    format!(
                        "kernel asymmetric at row {i}, column {j}: {} vs {}",
                        kernel[(i, j)],
                        kernel[(j, i)]
                    ),
                ));
            }
        }
    }
    let lambda_min = kernel
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    if lambda_min < -KERNEL_PSD_TOLERANCE {
        return Err(CliError::parse(
            path,
            format!("kernel is not PSD: smallest eigenvalue {lambda_min}"),
        ));
    }
    Ok(())
}

/// Builds the configured objective oracle over the loaded payload.
pub fn build_oracle(bundle: &DatasetBundle, config: &Config, base: &Path) -> CliResult<ObjectiveOracle> {
    let config_path = base.join("<config>");
    let n = bundle.ground.len();
    Ok(match (&bundle.payload, config.objective.family) {
        (Payload::Arcs { arcs, directed }, ObjectiveFamily::Coverage) => {
            CoverageInstance::from_arcs(n, arcs, *directed).into_oracle()
        }
        (Payload::Arcs { arcs, directed }, ObjectiveFamily::Cut) => {
            let mut all = arcs.clone();
            if !directed {
                all.extend(arcs.iter().map(|&(u, v)| (v, u)));
            }
            CutInstance::new(n, all).into_oracle()
        }
        (Payload::Features(rows), ObjectiveFamily::FacilityLocation) => {
            FacilityLocationInstance::from_records(rows.clone())
                .map_err(|e| CliError::parse(&config_path, e.to_string()))?
                .into_oracle()
        }
        (Payload::Kernel(kernel), ObjectiveFamily::KernelLogdet) => {
            KernelObjectiveInstance::new(
                kernel.clone(),
                config.objective.epsilon,
                KERNEL_PSD_TOLERANCE,
            )
            .map_err(|e| CliError::parse(&config_path, e.to_string()))?
            .into_oracle()
        }
        (Payload::Movies(rows), ObjectiveFamily::MovieUtility) => MovieUtilityInstance::new(
            config.objective.user.clone(),
            rows.clone(),
            config.objective.alpha,
        )
        .map_err(|e| CliError::parse(&config_path, e.to_string()))?
        .into_oracle(),
        _ => {
            return Err(CliError::parse(
                &config_path,
                "objective family does not match the loaded payload",
            ))
        }
    })
}
