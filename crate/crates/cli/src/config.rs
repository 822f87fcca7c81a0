//! Experiment configuration: a sectioned `key = value` document.
//!
//! Paths inside the file resolve relative to the file's own directory.
//! The output directory may additionally be overridden through the
//! `FAIRSUB_OUTPUT_DIR` environment variable (the only environment
//! override).

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use fairsub_core::{
    AlgorithmKind, BoundsMode, BoundsRecipe, BoundsSource, ColorId, ElementId, StreamOrder,
    SwapRule,
};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub dataset: DatasetSection,
    pub objective: ObjectiveSection,
    pub bounds: BoundsSection,
    #[serde(default)]
    pub run: Option<RunSection>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetSection {
    pub format: DatasetFormat,
    /// Payload file: edge list or csv matrix, depending on the format.
    pub path: String,
    /// One color label per element, dictionary-encoded on first appearance.
    pub colors: String,
    #[serde(default = "default_true")]
    pub directed: bool,
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DatasetFormat {
    EdgeList,
    FeatureCsv,
    KernelCsv,
    MovieCsv,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectiveSection {
    pub family: ObjectiveFamily,
    /// Diagonal perturbation of log-det kernels.
    #[serde(default = "default_kernel_epsilon")]
    pub epsilon: f64,
    /// Trade-off of the movie utility.
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    /// User feature vector for the movie utility.
    #[serde(default)]
    pub user: Vec<f64>,
}

fn default_kernel_epsilon() -> f64 {
    fairsub_core::DEFAULT_KERNEL_EPSILON
}

fn default_alpha() -> f64 {
    0.85
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectiveFamily {
    Coverage,
    Cut,
    FacilityLocation,
    KernelLogdet,
    MovieUtility,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsSection {
    pub mode: BoundsModeConfig,
    #[serde(default)]
    pub lower: Vec<u32>,
    #[serde(default)]
    pub upper: Vec<u32>,
    #[serde(default)]
    pub lower_slack: f64,
    #[serde(default)]
    pub upper_slack: f64,
    /// Raw label whose lower bound is forced to zero.
    #[serde(default)]
    pub null_color: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundsModeConfig {
    Explicit,
    Additive,
    Multiplicative,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    pub k: Vec<u32>,
    pub algorithms: Vec<String>,
    #[serde(default)]
    pub seeds: Vec<u64>,
    #[serde(default = "default_order")]
    pub stream_order: String,
    #[serde(default)]
    pub shuffle_seed: u64,
    #[serde(default)]
    pub element_last: Option<u32>,
    #[serde(default = "default_swap_rule")]
    pub swap_rule: String,
    #[serde(default = "default_sieve_epsilon")]
    pub sieve_epsilon: f64,
    /// Whether the upper-bounds baseline subsamples its stream.
    #[serde(default)]
    pub subsample_matroid: bool,
    #[serde(default = "default_output_dir")]
    pub output_dir: String,
    /// Record wall-clock milliseconds in results.csv. Off by default so
    /// reruns of the same config are byte-identical.
    #[serde(default)]
    pub wall_clock: bool,
    #[serde(default = "default_jobs")]
    pub jobs: usize,
    #[serde(default = "default_cap")]
    pub brute_force_cap: usize,
}

fn default_order() -> String {
    "natural".into()
}

fn default_swap_rule() -> String {
    "practical".into()
}

fn default_sieve_epsilon() -> f64 {
    fairsub_core::SIEVE_DEFAULT_EPSILON
}

fn default_output_dir() -> String {
    "out".into()
}

fn default_jobs() -> usize {
    1
}

fn default_cap() -> usize {
    fairsub_core::BRUTE_FORCE_DEFAULT_CAP
}

impl Config {
    pub fn load(path: &Path) -> CliResult<(Self, PathBuf)> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::parse(path, format!("cannot read config: {e}")))?;
        let config: Config = toml::from_str(&text)
            .map_err(|e| CliError::parse(path, format!("invalid config: {e}")))?;
        config.validate(path)?;
        let base = path
            .parent()
            .map(Path::to_path_buf)
            .unwrap_or_else(|| PathBuf::from("."));
        Ok((config, base))
    }

    fn validate(&self, path: &Path) -> CliResult<()> {
        let format_ok = matches!(
            (self.dataset.format, self.objective.family),
            (DatasetFormat::EdgeList, ObjectiveFamily::Coverage)
                | (DatasetFormat::EdgeList, ObjectiveFamily::Cut)
                | (DatasetFormat::FeatureCsv, ObjectiveFamily::FacilityLocation)
                | (DatasetFormat::KernelCsv, ObjectiveFamily::KernelLogdet)
                | (DatasetFormat::MovieCsv, ObjectiveFamily::MovieUtility)
        );
        if !format_ok {
            return Err(CliError::parse(
                path,
                format!(
                    "objective family {:?} cannot be built from dataset format {:?}",
                    self.objective.family, self.dataset.format
                ),
            ));
        }
        if self.objective.family == ObjectiveFamily::MovieUtility && self.objective.user.is_empty()
        {
            return Err(CliError::parse(
                path,
                "movie_utility requires a user vector in [objective]",
            ));
        }
        if self.bounds.mode == BoundsModeConfig::Explicit
            && (self.bounds.lower.is_empty() || self.bounds.lower.len() != self.bounds.upper.len())
        {
            return Err(CliError::parse(
                path,
                "explicit bounds need matching lower/upper arrays",
            ));
        }
        Ok(())
    }

    /// Bounds source, with the null color resolved against the label table.
    pub fn bounds_source(&self, labels: &[String], path: &Path) -> CliResult<BoundsSource> {
        let null_color = match &self.bounds.null_color {
            None => None,
            Some(label) => Some(
                labels
                    .iter()
                    .position(|l| l == label)
                    .map(|i| ColorId(i as u32))
                    .ok_or_else(|| {
                        CliError::parse(path, format!("null_color label '{label}' not in dataset"))
                    })?,
            ),
        };
        Ok(match self.bounds.mode {
            BoundsModeConfig::Explicit => BoundsSource::Explicit {
                lower: self.bounds.lower.clone(),
                upper: self.bounds.upper.clone(),
            },
            BoundsModeConfig::Additive => BoundsSource::Recipe(BoundsRecipe {
                mode: BoundsMode::Additive,
                lower_slack: self.bounds.lower_slack,
                upper_slack: self.bounds.upper_slack,
                null_color,
            }),
            BoundsModeConfig::Multiplicative => BoundsSource::Recipe(BoundsRecipe {
                mode: BoundsMode::Multiplicative,
                lower_slack: self.bounds.lower_slack,
                upper_slack: self.bounds.upper_slack,
                null_color,
            }),
        })
    }
}

impl RunSection {
    pub fn stream_order(&self, path: &Path) -> CliResult<StreamOrder> {
        match self.stream_order.as_str() {
            "natural" => Ok(StreamOrder::Natural),
            "shuffled" => Ok(StreamOrder::Shuffled {
                seed: self.shuffle_seed,
            }),
            "element_last" => {
                let element = self.element_last.ok_or_else(|| {
                    CliError::parse(path, "stream_order = element_last needs element_last = <id>")
                })?;
                Ok(StreamOrder::ElementLast {
                    element: ElementId(element),
                })
            }
            other => Err(CliError::parse(
                path,
                format!("unknown stream_order '{other}'"),
            )),
        }
    }

    pub fn swap_rule(&self, path: &Path) -> CliResult<SwapRule> {
        match self.swap_rule.as_str() {
            "theory" => Ok(SwapRule::Theory),
            "practical" => Ok(SwapRule::Practical),
            other => Err(CliError::parse(path, format!("unknown swap_rule '{other}'"))),
        }
    }

    pub fn algorithm_kinds(&self, path: &Path) -> CliResult<Vec<AlgorithmKind>> {
        let rule = self.swap_rule(path)?;
        self.algorithms
            .iter()
            .map(|name| {
                Ok(match name.as_str() {
                    "fair_greedy" => AlgorithmKind::FairGreedy,
                    "fair_streaming_ck" => AlgorithmKind::FairStreamingCk { rule },
                    "fair_streaming_ck_theory" => AlgorithmKind::FairStreamingCk {
                        rule: SwapRule::Theory,
                    },
                    "fair_streaming_fkk" => AlgorithmKind::FairStreamingFkk { rule },
                    "fair_streaming_fkk_theory" => AlgorithmKind::FairStreamingFkk {
                        rule: SwapRule::Theory,
                    },
                    "fair_streaming_nonmonotone" => {
                        AlgorithmKind::FairStreamingNonmonotone { rule }
                    }
                    "sieve_streaming" => AlgorithmKind::SieveStreaming {
                        epsilon: self.sieve_epsilon,
                    },
                    "random" => AlgorithmKind::Random,
                    "fair_random" => AlgorithmKind::FairRandom,
                    "matroid_constraints" => AlgorithmKind::MatroidConstraints {
                        rule,
                        subsample: self.subsample_matroid,
                    },
                    "greedy" => AlgorithmKind::Greedy,
                    other => {
                        return Err(CliError::parse(
                            path,
                            format!("unknown algorithm '{other}'"),
                        ))
                    }
                })
            })
            .collect()
    }

    pub fn output_dir(&self, base: &Path) -> PathBuf {
        if let Ok(dir) = std::env::var("FAIRSUB_OUTPUT_DIR") {
            return PathBuf::from(dir);
        }
        let configured = Path::new(&self.output_dir);
        if configured.is_absolute() {
            configured.to_path_buf()
        } else {
            base.join(configured)
        }
    }
}
