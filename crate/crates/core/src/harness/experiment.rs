//! Sweep runner: algorithms x budgets x seeds over one instance.
//!
//! Every cell forks the oracle for exact per-run call accounting, streams
//! the ground set in the configured order, and re-evaluates the reported
//! solution as a cross-check. Cell failures are captured per cell rather
//! than aborting the sweep. Cells may run in parallel; results are merged
//! in deterministic (algorithm, k, seed) order.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algorithms::{
    fair_greedy, fair_random, fair_streaming_monotone, fair_streaming_nonmonotone,
    matroid_constraints, random_sample, sieve_streaming, unconstrained_greedy, MonotoneInner,
    RunReport, SwapRule,
};
use crate::error::Result;
use crate::fairness::{ElementId, FairnessSpec, GroundSet};
use crate::harness::bounds::{proportional_bounds, BoundsRecipe};
use crate::objectives::ObjectiveOracle;

/// Order in which ground-set elements arrive on the stream.
#[derive(Clone, Copy, Debug)]
pub enum StreamOrder {
    Natural,
    Shuffled { seed: u64 },
    /// Natural order with one element deferred to the very end — the
    /// adversarial placement for nullifier-style instances.
    ElementLast { element: ElementId },
}

impl StreamOrder {
    pub fn materialize(&self, ground: &GroundSet) -> Vec<ElementId> {
        let mut stream: Vec<ElementId> = ground.elements().collect();
        match *self {
            StreamOrder::Natural => {}
            StreamOrder::Shuffled { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                stream.shuffle(&mut rng);
            }
            StreamOrder::ElementLast { element } => {
                stream.retain(|&e| e != element);
                stream.push(element);
            }
        }
        stream
    }
}

/// One algorithm configuration in a sweep.
#[derive(Clone, Copy, Debug)]
pub enum AlgorithmKind {
    FairGreedy,
    FairStreamingCk { rule: SwapRule },
    FairStreamingFkk { rule: SwapRule },
    FairStreamingNonmonotone { rule: SwapRule },
    SieveStreaming { epsilon: f64 },
    Random,
    FairRandom,
    MatroidConstraints { rule: SwapRule, subsample: bool },
    Greedy,
}

impl AlgorithmKind {
    pub fn name(&self) -> &'static str {
        match self {
            AlgorithmKind::FairGreedy => "fair_greedy",
            AlgorithmKind::FairStreamingCk {
                rule: SwapRule::Theory,
            } => "fair_streaming_ck_theory",
            AlgorithmKind::FairStreamingCk {
                rule: SwapRule::Practical,
            } => "fair_streaming_ck",
            AlgorithmKind::FairStreamingFkk {
                rule: SwapRule::Theory,
            } => "fair_streaming_fkk_theory",
            AlgorithmKind::FairStreamingFkk {
                rule: SwapRule::Practical,
            } => "fair_streaming_fkk",
            AlgorithmKind::FairStreamingNonmonotone { .. } => "fair_streaming_nonmonotone",
            AlgorithmKind::SieveStreaming { .. } => "sieve_streaming",
            AlgorithmKind::Random => "random",
            AlgorithmKind::FairRandom => "fair_random",
            AlgorithmKind::MatroidConstraints { .. } => "matroid_constraints",
            AlgorithmKind::Greedy => "greedy",
        }
    }

    /// Whether runs of this algorithm vary with the seed.
    pub fn is_randomized(&self) -> bool {
        matches!(
            self,
            AlgorithmKind::FairStreamingNonmonotone { .. }
                | AlgorithmKind::Random
                | AlgorithmKind::FairRandom
                | AlgorithmKind::MatroidConstraints {
                    subsample: true,
                    ..
                }
        )
    }

    pub fn run(
        &self,
        stream: &[ElementId],
        oracle: &ObjectiveOracle,
        ground: &GroundSet,
        spec: &FairnessSpec,
        seed: u64,
    ) -> Result<RunReport> {
        match *self {
            AlgorithmKind::FairGreedy => fair_greedy(oracle, ground, spec),
            AlgorithmKind::FairStreamingCk { rule } => {
                fair_streaming_monotone(stream, oracle, ground, spec, MonotoneInner::Ck(rule))
            }
            AlgorithmKind::FairStreamingFkk { rule } => {
                fair_streaming_monotone(stream, oracle, ground, spec, MonotoneInner::Fkk(rule))
            }
            AlgorithmKind::FairStreamingNonmonotone { rule } => {
                fair_streaming_nonmonotone(stream, oracle, ground, spec, rule, seed)
            }
            AlgorithmKind::SieveStreaming { epsilon } => {
                sieve_streaming(stream, oracle, ground, spec, epsilon)
            }
            AlgorithmKind::Random => random_sample(stream, oracle, ground, spec, seed),
            AlgorithmKind::FairRandom => fair_random(stream, oracle, ground, spec, seed),
            AlgorithmKind::MatroidConstraints { rule, subsample } => {
                matroid_constraints(stream, oracle, ground, spec, rule, subsample, seed)
            }
            AlgorithmKind::Greedy => unconstrained_greedy(oracle, ground, spec),
        }
    }
}

/// Where the per-k fairness bounds come from.
#[derive(Clone, Debug)]
pub enum BoundsSource {
    /// Fixed per-color bounds reused for every k.
    Explicit { lower: Vec<u32>, upper: Vec<u32> },
    /// Frequency-derived bounds recomputed for each k.
    Recipe(BoundsRecipe),
}

impl BoundsSource {
    pub fn spec_for(&self, ground: &GroundSet, k: u32) -> Result<(FairnessSpec, bool)> {
        match self {
            BoundsSource::Explicit { lower, upper } => {
                let spec = FairnessSpec::new(lower.clone(), upper.clone(), k)?;
                spec.validate_for(ground)?;
                Ok((spec, false))
            }
            BoundsSource::Recipe(recipe) => proportional_bounds(ground, k, recipe),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub algorithms: Vec<AlgorithmKind>,
    pub bounds: BoundsSource,
    pub k_values: Vec<u32>,
    /// Seeds used by randomized algorithms; deterministic ones run once.
    pub seeds: Vec<u64>,
    pub order: StreamOrder,
    pub jobs: usize,
}

/// Result of one (algorithm, k, seed) cell.
#[derive(Clone, Debug)]
pub struct CellOutcome {
    pub algorithm: &'static str,
    pub k: u32,
    pub seed: Option<u64>,
    pub result: std::result::Result<RunReport, String>,
}

/// Seed-aggregated view of one (algorithm, k) group.
#[derive(Clone, Debug)]
pub struct AggregateRow {
    pub algorithm: &'static str,
    pub k: u32,
    pub runs: usize,
    pub mean_objective: f64,
    pub min_objective: f64,
    pub max_objective: f64,
    pub mean_err: f64,
    pub mean_oracle_calls: f64,
}

#[derive(Clone, Debug, Default)]
pub struct ExperimentOutcome {
    pub cells: Vec<CellOutcome>,
    pub aggregates: Vec<AggregateRow>,
    pub warnings: Vec<String>,
}

pub fn run_experiment(
    config: &ExperimentConfig,
    oracle: &ObjectiveOracle,
    ground: &GroundSet,
) -> ExperimentOutcome {
    let stream = config.order.materialize(ground);
    let mut warnings = Vec::new();

    // Resolve bounds per k up front so repairs warn once, not per cell.
    let mut specs: Vec<(u32, std::result::Result<FairnessSpec, String>)> = Vec::new();
    for &k in &config.k_values {
        match config.bounds.spec_for(ground, k) {
            Ok((spec, repaired)) => {
                if repaired {
                    warnings.push(format!("k = {k}: lower bounds repaired to fit the budget"));
                }
                specs.push((k, Ok(spec)));
            }
            Err(err) => specs.push((k, Err(err.to_string()))),
        }
    }

    struct Cell {
        index: usize,
        algorithm: AlgorithmKind,
        k: u32,
        spec: std::result::Result<FairnessSpec, String>,
        seed: Option<u64>,
    }
    let mut cells = Vec::new();
    for algorithm in &config.algorithms {
        for (k, spec) in &specs {
            let seeds: Vec<Option<u64>> = if algorithm.is_randomized() {
                config.seeds.iter().map(|&s| Some(s)).collect()
            } else {
                vec![None]
            };
            for seed in seeds {
                cells.push(Cell {
                    index: cells.len(),
                    algorithm: *algorithm,
                    k: *k,
                    spec: spec.clone(),
                    seed,
                });
            }
        }
    }

    let run_cell = |cell: &Cell| -> CellOutcome {
        let result = match &cell.spec {
            Err(err) => Err(err.clone()),
            Ok(spec) => {
                let fork = oracle.fork();
                cell.algorithm
                    .run(&stream, &fork, ground, spec, cell.seed.unwrap_or(0))
                    .map_err(|e| e.to_string())
                    .and_then(|report| {
                        let fresh = fork
                            .evaluate_uncounted(&report.solution)
                            .map_err(|e| e.to_string())?;
                        if fresh != report.objective {
                            return Err(format!(
                                "reported objective {} disagrees with re-evaluation {fresh}",
                                report.objective
                            ));
                        }
                        Ok(report)
                    })
            }
        };
        CellOutcome {
            algorithm: cell.algorithm.name(),
            k: cell.k,
            seed: cell.seed,
            result,
        }
    };

    let mut outcomes: Vec<(usize, CellOutcome)> = if config.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| {
            cells
                .par_iter()
                .map(|cell| (cell.index, run_cell(cell)))
                .collect()
        })
    } else {
        cells.iter().map(|cell| (cell.index, run_cell(cell))).collect()
    };
    outcomes.sort_by_key(|(index, _)| *index);
    let cells: Vec<CellOutcome> = outcomes.into_iter().map(|(_, outcome)| outcome).collect();

    // Aggregate randomized algorithms over seeds.
    let mut aggregates = Vec::new();
    for algorithm in &config.algorithms {
        if !algorithm.is_randomized() {
            continue;
        }
        for &k in &config.k_values {
            let group: Vec<&RunReport> = cells
                .iter()
                .filter(|c| c.algorithm == algorithm.name() && c.k == k)
                .filter_map(|c| c.result.as_ref().ok())
                .collect();
            if group.is_empty() {
                continue;
            }
            let objectives: Vec<f64> = group.iter().map(|r| r.objective).collect();
            aggregates.push(AggregateRow {
                algorithm: algorithm.name(),
                k,
                runs: group.len(),
                mean_objective: objectives.iter().sum::<f64>() / group.len() as f64,
                min_objective: objectives.iter().copied().fold(f64::INFINITY, f64::min),
                max_objective: objectives.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                mean_err: group.iter().map(|r| r.fairness_err as f64).sum::<f64>()
                    / group.len() as f64,
                mean_oracle_calls: group.iter().map(|r| r.oracle_calls as f64).sum::<f64>()
                    / group.len() as f64,
            });
        }
    }

    ExperimentOutcome {
        cells,
        aggregates,
        warnings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fairness::ColorId;
    use crate::objectives::CoverageInstance;

    fn small_setup() -> (ObjectiveOracle, GroundSet) {
        let neighbors: Vec<Vec<u32>> = (0..12u32)
            .map(|i| vec![i, (i * 3) % 12, (i * 7 + 1) % 12])
            .collect();
        let colors: Vec<ColorId> = (0..12).map(|i| ColorId(i % 3)).collect();
        (
            CoverageInstance::new(neighbors).into_oracle(),
            GroundSet::new(colors, 3).unwrap(),
        )
    }

    fn config() -> ExperimentConfig {
        ExperimentConfig {
            algorithms: vec![
                AlgorithmKind::Greedy,
                AlgorithmKind::FairGreedy,
                AlgorithmKind::FairStreamingCk {
                    rule: SwapRule::Practical,
                },
                AlgorithmKind::FairRandom,
            ],
            bounds: BoundsSource::Explicit {
                lower: vec![1, 1, 0],
                upper: vec![2, 2, 2],
            },
            k_values: vec![3, 4],
            seeds: vec![1, 2, 3],
            order: StreamOrder::Shuffled { seed: 9 },
            jobs: 1,
        }
    }

    #[test]
    fn relaxation_dominates_and_fair_runs_are_feasible() {
        let (oracle, ground) = small_setup();
        let outcome = run_experiment(&config(), &oracle, &ground);
        for k in [3u32, 4] {
            let get = |name: &str| {
                outcome
                    .cells
                    .iter()
                    .filter(|c| c.algorithm == name && c.k == k)
                    .map(|c| c.result.as_ref().unwrap())
                    .collect::<Vec<_>>()
            };
            let greedy = get("greedy");
            let fair_greedy = get("fair_greedy");
            assert!(greedy[0].objective >= fair_greedy[0].objective);
            for report in get("fair_greedy")
                .into_iter()
                .chain(get("fair_streaming_ck"))
                .chain(get("fair_random"))
            {
                assert!(report.is_feasible());
            }
        }
        // Randomized aggregate exists for fair_random at both budgets.
        assert_eq!(
            outcome
                .aggregates
                .iter()
                .filter(|a| a.algorithm == "fair_random")
                .count(),
            2
        );
    }

    #[test]
    fn reruns_and_parallel_runs_are_identical() {
        let (oracle, ground) = small_setup();
        let sequential = run_experiment(&config(), &oracle, &ground);
        let repeat = run_experiment(&config(), &oracle, &ground);
        let mut parallel_config = config();
        parallel_config.jobs = 3;
        let parallel = run_experiment(&parallel_config, &oracle, &ground);
        let key = |o: &ExperimentOutcome| {
            o.cells
                .iter()
                .map(|c| {
                    (
                        c.algorithm,
                        c.k,
                        c.seed,
                        c.result.as_ref().map(|r| r.solution.clone()).ok(),
                    )
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(key(&sequential), key(&repeat));
        assert_eq!(key(&sequential), key(&parallel));
    }

    #[test]
    fn infeasible_budgets_fail_per_cell() {
        let (oracle, ground) = small_setup();
        let mut cfg = config();
        cfg.k_values = vec![1, 3]; // k = 1 cannot cover lower bounds 1+1.
        let outcome = run_experiment(&cfg, &oracle, &ground);
        assert!(outcome
            .cells
            .iter()
            .filter(|c| c.k == 1)
            .all(|c| c.result.is_err()));
        assert!(outcome
            .cells
            .iter()
            .filter(|c| c.k == 3 && c.algorithm == "fair_greedy")
            .all(|c| c.result.is_ok()));
    }

    #[test]
    fn element_last_order() {
        let (_, ground) = small_setup();
        let order = StreamOrder::ElementLast {
            element: ElementId(4),
        };
        let stream = order.materialize(&ground);
        assert_eq!(*stream.last().unwrap(), ElementId(4));
        assert_eq!(stream.len(), ground.len());
    }
}
