//! Streaming submodular maximization under per-group fairness constraints.
//!
//! A selection over a colored ground set is *fair* when every color group
//! is represented within prescribed lower/upper bounds and the global
//! budget `k` holds. This crate provides:
//!
//! * the constraint model and the O(1) extendability tracker that turns
//!   the family of extendable sets into a matroid membership oracle
//!   ([`fairness`], [`tracker`]);
//! * counted set-function oracles for the benchmark objective families:
//!   coverage, facility location, log-determinant kernels, movie utility,
//!   directed cuts, and the adversarial nullifier ([`objectives`]);
//! * sequential and single-pass maximization: fair greedy, two exchange
//!   streaming algorithms with backup-and-augment fairness wrappers,
//!   threshold sieving, and randomized baselines ([`algorithms`]);
//! * a brute-force optimum, bound-setting recipes, synthetic and
//!   hardness-instance generators, and a sweep runner ([`harness`]).

pub mod algorithms;
pub mod error;
pub mod fairness;
pub mod harness;
pub mod objectives;
pub mod tracker;

pub use algorithms::{
    augment, fair_greedy, fair_random, fair_streaming_monotone, fair_streaming_nonmonotone,
    matroid_constraints, random_sample, sieve_streaming, unconstrained_greedy, BackupMode,
    BackupSets, CkState, FkkConfig, FkkState, MonotoneInner, RunReport, SwapRule,
    FKK_PROCESS_PROBABILITY, SIEVE_DEFAULT_EPSILON,
};
pub use error::{Error, Result};
pub use fairness::{
    cardinality_overflow, excess_ratio, excess_ratio_f64, fairness_error, is_extendable,
    is_feasible, ColorId, ElementId, FairnessSpec, GroundSet,
};
pub use harness::{
    brute_force_opt, choose_rational, gen_hardness, proportional_bounds, run_experiment,
    segment_coloring, AlgorithmKind, BoundsMode, BoundsRecipe, BoundsSource, ExperimentConfig,
    ExperimentOutcome, HardnessInstance, StreamOrder, BRUTE_FORCE_DEFAULT_CAP,
};
pub use objectives::{
    verify_submodularity, verify_submodularity_exhaustive, CoverageInstance, CutInstance,
    FacilityLocationInstance, KernelObjectiveInstance, MovieUtilityInstance, NullifierInstance,
    ObjectiveOracle, SetFunction, SubmodularityReport, DEFAULT_KERNEL_EPSILON,
};
pub use tracker::ExtendabilityTracker;
