//! Ground-truth oracle, bound-setting recipes, instance generators, and
//! the experiment runner.

mod bounds;
mod brute_force;
mod experiment;
mod hardness;
mod synth;

pub use bounds::{proportional_bounds, segment_coloring, BoundsMode, BoundsRecipe};
pub use brute_force::{brute_force_opt, BRUTE_FORCE_DEFAULT_CAP};
pub use experiment::{
    run_experiment, AggregateRow, AlgorithmKind, BoundsSource, CellOutcome, ExperimentConfig,
    ExperimentOutcome, StreamOrder,
};
pub use hardness::{choose_rational, gen_hardness, HardnessInstance};
pub use synth::{
    random_coverage_instance, random_facility_instance, random_feasible_spec, random_ground_set,
    random_psd_kernel,
};
