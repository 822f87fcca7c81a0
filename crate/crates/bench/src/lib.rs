//! Shared instance builders for the benchmark targets.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fairsub_core::harness::{random_coverage_instance, random_psd_kernel};
use fairsub_core::{
    BoundsMode, BoundsRecipe, ColorId, FairnessSpec, GroundSet, KernelObjectiveInstance,
    ObjectiveOracle,
};

pub struct BenchInstance {
    pub oracle: ObjectiveOracle,
    pub ground: GroundSet,
    pub spec: FairnessSpec,
}

/// Coverage instance with `colors` groups and frequency-derived bounds.
pub fn coverage_bench(n: usize, colors: u32, k: u32, seed: u64) -> BenchInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let oracle = random_coverage_instance(&mut rng, n, 6).into_oracle();
    let ground = GroundSet::new(
        (0..n)
            .map(|_| ColorId(rng.random_range(0..colors)))
            .collect(),
        colors,
    )
    .unwrap();
    let recipe = BoundsRecipe {
        mode: BoundsMode::Multiplicative,
        lower_slack: 0.8,
        upper_slack: 1.4,
        null_color: None,
    };
    let (spec, _) = fairsub_core::proportional_bounds(&ground, k, &recipe).unwrap();
    BenchInstance {
        oracle,
        ground,
        spec,
    }
}

/// Correlated log-det kernel oracle of the given size.
pub fn kernel_bench(n: usize, seed: u64) -> ObjectiveOracle {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    KernelObjectiveInstance::new(random_psd_kernel(&mut rng, n, 8), 0.1, 1e-8)
        .unwrap()
        .into_oracle()
}
