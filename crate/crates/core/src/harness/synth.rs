//! Seeded synthetic instances for tests, sweeps and benchmarks.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::fairness::{ColorId, FairnessSpec, GroundSet};
use crate::objectives::{CoverageInstance, FacilityLocationInstance};

/// Random partition of `n` elements into at most `num_colors` groups
/// (every color index stays in range; some groups may be empty).
pub fn random_ground_set(rng: &mut ChaCha8Rng, n: usize, num_colors: u32) -> GroundSet {
    let colors = (0..n)
        .map(|_| ColorId(rng.random_range(0..num_colors)))
        .collect();
    GroundSet::new(colors, num_colors).expect("colors drawn in range")
}

/// Random spec that is feasible for `ground`: lower bounds never exceed
/// group sizes and their sum stays within `k`.
pub fn random_feasible_spec(rng: &mut ChaCha8Rng, ground: &GroundSet, max_k: u32) -> FairnessSpec {
    let num_colors = ground.num_colors();
    let k = rng.random_range(1..=max_k.max(1));
    let mut budget = k;
    let mut lower = vec![0u32; num_colors as usize];
    for c in 0..num_colors {
        let cap = ground.color_size(ColorId(c)).min(budget);
        if cap == 0 {
            continue;
        }
        let l = rng.random_range(0..=cap);
        lower[c as usize] = l;
        budget -= l;
    }
    let upper = lower
        .iter()
        .map(|&l| (l + rng.random_range(0..=k.saturating_sub(l).max(1))).min(k).max(l))
        .collect();
    FairnessSpec::new(lower, upper, k).expect("constructed within bounds")
}

/// Random sparse coverage instance over `n` nodes and a universe of `n`
/// items, with roughly `avg_degree` items covered per node.
pub fn random_coverage_instance(rng: &mut ChaCha8Rng, n: usize, avg_degree: usize) -> CoverageInstance {
    let neighbors = (0..n)
        .map(|_| {
            let degree = rng.random_range(0..=(2 * avg_degree).max(1));
            (0..degree)
                .map(|_| rng.random_range(0..n as u32))
                .collect()
        })
        .collect();
    CoverageInstance::new(neighbors)
}

/// Random facility-location instance: `n` records in `dim` dimensions,
/// records doubling as candidates.
pub fn random_facility_instance(
    rng: &mut ChaCha8Rng,
    n: usize,
    dim: usize,
) -> FacilityLocationInstance {
    let records = (0..n)
        .map(|_| (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect())
        .collect();
    FacilityLocationInstance::from_records(records).expect("consistent dimensions")
}

/// Random symmetric PSD kernel `A A^T / dim` over `n` elements.
pub fn random_psd_kernel(rng: &mut ChaCha8Rng, n: usize, dim: usize) -> nalgebra::DMatrix<f64> {
    let a = nalgebra::DMatrix::from_fn(n, dim, |_, _| rng.random_range(-1.0..1.0));
    &a * a.transpose() / dim as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn specs_are_feasible_for_their_ground_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..200 {
            let ground = random_ground_set(&mut rng, 20, 4);
            let spec = random_feasible_spec(&mut rng, &ground, 8);
            spec.validate_for(&ground).unwrap();
        }
    }

    #[test]
    fn kernels_are_psd() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let kernel = random_psd_kernel(&mut rng, 6, 4);
        let eigen = kernel.symmetric_eigen();
        assert!(eigen.eigenvalues.iter().all(|&l| l >= -1e-9));
    }
}
