//! Reference baselines: unconstrained random and greedy selection, a
//! feasible random selection, and the exchange algorithm run against the
//! upper-bounds-only matroid. All reports measure fairness violations
//! against the full constraint set, whatever the algorithm itself honored.

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algorithms::{
    fair_greedy, finish_report, FkkConfig, FkkState, RunReport, SwapRule,
};
use crate::error::Result;
use crate::fairness::{ElementId, FairnessSpec, GroundSet};
use crate::objectives::ObjectiveOracle;
use crate::tracker::ExtendabilityTracker;

/// Uniform reservoir of `k` elements; no fairness constraints.
pub fn random_sample(
    stream: &[ElementId],
    oracle: &ObjectiveOracle,
    ground: &GroundSet,
    spec: &FairnessSpec,
    seed: u64,
) -> Result<RunReport> {
    let started = Instant::now();
    let calls_before = oracle.call_count();
    let k = spec.k() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reservoir: Vec<ElementId> = Vec::with_capacity(k);
    for (idx, &e) in stream.iter().enumerate() {
        let seen = idx as u64 + 1;
        if reservoir.len() < k {
            reservoir.push(e);
        } else if k > 0 {
            let slot = rng.random_range(0..seen);
            if (slot as usize) < k {
                reservoir[slot as usize] = e;
            }
        }
    }
    let peak = reservoir.len();
    finish_report(
        "random", reservoir, oracle, ground, spec, calls_before, peak, None, Some(seed), started,
    )
}

/// Random feasible selection: one uniform reservoir of `lower_c` elements
/// per color, plus a residual reservoir of `k - sum lower_c` elements whose
/// color counts are capped at `upper_c - lower_c` through a tracker, so the
/// union always satisfies every bound.
pub fn fair_random(
    stream: &[ElementId],
    oracle: &ObjectiveOracle,
    ground: &GroundSet,
    spec: &FairnessSpec,
    seed: u64,
) -> Result<RunReport> {
    spec.validate_for(ground)?;
    let started = Instant::now();
    let calls_before = oracle.call_count();

    let num_colors = spec.num_colors();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lower_buffers: Vec<Vec<ElementId>> = vec![Vec::new(); num_colors as usize];
    let mut lower_seen = vec![0u64; num_colors as usize];

    let residual_spec = FairnessSpec::new(
        vec![0; num_colors as usize],
        spec.upper_bounds()
            .iter()
            .zip(spec.lower_bounds())
            .map(|(&u, &l)| u - l)
            .collect(),
        spec.k() - spec.lower_sum(),
    )?;
    let mut residual_tracker = ExtendabilityTracker::new(&residual_spec);
    let residual_cap = residual_spec.k() as usize;
    let mut residual: Vec<ElementId> = Vec::new();
    let mut residual_seen = 0u64;

    for &e in stream {
        let c = ground.color(e);
        let cap = spec.lower(c) as usize;
        if cap > 0 {
            lower_seen[c.index()] += 1;
            let buffer = &mut lower_buffers[c.index()];
            if buffer.len() < cap {
                buffer.push(e);
            } else {
                let slot = rng.random_range(0..lower_seen[c.index()]);
                if (slot as usize) < cap {
                    buffer[slot as usize] = e;
                }
            }
        }
        if residual_cap == 0 {
            continue;
        }
        residual_seen += 1;
        if residual.len() < residual_cap {
            if residual_tracker.candidate(c) {
                residual_tracker.update(c)?;
                residual.push(e);
            }
            continue;
        }
        let slot = rng.random_range(0..residual_seen);
        if (slot as usize) < residual.len() {
            let out = residual[slot as usize];
            if residual_tracker.swap_allowed(c, ground.color(out)) {
                residual_tracker.apply_swap(c, ground.color(out))?;
                residual[slot as usize] = e;
            }
        }
    }

    let peak = lower_buffers.iter().map(Vec::len).sum::<usize>() + residual.len();
    let mut solution: Vec<ElementId> = lower_buffers.into_iter().flatten().collect();
    solution.extend(residual);
    solution.sort_unstable();
    solution.dedup();
    finish_report(
        "fair_random", solution, oracle, ground, spec, calls_before, peak, None, Some(seed),
        started,
    )
}

/// The subsampled exchange algorithm against the laminar matroid of upper
/// bounds only (`|S| <= k`, `|S and V_c| <= upper_c`): no lower bounds, no
/// backups, no augmentation.
pub fn matroid_constraints(
    stream: &[ElementId],
    oracle: &ObjectiveOracle,
    ground: &GroundSet,
    spec: &FairnessSpec,
    rule: SwapRule,
    subsample: bool,
    seed: u64,
) -> Result<RunReport> {
    let started = Instant::now();
    let calls_before = oracle.call_count();
    let relaxed = spec.upper_only();
    let config = if subsample {
        FkkConfig::non_monotone(rule, seed)
    } else {
        FkkConfig::monotone(rule)
    };
    let mut state = FkkState::new(&relaxed, ground, config);
    let mut peak = 0usize;
    for &e in stream {
        state.process(e, oracle, ground)?;
        peak = peak.max(state.stored_elements());
    }
    let solution = state.solution().to_vec();
    finish_report(
        "matroid_constraints",
        solution,
        oracle,
        ground,
        spec,
        calls_before,
        peak,
        None,
        subsample.then_some(seed),
        started,
    )
}

/// Plain greedy under the cardinality budget only; color bounds ignored.
pub fn unconstrained_greedy(
    oracle: &ObjectiveOracle,
    ground: &GroundSet,
    spec: &FairnessSpec,
) -> Result<RunReport> {
    let relaxed = FairnessSpec::unconstrained(spec.num_colors(), spec.k());
    let inner = fair_greedy(oracle, ground, &relaxed)?;
    let started = Instant::now();
    let mut report = finish_report(
        "greedy",
        inner.solution,
        oracle,
        ground,
        spec,
        0,
        inner.peak_stored_elements,
        None,
        None,
        started,
    )?;
    report.oracle_calls = inner.oracle_calls;
    report.wall_time = inner.wall_time;
    Ok(report)
}
