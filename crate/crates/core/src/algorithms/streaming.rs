//! Single-pass fairness wrappers.
//!
//! An inner streaming algorithm maximizes over the extendability matroid
//! while backup buffers collect repair material per color; at stream end
//! the inner solution is augmented to a feasible one. The wrapper adds
//! exactly `sum_c lower_c <= k` stored elements on top of the inner state
//! and performs no oracle calls of its own.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algorithms::{
    augment, finish_report, BackupSets, CkState, FkkConfig, FkkState, RunReport, SwapRule,
};
use crate::error::Result;
use crate::fairness::{ElementId, FairnessSpec, GroundSet};
use crate::objectives::ObjectiveOracle;

/// Inner algorithm run by the monotone wrapper.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MonotoneInner {
    Ck(SwapRule),
    /// The subsampled exchange algorithm with its subsampling turned off.
    Fkk(SwapRule),
}

impl MonotoneInner {
    fn name(self) -> &'static str {
        match self {
            MonotoneInner::Ck(SwapRule::Theory) => "fair_streaming_ck_theory",
            MonotoneInner::Ck(SwapRule::Practical) => "fair_streaming_ck",
            MonotoneInner::Fkk(SwapRule::Theory) => "fair_streaming_fkk_theory",
            MonotoneInner::Fkk(SwapRule::Practical) => "fair_streaming_fkk",
        }
    }
}

/// Monotone fairness wrapper: inner exchange algorithm plus first-arrival
/// backups. Expects a monotone oracle.
pub fn fair_streaming_monotone(
    stream: &[ElementId],
    oracle: &ObjectiveOracle,
    ground: &GroundSet,
    spec: &FairnessSpec,
    inner: MonotoneInner,
) -> Result<RunReport> {
    spec.validate_for(ground)?;
    let started = Instant::now();
    let calls_before = oracle.call_count();

    #[allow(clippy::large_enum_variant)]
    enum Inner {
        Ck(CkState),
        Fkk(FkkState),
    }
    let mut backups = BackupSets::first_fill(spec);
    let mut peak = 0usize;
    let mut state = match inner {
        MonotoneInner::Ck(rule) => Inner::Ck(CkState::new(spec, ground, rule)),
        MonotoneInner::Fkk(rule) => {
            Inner::Fkk(FkkState::new(spec, ground, FkkConfig::monotone(rule)))
        }
    };

    for &e in stream {
        match &mut state {
            Inner::Ck(s) => s.process(e, oracle, ground)?,
            Inner::Fkk(s) => s.process(e, oracle, ground)?,
        }
        backups.offer(e, ground.color(e));
        let stored = match &state {
            Inner::Ck(s) => s.stored_elements(),
            Inner::Fkk(s) => s.stored_elements(),
        } + backups.stored_elements();
        peak = peak.max(stored);
    }

    let inner_solution = match &state {
        Inner::Ck(s) => s.solution().to_vec(),
        Inner::Fkk(s) => s.solution().to_vec(),
    };
    let solution = augment(&inner_solution, &backups, spec, ground)?;
    finish_report(
        inner.name(),
        solution,
        oracle,
        ground,
        spec,
        calls_before,
        peak,
        Some(inner_solution.len()),
        None,
        started,
    )
}

/// Non-monotone fairness wrapper: subsampled exchange inner algorithm plus
/// per-color reservoir backups. The seed drives both the subsampling and
/// the reservoirs through separate RNG streams.
pub fn fair_streaming_nonmonotone(
    stream: &[ElementId],
    oracle: &ObjectiveOracle,
    ground: &GroundSet,
    spec: &FairnessSpec,
    rule: SwapRule,
    seed: u64,
) -> Result<RunReport> {
    spec.validate_for(ground)?;
    let started = Instant::now();
    let calls_before = oracle.call_count();

    let mut config = FkkConfig::non_monotone(rule, seed);
    config.seed = seed;
    let mut state = FkkState::new(spec, ground, config);
    let mut reservoir_rng = ChaCha8Rng::seed_from_u64(seed);
    reservoir_rng.set_stream(1);
    let mut backups = BackupSets::reservoir(spec, reservoir_rng);

    let mut peak = 0usize;
    for &e in stream {
        state.process(e, oracle, ground)?;
        backups.offer(e, ground.color(e));
        peak = peak.max(state.stored_elements() + backups.stored_elements());
    }
    let inner_solution = state.solution().to_vec();
    let solution = augment(&inner_solution, &backups, spec, ground)?;
    finish_report(
        "fair_streaming_nonmonotone",
        solution,
        oracle,
        ground,
        spec,
        calls_before,
        peak,
        Some(inner_solution.len()),
        Some(seed),
        started,
    )
}
