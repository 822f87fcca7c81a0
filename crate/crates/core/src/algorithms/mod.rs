//! Maximization algorithms: sequential greedy, the streaming exchange
//! algorithms and their fairness wrappers, plus the unconstrained
//! baselines. Every entry point returns a [`RunReport`] with the selected
//! set, its objective value, fairness violation, exact oracle-call count,
//! and memory statistics.

mod backup;
mod baselines;
mod ck;
mod fkk;
mod greedy;
mod sieve;
mod streaming;

pub use backup::{augment, BackupMode, BackupSets};
pub use baselines::{fair_random, matroid_constraints, random_sample, unconstrained_greedy};
pub use ck::CkState;
pub use fkk::{FkkConfig, FkkState, FKK_PROCESS_PROBABILITY};
pub use greedy::fair_greedy;
pub use sieve::{sieve_streaming, SIEVE_DEFAULT_EPSILON};
pub use streaming::{fair_streaming_monotone, fair_streaming_nonmonotone, MonotoneInner};

use std::time::Duration;

use crate::error::Result;
use crate::fairness::{
    cardinality_overflow, fairness_error, ElementId, FairnessSpec, GroundSet,
};
use crate::objectives::ObjectiveOracle;

/// Which exchange condition a streaming algorithm applies.
///
/// `Theory` is the analyzed rule (swap when the incoming weight is at least
/// twice the outgoing one); `Practical` swaps whenever the exchanged
/// solution does not lose value, which tends to do better empirically.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SwapRule {
    Theory,
    Practical,
}

/// Outcome of one algorithm run.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub algorithm: String,
    /// Selected elements, sorted ascending.
    pub solution: Vec<ElementId>,
    /// Fresh evaluation of the solution (not charged to `oracle_calls`).
    pub objective: f64,
    /// Per-color bound violation of the solution.
    pub fairness_err: u64,
    /// How far the solution overshoots the global budget `k`.
    pub cardinality_overflow: u64,
    /// Counted oracle evaluations performed by the run.
    pub oracle_calls: u64,
    /// Largest number of elements held at any point of the run.
    pub peak_stored_elements: usize,
    /// Size of the inner streaming solution before augmentation, for
    /// wrapper algorithms.
    pub inner_solution_size: Option<usize>,
    pub wall_time: Duration,
    pub seed: Option<u64>,
}

impl RunReport {
    pub fn is_feasible(&self) -> bool {
        self.fairness_err == 0 && self.cardinality_overflow == 0
    }
}

/// Shared tail of every algorithm: sort the solution, re-evaluate it
/// outside the counted path, and measure the fairness violation.
#[allow(clippy::too_many_arguments)]
pub(crate) fn finish_report(
    algorithm: impl Into<String>,
    mut solution: Vec<ElementId>,
    oracle: &ObjectiveOracle,
    ground: &GroundSet,
    spec: &FairnessSpec,
    calls_before: u64,
    peak_stored_elements: usize,
    inner_solution_size: Option<usize>,
    seed: Option<u64>,
    started: std::time::Instant,
) -> Result<RunReport> {
    solution.sort_unstable();
    let objective = oracle.evaluate_uncounted(&solution)?;
    let counts = ground.color_counts(&solution)?;
    Ok(RunReport {
        algorithm: algorithm.into(),
        objective,
        fairness_err: fairness_error(&counts, spec)?,
        cardinality_overflow: cardinality_overflow(&counts, spec),
        oracle_calls: oracle.call_count() - calls_before,
        peak_stored_elements,
        inner_solution_size,
        wall_time: started.elapsed(),
        seed,
        solution,
    })
}

/// Copy of a sorted set with `e` inserted.
pub(crate) fn with_element(set: &[ElementId], e: ElementId) -> Vec<ElementId> {
    let mut out = Vec::with_capacity(set.len() + 1);
    match set.binary_search(&e) {
        Ok(_) => out.extend_from_slice(set),
        Err(pos) => {
            out.extend_from_slice(&set[..pos]);
            out.push(e);
            out.extend_from_slice(&set[pos..]);
        }
    }
    out
}

/// Copy of a sorted set with `out` removed and `e` inserted.
pub(crate) fn with_swap(set: &[ElementId], e: ElementId, out: ElementId) -> Vec<ElementId> {
    let mut result: Vec<ElementId> = set.iter().copied().filter(|&x| x != out).collect();
    let pos = result.binary_search(&e).unwrap_err();
    result.insert(pos, e);
    result
}

pub(crate) fn insert_sorted(set: &mut Vec<ElementId>, e: ElementId) {
    if let Err(pos) = set.binary_search(&e) {
        set.insert(pos, e);
    }
}

pub(crate) fn remove_sorted(set: &mut Vec<ElementId>, e: ElementId) {
    if let Ok(pos) = set.binary_search(&e) {
        set.remove(pos);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_set_helpers() {
        let set = vec![ElementId(1), ElementId(4)];
        assert_eq!(
            with_element(&set, ElementId(2)),
            vec![ElementId(1), ElementId(2), ElementId(4)]
        );
        assert_eq!(
            with_swap(&set, ElementId(0), ElementId(4)),
            vec![ElementId(0), ElementId(1)]
        );
        let mut s = set.clone();
        insert_sorted(&mut s, ElementId(0));
        remove_sorted(&mut s, ElementId(4));
        assert_eq!(s, vec![ElementId(0), ElementId(1)]);
    }
}
