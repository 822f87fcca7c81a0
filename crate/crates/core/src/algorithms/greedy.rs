//! Sequential greedy under fairness constraints.
//!
//! Repeatedly adds the element with the largest marginal gain among those
//! keeping the selection extendable, until no element can be added. The
//! final selection is a base of the extendability matroid and therefore
//! feasible. 1/2-approximate for monotone objectives.

use std::time::Instant;

use crate::algorithms::{finish_report, insert_sorted, with_element, RunReport};
use crate::error::Result;
use crate::fairness::{ElementId, FairnessSpec, GroundSet};
use crate::objectives::ObjectiveOracle;
use crate::tracker::ExtendabilityTracker;

pub fn fair_greedy(
    oracle: &ObjectiveOracle,
    ground: &GroundSet,
    spec: &FairnessSpec,
) -> Result<RunReport> {
    spec.validate_for(ground)?;
    let started = Instant::now();
    let calls_before = oracle.call_count();

    let mut tracker = ExtendabilityTracker::new(spec);
    let mut solution: Vec<ElementId> = Vec::new();
    let mut current_value = 0.0;
    let mut in_solution = vec![false; ground.len()];

    loop {
        // Ascending scan + strict improvement = smallest-id tie-breaking.
        let mut best: Option<(f64, ElementId, f64)> = None;
        for e in ground.elements() {
            if in_solution[e.index()] || !tracker.candidate(ground.color(e)) {
                continue;
            }
            let value = oracle.evaluate(&with_element(&solution, e))?;
            let gain = value - current_value;
            if best.is_none_or(|(g, _, _)| gain > g) {
                best = Some((gain, e, value));
            }
        }
        let Some((_, chosen, value)) = best else {
            break;
        };
        tracker.update(ground.color(chosen))?;
        insert_sorted(&mut solution, chosen);
        in_solution[chosen.index()] = true;
        current_value = value;
    }

    let peak = solution.len();
    finish_report(
        "fair_greedy",
        solution,
        oracle,
        ground,
        spec,
        calls_before,
        peak,
        None,
        None,
        started,
    )
}
