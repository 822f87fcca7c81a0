//! Exhaustive ground truth.
//!
//! Depth-first enumeration of feasible sets, pruned through the
//! extendability tracker: a prefix that cannot extend to a feasible set is
//! never descended into. Sets are visited in lexicographic order of their
//! sorted member lists and improvements are strict, so the reported witness
//! is the lexicographically smallest maximizer.

use crate::error::{Error, Result};
use crate::fairness::{is_feasible, ElementId, FairnessSpec, GroundSet};
use crate::objectives::ObjectiveOracle;
use crate::tracker::ExtendabilityTracker;

/// Default refusal threshold for exhaustive enumeration.
pub const BRUTE_FORCE_DEFAULT_CAP: usize = 20;

/// Exact maximum of the objective over all feasible sets, with the
/// lexicographically smallest witness. Refuses ground sets larger than
/// `cap`.
pub fn brute_force_opt(
    oracle: &ObjectiveOracle,
    ground: &GroundSet,
    spec: &FairnessSpec,
    cap: usize,
) -> Result<(f64, Vec<ElementId>)> {
    if ground.len() > cap {
        return Err(Error::CapExceeded {
            what: "brute-force ground set",
            n: ground.len(),
            cap,
        });
    }
    spec.validate_for(ground)?;

    let mut best: Option<(f64, Vec<ElementId>)> = None;
    let mut current: Vec<ElementId> = Vec::new();
    let mut tracker = ExtendabilityTracker::new(spec);
    descend(
        oracle,
        ground,
        spec,
        0,
        &mut current,
        &mut tracker,
        &mut best,
    )?;
    best.ok_or_else(|| Error::Infeasible("no feasible set exists".into()))
}

fn descend(
    oracle: &ObjectiveOracle,
    ground: &GroundSet,
    spec: &FairnessSpec,
    next: u32,
    current: &mut Vec<ElementId>,
    tracker: &mut ExtendabilityTracker,
    best: &mut Option<(f64, Vec<ElementId>)>,
) -> Result<()> {
    if is_feasible(tracker.counts(), spec)? {
        let value = oracle.evaluate(current)?;
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            *best = Some((value, current.clone()));
        }
    }
    for e in next..ground.len() as u32 {
        let element = ElementId(e);
        let color = ground.color(element);
        if !tracker.candidate(color) {
            continue;
        }
        tracker.update(color)?;
        current.push(element);
        descend(oracle, ground, spec, e + 1, current, tracker, best)?;
        current.pop();
        tracker.remove(color)?;
    }
    Ok(())
}
