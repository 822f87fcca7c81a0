//! Threshold-sieve streaming under a bare cardinality constraint.
//!
//! Maintains the best singleton value `m` seen so far and one candidate set
//! per threshold `v = (1 + eps)^i` with `m <= v <= 2 k m`. An arriving
//! element joins set `S_v` when the set has room and its marginal gain
//! reaches `(v / 2 - f(S_v)) / (k - |S_v|)`. Ignores color bounds entirely,
//! so its output can violate them; reported errors are measured against the
//! experiment's fairness constraints.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::algorithms::{finish_report, with_element, RunReport};
use crate::error::{Error, Result};
use crate::fairness::{ElementId, FairnessSpec, GroundSet};
use crate::objectives::ObjectiveOracle;

pub const SIEVE_DEFAULT_EPSILON: f64 = 0.05;

struct ThresholdSet {
    members: Vec<ElementId>,
    value: f64,
}

pub fn sieve_streaming(
    stream: &[ElementId],
    oracle: &ObjectiveOracle,
    ground: &GroundSet,
    spec: &FairnessSpec,
    epsilon: f64,
) -> Result<RunReport> {
    if !(0.0..1.0).contains(&epsilon) || epsilon == 0.0 {
        return Err(Error::InvalidParameter(format!(
            "sieve epsilon must lie in (0, 1), got {epsilon}"
        )));
    }
    let started = Instant::now();
    let calls_before = oracle.call_count();
    let k = spec.k() as usize;
    let log_base = (1.0 + epsilon).ln();

    let mut best_singleton = f64::NEG_INFINITY;
    let mut sets: BTreeMap<i64, ThresholdSet> = BTreeMap::new();
    let mut peak = 0usize;

    for &e in stream {
        let singleton = oracle.evaluate(&[e])?;
        best_singleton = best_singleton.max(singleton);
        if best_singleton > 0.0 && k > 0 {
            // Active exponents i with m <= (1+eps)^i <= 2 k m.
            let lo = (best_singleton.ln() / log_base).ceil() as i64;
            let hi = ((2.0 * k as f64 * best_singleton).ln() / log_base).floor() as i64;
            sets.retain(|&i, _| i >= lo && i <= hi);
            for i in lo..=hi {
                sets.entry(i).or_insert_with(|| ThresholdSet {
                    members: Vec::new(),
                    value: 0.0,
                });
            }
            for (&i, set) in sets.iter_mut() {
                if set.members.len() >= k {
                    continue;
                }
                let gain = if set.members.is_empty() {
                    singleton
                } else {
                    oracle.evaluate(&with_element(&set.members, e))? - set.value
                };
                let v = (log_base * i as f64).exp();
                if gain >= (v / 2.0 - set.value) / (k - set.members.len()) as f64 {
                    set.members.push(e);
                    set.value += gain;
                }
            }
        }
        peak = peak.max(sets.values().map(|s| s.members.len()).sum::<usize>());
    }

    let best = sets
        .values()
        .max_by(|a, b| a.value.total_cmp(&b.value))
        .map(|s| s.members.clone())
        .unwrap_or_default();
    finish_report(
        "sieve_streaming",
        best,
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
