//! Subsampled exchange streaming for non-monotone objectives.
//!
//! Structure mirrors the exchange algorithm in [`crate::algorithms::ck`],
//! with two differences. Arriving elements are dropped with probability 2/3
//! before any processing (a subsample that the analysis requires for
//! non-monotone objectives; monotone usage turns it off). And the exchange
//! weight of a member is its contribution relative to the part of the
//! solution that arrived before it: stored on insertion, recomputed for the
//! incoming element when a swap is accepted, and left frozen for surviving
//! members.
//!
//! The `Practical` rule instead ranks members by their current marginal
//! `f(e' | S)` — one evaluation per legal member, O(k) calls per element —
//! and swaps when `f(S + e - e') >= f(S)`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algorithms::{insert_sorted, remove_sorted, with_element, with_swap, SwapRule};
use crate::error::Result;
use crate::fairness::{ElementId, FairnessSpec, GroundSet};
use crate::objectives::ObjectiveOracle;
use crate::tracker::ExtendabilityTracker;

/// Probability that an arriving element is processed at all.
pub const FKK_PROCESS_PROBABILITY: f64 = 1.0 / 3.0;

#[derive(Clone, Copy, Debug)]
pub struct FkkConfig {
    pub rule: SwapRule,
    /// Drop arriving elements with probability `1 - process_probability`.
    /// Disabled entirely in monotone usage (no RNG draws at all).
    pub subsample: bool,
    pub process_probability: f64,
    pub seed: u64,
}

impl FkkConfig {
    pub fn non_monotone(rule: SwapRule, seed: u64) -> Self {
        Self {
            rule,
            subsample: true,
            process_probability: FKK_PROCESS_PROBABILITY,
            seed,
        }
    }

    pub fn monotone(rule: SwapRule) -> Self {
        Self {
            rule,
            subsample: false,
            process_probability: 1.0,
            seed: 0,
        }
    }
}

pub struct FkkState {
    solution: Vec<ElementId>,
    /// Arrival-relative contribution of each member (theory rule).
    arrival_marginal: Vec<f64>,
    tracker: ExtendabilityTracker,
    cached_value: f64,
    config: FkkConfig,
    rng: ChaCha8Rng,
}

impl FkkState {
    pub fn new(spec: &FairnessSpec, ground: &GroundSet, config: FkkConfig) -> Self {
        Self {
            solution: Vec::new(),
            arrival_marginal: vec![0.0; ground.len()],
            tracker: ExtendabilityTracker::new(spec),
            cached_value: 0.0,
            config,
            rng: ChaCha8Rng::seed_from_u64(config.seed),
        }
    }

    pub fn solution(&self) -> &[ElementId] {
        &self.solution
    }

    pub fn tracker(&self) -> &ExtendabilityTracker {
        &self.tracker
    }

    pub fn stored_elements(&self) -> usize {
        self.solution.len()
    }

    /// Members whose color the tracker allows to leave for `e`, cheapest
    /// first under the configured weight; ties on the smaller id.
    fn swap_target(
        &self,
        e: ElementId,
        oracle: &ObjectiveOracle,
        ground: &GroundSet,
    ) -> Result<Option<(ElementId, f64)>> {
        let c = ground.color(e);
        let mut best: Option<(f64, ElementId)> = None;
        for &member in &self.solution {
            if !self.tracker.swap_allowed(c, ground.color(member)) {
                continue;
            }
            let weight = match self.config.rule {
                SwapRule::Theory => self.arrival_marginal[member.index()],
                SwapRule::Practical => {
                    let without = oracle.evaluate(&{
                        let mut s = self.solution.clone();
                        remove_sorted(&mut s, member);
                        s
                    })?;
                    self.cached_value - without
                }
            };
            let better = match best {
                None => true,
                Some((w, m)) => weight < w || (weight == w && member < m),
            };
            if better {
                best = Some((weight, member));
            }
        }
        Ok(best.map(|(w, m)| (m, w)))
    }

    pub fn process(
        &mut self,
        e: ElementId,
        oracle: &ObjectiveOracle,
        ground: &GroundSet,
    ) -> Result<()> {
        if self.config.subsample
            && !self.rng.random_bool(self.config.process_probability.min(1.0))
        {
            return Ok(());
        }
        let c = ground.color(e);
        let value_with = oracle.evaluate(&with_element(&self.solution, e))?;
        let gain = value_with - self.cached_value;

        if self.tracker.candidate(c) {
            self.tracker.update(c)?;
            insert_sorted(&mut self.solution, e);
            // All current members arrived earlier, so the arrival-relative
            // contribution of e is exactly this gain.
            self.arrival_marginal[e.index()] = gain;
            self.cached_value = value_with;
            return Ok(());
        }

        let Some((out, out_weight)) = self.swap_target(e, oracle, ground)? else {
            return Ok(());
        };
        match self.config.rule {
            SwapRule::Theory => {
                if gain >= 2.0 * out_weight {
                    let swapped = with_swap(&self.solution, e, out);
                    let value_swapped = oracle.evaluate(&swapped)?;
                    let mut without_out = self.solution.clone();
                    remove_sorted(&mut without_out, out);
                    let value_without = oracle.evaluate(&without_out)?;
                    self.apply_swap(e, out, ground)?;
                    self.arrival_marginal[e.index()] = value_swapped - value_without;
                    self.cached_value = value_swapped;
                }
            }
            SwapRule::Practical => {
                let swapped = oracle.evaluate(&with_swap(&self.solution, e, out))?;
                if swapped >= self.cached_value {
                    self.apply_swap(e, out, ground)?;
                    self.cached_value = swapped;
                }
            }
        }
        Ok(())
    }

    fn apply_swap(&mut self, e: ElementId, out: ElementId, ground: &GroundSet) -> Result<()> {
        self.tracker
            .apply_swap(ground.color(e), ground.color(out))?;
        remove_sorted(&mut self.solution, out);
        insert_sorted(&mut self.solution, e);
        self.arrival_marginal[out.index()] = 0.0;
        Ok(())
    }
}
