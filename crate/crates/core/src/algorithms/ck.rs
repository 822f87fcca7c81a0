//! Exchange-based streaming maximization over the extendability matroid.
//!
//! Each member carries the weight it had on arrival, `w(e) = f(e | S)`.
//! An arriving element is inserted when the selection can absorb its color;
//! otherwise the cheapest member whose color may legally leave is located
//! through three priority queues:
//!
//! * `global` — all members keyed by weight,
//! * `per_color[c]` — members of color `c` keyed by weight,
//! * `over_lower` — colors whose count exceeds their lower bound, keyed by
//!   the weight of their cheapest member.
//!
//! With the incoming color `c`, the colors that may give up an element are
//! `c` alone when `t_c = u_c`; every color when `Q < k` or `t_c < l_c`; and
//! otherwise `c` together with the colors counted above their lower bound.
//! The queues answer the minimum over each of those shapes in O(log k).
//!
//! The `Theory` rule swaps when `w(e) >= 2 w(e')` and spends exactly two
//! oracle calls per element (`f(S)` and `f(S + e)`); the `Practical` rule
//! keeps `f(S)` cached and swaps when `f(S + e - e') >= f(S)`, spending at
//! most two calls per element.

use std::collections::BTreeSet;

use crate::algorithms::{insert_sorted, remove_sorted, with_element, with_swap, SwapRule};
use crate::error::Result;
use crate::fairness::{ColorId, ElementId, FairnessSpec, GroundSet};
use crate::objectives::ObjectiveOracle;
use crate::tracker::ExtendabilityTracker;

/// Total-order key over (weight, element); ties break on the smaller id.
#[derive(Clone, Copy, PartialEq, Debug)]
struct WeightKey(f64, ElementId);

impl Eq for WeightKey {}

impl PartialOrd for WeightKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WeightKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
    }
}

#[derive(Default)]
struct MemberQueues {
    global: BTreeSet<WeightKey>,
    per_color: Vec<BTreeSet<WeightKey>>,
    /// Colors with `t_c > lower_c`, keyed by their cheapest member.
    over_lower: BTreeSet<(WeightKey, ColorId)>,
    color_key: Vec<Option<WeightKey>>,
}

impl MemberQueues {
    fn new(num_colors: usize) -> Self {
        Self {
            global: BTreeSet::new(),
            per_color: vec![BTreeSet::new(); num_colors],
            over_lower: BTreeSet::new(),
            color_key: vec![None; num_colors],
        }
    }

    fn insert(&mut self, e: ElementId, w: f64, c: ColorId) {
        let key = WeightKey(w, e);
        self.global.insert(key);
        self.per_color[c.index()].insert(key);
    }

    fn remove(&mut self, e: ElementId, w: f64, c: ColorId) {
        let key = WeightKey(w, e);
        self.global.remove(&key);
        self.per_color[c.index()].remove(&key);
    }

    /// Re-derives the `over_lower` entry of `c` after any change to its
    /// membership or count.
    fn refresh_color(&mut self, c: ColorId, tracker: &ExtendabilityTracker) {
        if let Some(old) = self.color_key[c.index()].take() {
            self.over_lower.remove(&(old, c));
        }
        if tracker.count(c) > tracker.spec().lower(c) {
            if let Some(&min) = self.per_color[c.index()].first() {
                self.over_lower.insert((min, c));
                self.color_key[c.index()] = Some(min);
            }
        }
    }

    /// Cheapest member the tracker would allow to leave in favor of an
    /// incoming element of color `c`.
    fn best_swap_target(
        &self,
        c: ColorId,
        tracker: &ExtendabilityTracker,
    ) -> Option<(ElementId, f64)> {
        let spec = tracker.spec();
        let own = self.per_color[c.index()].first().copied();
        let candidate = if tracker.count(c) == spec.upper(c) {
            own
        } else if tracker.q() < u64::from(spec.k()) || tracker.count(c) < spec.lower(c) {
            self.global.first().copied()
        } else {
            let relaxed = self.over_lower.first().map(|&(key, _)| key);
            match (own, relaxed) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            }
        };
        candidate.map(|WeightKey(w, e)| (e, w))
    }
}

/// Streaming state: current selection, arrival weights, tracker and queues.
pub struct CkState {
    solution: Vec<ElementId>,
    weights: Vec<f64>,
    tracker: ExtendabilityTracker,
    queues: MemberQueues,
    cached_value: f64,
    rule: SwapRule,
}

impl CkState {
    pub fn new(spec: &FairnessSpec, ground: &GroundSet, rule: SwapRule) -> Self {
        Self {
            solution: Vec::new(),
            weights: vec![0.0; ground.len()],
            tracker: ExtendabilityTracker::new(spec),
            queues: MemberQueues::new(spec.num_colors() as usize),
            cached_value: 0.0,
            rule,
        }
    }

    pub fn solution(&self) -> &[ElementId] {
        &self.solution
    }

    pub fn tracker(&self) -> &ExtendabilityTracker {
        &self.tracker
    }

    /// `f(S)` for the current selection (exact under the practical rule,
    /// refreshed lazily under the theory rule).
    pub fn cached_value(&self) -> f64 {
        self.cached_value
    }

    /// Elements currently held.
    pub fn stored_elements(&self) -> usize {
        self.solution.len()
    }

    /// Arrival weight of a current member.
    pub fn arrival_weight(&self, e: ElementId) -> f64 {
        debug_assert!(self.solution.binary_search(&e).is_ok());
        self.weights[e.index()]
    }

    /// Smallest-weight member allowed to leave for an incoming element of
    /// color `c`, with smallest-id tie-breaking.
    pub fn swap_target(&self, c: ColorId) -> Option<(ElementId, f64)> {
        self.queues.best_swap_target(c, &self.tracker)
    }

    /// Processes one stream element.
    pub fn process(
        &mut self,
        e: ElementId,
        oracle: &ObjectiveOracle,
        ground: &GroundSet,
    ) -> Result<()> {
        let c = ground.color(e);
        // The theory rule re-evaluates f(S) every element: two calls per
        // element, unconditionally. The practical rule reuses the cache.
        let base = match self.rule {
            SwapRule::Theory => oracle.evaluate(&self.solution)?,
            SwapRule::Practical => self.cached_value,
        };
        let value_with = oracle.evaluate(&with_element(&self.solution, e))?;
        let weight = value_with - base;

        if self.tracker.candidate(c) {
            self.tracker.update(c)?;
            insert_sorted(&mut self.solution, e);
            self.weights[e.index()] = weight;
            self.queues.insert(e, weight, c);
            self.queues.refresh_color(c, &self.tracker);
            self.cached_value = value_with;
            return Ok(());
        }

        let Some((out, out_weight)) = self.queues.best_swap_target(c, &self.tracker) else {
            return Ok(());
        };
        let accept = match self.rule {
            SwapRule::Theory => weight >= 2.0 * out_weight,
            SwapRule::Practical => {
                let swapped = oracle.evaluate(&with_swap(&self.solution, e, out))?;
                if swapped >= self.cached_value {
                    self.cached_value = swapped;
                    true
                } else {
                    false
                }
            }
        };
        if accept {
            let out_color = ground.color(out);
            self.tracker.apply_swap(c, out_color)?;
            self.queues.remove(out, self.weights[out.index()], out_color);
            remove_sorted(&mut self.solution, out);
            insert_sorted(&mut self.solution, e);
            self.weights[e.index()] = weight;
            self.queues.insert(e, weight, c);
            self.queues.refresh_color(out_color, &self.tracker);
            self.queues.refresh_color(c, &self.tracker);
        }
        Ok(())
    }
}
