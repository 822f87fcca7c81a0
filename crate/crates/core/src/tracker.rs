//! Constant-time extendability bookkeeping.
//!
//! Maintains per-color counts `t_c` of the current selection together with
//! the aggregate `Q = sum_c max(t_c, lower_c)`, so that membership queries
//! against the extendability matroid — "can one more element of color `c`
//! join?", "can a `c_out` element be traded for a `c_in` element?" — run in
//! O(1) instead of rescanning the selection.

use crate::error::{Error, Result};
use crate::fairness::{ColorId, FairnessSpec};

/// Tracker state for one evolving extendable selection.
#[derive(Clone, Debug)]
pub struct ExtendabilityTracker {
    spec: FairnessSpec,
    counts: Vec<u32>,
    size: u32,
    /// `Q = sum_c max(t_c, lower_c)`; the selection is extendable iff all
    /// upper bounds hold and `Q <= k`.
    q: u64,
}

impl ExtendabilityTracker {
    /// Empty selection: `t_c = 0`, `Q = sum_c lower_c`.
    pub fn new(spec: &FairnessSpec) -> Self {
        let q = spec.lower_bounds().iter().map(|&l| u64::from(l)).sum();
        Self {
            spec: spec.clone(),
            counts: vec![0; spec.num_colors() as usize],
            size: 0,
            q,
        }
    }

    /// Tracker positioned at an existing extendable count vector.
    pub fn from_counts(spec: &FairnessSpec, counts: &[u32]) -> Result<Self> {
        if !crate::fairness::is_extendable(counts, spec)? {
            return Err(Error::ContractViolation(
                "tracker initialized from a non-extendable count vector".into(),
            ));
        }
        let q = counts
            .iter()
            .zip(spec.lower_bounds())
            .map(|(&t, &l)| u64::from(t.max(l)))
            .sum();
        Ok(Self {
            spec: spec.clone(),
            counts: counts.to_vec(),
            size: counts.iter().sum(),
            q,
        })
    }

    #[inline]
    pub fn spec(&self) -> &FairnessSpec {
        &self.spec
    }

    #[inline]
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    #[inline]
    pub fn count(&self, c: ColorId) -> u32 {
        self.counts[c.index()]
    }

    /// Selection size `|S| = sum_c t_c`.
    #[inline]
    pub fn size(&self) -> u32 {
        self.size
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Would the selection stay extendable after adding one element of
    /// color `c`? Constant time.
    pub fn candidate(&self, c: ColorId) -> bool {
        let t = self.counts[c.index()];
        let l = self.spec.lower(c);
        let u = self.spec.upper(c);
        if t == u {
            return false;
        }
        if t < l {
            return true;
        }
        // l <= t < u: the addition pushes Q up by one.
        self.q < u64::from(self.spec.k())
    }

    /// Records the addition of one element of color `c`.
    ///
    /// Rejects additions that would break extendability.
    pub fn update(&mut self, c: ColorId) -> Result<()> {
        if !self.candidate(c) {
            return Err(Error::ContractViolation(format!(
                "adding color {c} breaks extendability (t = {}, Q = {})",
                self.counts[c.index()],
                self.q
            )));
        }
        self.counts[c.index()] += 1;
        self.size += 1;
        if self.counts[c.index()] > self.spec.lower(c) {
            self.q += 1;
        }
        Ok(())
    }

    /// Records the removal of one element of color `c`.
    pub fn remove(&mut self, c: ColorId) -> Result<()> {
        let t = self.counts[c.index()];
        if t == 0 {
            return Err(Error::ContractViolation(format!(
                "removing color {c} from a selection holding none"
            )));
        }
        if t > self.spec.lower(c) {
            self.q -= 1;
        }
        self.counts[c.index()] -= 1;
        self.size -= 1;
        Ok(())
    }

    /// Would trading one element of color `c_out` for one of color `c_in`
    /// keep the selection extendable? Constant time.
    ///
    /// Assumes the selection holds at least one `c_out` element.
    pub fn swap_allowed(&self, c_in: ColorId, c_out: ColorId) -> bool {
        debug_assert!(self.counts[c_out.index()] > 0);
        if c_in == c_out {
            return true;
        }
        if self.counts[c_in.index()] == self.spec.upper(c_in) {
            return false;
        }
        let blocked = self.q == u64::from(self.spec.k())
            && self.counts[c_in.index()] >= self.spec.lower(c_in)
            && self.counts[c_out.index()] <= self.spec.lower(c_out);
        !blocked
    }

    /// Applies an allowed swap: one `c_out` element out, one `c_in` in.
    pub fn apply_swap(&mut self, c_in: ColorId, c_out: ColorId) -> Result<()> {
        if !self.swap_allowed(c_in, c_out) {
            return Err(Error::ContractViolation(format!(
                "swap in={c_in} out={c_out} breaks extendability"
            )));
        }
        self.remove(c_out)?;
        self.update(c_in)
    }
}
