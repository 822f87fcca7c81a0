//! Ground-set model and fairness constraints.
//!
//! A ground set of `n` elements is partitioned into `C` color groups. A
//! selection `S` is *feasible* when `|S| <= k` and every color count lies in
//! `[lower_c, upper_c]`; it is *extendable* when some feasible superset
//! exists. Extendability has a closed form: all color counts respect the
//! upper bounds and `sum_c max(count_c, lower_c) <= k`.

use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Dense index of an element in the ground set.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct ElementId(pub u32);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Dense index of a color group, `0..C`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct ColorId(pub u32);

impl ColorId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ColorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Per-color lower/upper bounds plus the global cardinality budget.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FairnessSpec {
    lower: Vec<u32>,
    upper: Vec<u32>,
    k: u32,
}

impl FairnessSpec {
    /// Builds a spec, rejecting `lower_c > upper_c` and `sum lower_c > k`.
    pub fn new(lower: Vec<u32>, upper: Vec<u32>, k: u32) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::ColorCountMismatch {
                got: lower.len(),
                expected: upper.len(),
            });
        }
        for (c, (&l, &u)) in lower.iter().zip(&upper).enumerate() {
            if l > u {
                return Err(Error::Infeasible(format!(
                    "color {c}: lower bound {l} exceeds upper bound {u}"
                )));
            }
        }
        let lower_sum: u64 = lower.iter().map(|&l| u64::from(l)).sum();
        if lower_sum > u64::from(k) {
            return Err(Error::Infeasible(format!(
                "sum of lower bounds {lower_sum} exceeds k = {k}"
            )));
        }
        Ok(Self { lower, upper, k })
    }

    /// Spec with no per-color constraints: `lower = 0`, `upper = k`.
    pub fn unconstrained(num_colors: u32, k: u32) -> Self {
        Self {
            lower: vec![0; num_colors as usize],
            upper: vec![k; num_colors as usize],
            k,
        }
    }

    /// Copy of this spec with all lower bounds dropped (upper bounds and `k`
    /// kept), i.e. the laminar matroid of the upper-bound constraints.
    pub fn upper_only(&self) -> Self {
        Self {
            lower: vec![0; self.lower.len()],
            upper: self.upper.clone(),
            k: self.k,
        }
    }

    #[inline]
    pub fn num_colors(&self) -> u32 {
        self.lower.len() as u32
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn lower(&self, c: ColorId) -> u32 {
        self.lower[c.index()]
    }

    #[inline]
    pub fn upper(&self, c: ColorId) -> u32 {
        self.upper[c.index()]
    }

    pub fn lower_bounds(&self) -> &[u32] {
        &self.lower
    }

    pub fn upper_bounds(&self) -> &[u32] {
        &self.upper
    }

    pub fn lower_sum(&self) -> u32 {
        self.lower.iter().sum()
    }

    /// Checks that a feasible solution exists on `ground`: the color counts
    /// match and every lower bound is coverable (`lower_c <= n_c`).
    pub fn validate_for(&self, ground: &GroundSet) -> Result<()> {
        if ground.num_colors() != self.num_colors() {
            return Err(Error::ColorCountMismatch {
                got: ground.num_colors() as usize,
                expected: self.num_colors() as usize,
            });
        }
        for c in 0..self.num_colors() {
            let color = ColorId(c);
            if self.lower(color) > ground.color_size(color) {
                return Err(Error::Infeasible(format!(
                    "color {c}: lower bound {} exceeds group size {}",
                    self.lower(color),
                    ground.color_size(color)
                )));
            }
        }
        Ok(())
    }

    fn check_counts(&self, counts: &[u32]) -> Result<()> {
        if counts.len() != self.lower.len() {
            return Err(Error::ColorCountMismatch {
                got: counts.len(),
                expected: self.lower.len(),
            });
        }
        Ok(())
    }
}

/// A colored ground set: element -> color map plus per-color sizes.
#[derive(Clone, Debug)]
pub struct GroundSet {
    color_of: Vec<ColorId>,
    color_sizes: Vec<u32>,
}

impl GroundSet {
    pub fn new(color_of: Vec<ColorId>, num_colors: u32) -> Result<Self> {
        let mut color_sizes = vec![0u32; num_colors as usize];
        for &c in &color_of {
            if c.0 >= num_colors {
                return Err(Error::ColorOutOfRange(c.0, num_colors));
            }
            color_sizes[c.index()] += 1;
        }
        Ok(Self {
            color_of,
            color_sizes,
        })
    }

    /// Dictionary-encodes raw labels in first-appearance order and returns
    /// the ground set together with the label table.
    pub fn from_labels<S: AsRef<str>>(labels: &[S]) -> (Self, Vec<String>) {
        let mut table: Vec<String> = Vec::new();
        let mut color_of = Vec::with_capacity(labels.len());
        for label in labels {
            let label = label.as_ref();
            let c = match table.iter().position(|t| t == label) {
                Some(i) => i,
                None => {
                    table.push(label.to_owned());
                    table.len() - 1
                }
            };
            color_of.push(ColorId(c as u32));
        }
        let mut color_sizes = vec![0u32; table.len()];
        for &c in &color_of {
            color_sizes[c.index()] += 1;
        }
        (
            Self {
                color_of,
                color_sizes,
            },
            table,
        )
    }

    /// Single-color ground set of `n` elements.
    pub fn uniform(n: usize) -> Self {
        Self {
            color_of: vec![ColorId(0); n],
            color_sizes: vec![n as u32],
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.color_of.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.color_of.is_empty()
    }

    #[inline]
    pub fn num_colors(&self) -> u32 {
        self.color_sizes.len() as u32
    }

    #[inline]
    pub fn color(&self, e: ElementId) -> ColorId {
        self.color_of[e.index()]
    }

    #[inline]
    pub fn color_size(&self, c: ColorId) -> u32 {
        self.color_sizes[c.index()]
    }

    pub fn color_sizes(&self) -> &[u32] {
        &self.color_sizes
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.color_of.len() as u32).map(ElementId)
    }

    /// Per-color counts of a selection.
    pub fn color_counts(&self, set: &[ElementId]) -> Result<Vec<u32>> {
        let mut counts = vec![0u32; self.color_sizes.len()];
        for &e in set {
            if e.index() >= self.len() {
                return Err(Error::ElementOutOfRange(e.0, self.len()));
            }
            counts[self.color(e).index()] += 1;
        }
        Ok(counts)
    }
}

/// True iff `sum counts <= k` and every count lies in `[lower_c, upper_c]`.
pub fn is_feasible(counts: &[u32], spec: &FairnessSpec) -> Result<bool> {
    spec.check_counts(counts)?;
    let total: u64 = counts.iter().map(|&t| u64::from(t)).sum();
    if total > u64::from(spec.k) {
        return Ok(false);
    }
    Ok(counts
        .iter()
        .zip(spec.lower.iter().zip(&spec.upper))
        .all(|(&t, (&l, &u))| l <= t && t <= u))
}

/// True iff some feasible superset exists: every count respects its upper
/// bound and `sum_c max(count_c, lower_c) <= k`.
pub fn is_extendable(counts: &[u32], spec: &FairnessSpec) -> Result<bool> {
    spec.check_counts(counts)?;
    let mut required: u64 = 0;
    for (&t, (&l, &u)) in counts.iter().zip(spec.lower.iter().zip(&spec.upper)) {
        if t > u {
            return Ok(false);
        }
        required += u64::from(t.max(l));
    }
    Ok(required <= u64::from(spec.k))
}

/// Total per-color bound violation:
/// `sum_c max(count_c - upper_c, lower_c - count_c, 0)`.
///
/// The global budget is tracked separately (see
/// [`cardinality_overflow`]); the error metric itself is purely per-color.
pub fn fairness_error(counts: &[u32], spec: &FairnessSpec) -> Result<u64> {
    spec.check_counts(counts)?;
    Ok(counts
        .iter()
        .zip(spec.lower.iter().zip(&spec.upper))
        .map(|(&t, (&l, &u))| u64::from(t.saturating_sub(u).max(l.saturating_sub(t))))
        .sum())
}

/// How far a selection overshoots the global budget: `max(|S| - k, 0)`.
pub fn cardinality_overflow(counts: &[u32], spec: &FairnessSpec) -> u64 {
    let total: u64 = counts.iter().map(|&t| u64::from(t)).sum();
    total.saturating_sub(u64::from(spec.k))
}

/// Excess ratio `q = 1 - max_c lower_c / n_c`, as an exact rational.
///
/// Equals 1 when every lower bound is zero; 0 when some group must be taken
/// in its entirety. Errors when a positive lower bound has an empty group.
pub fn excess_ratio(spec: &FairnessSpec, ground: &GroundSet) -> Result<Ratio<u64>> {
    if ground.num_colors() != spec.num_colors() {
        return Err(Error::ColorCountMismatch {
            got: ground.num_colors() as usize,
            expected: spec.num_colors() as usize,
        });
    }
    // max of lower_c / n_c by cross-multiplication, exactly.
    let mut max: Option<(u64, u64)> = None;
    for c in 0..spec.num_colors() {
        let color = ColorId(c);
        let l = u64::from(spec.lower(color));
        let n = u64::from(ground.color_size(color));
        if l == 0 {
            continue;
        }
        if n == 0 {
            return Err(Error::Infeasible(format!(
                "color {c}: lower bound {l} on an empty group"
            )));
        }
        let dominates = match max {
            None => true,
            Some((ml, mn)) => l * mn > ml * n,
        };
        if dominates {
            max = Some((l, n));
        }
    }
    Ok(match max {
        None => Ratio::new(1, 1),
        Some((l, n)) => Ratio::new(n - l, n),
    })
}

/// `excess_ratio` as a float, for approximation-bound arithmetic.
pub fn excess_ratio_f64(spec: &FairnessSpec, ground: &GroundSet) -> Result<f64> {
    let q = excess_ratio(spec, ground)?;
    Ok(*q.numer() as f64 / *q.denom() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(lower: &[u32], upper: &[u32], k: u32) -> FairnessSpec {
        FairnessSpec::new(lower.to_vec(), upper.to_vec(), k).unwrap()
    }

    #[test]
    fn feasibility_examples() {
        let s = spec(&[1, 1], &[2, 2], 2);
        assert!(is_feasible(&[1, 1], &s).unwrap());
        let s = spec(&[1, 1], &[2, 2], 3);
        assert!(!is_feasible(&[0, 2], &s).unwrap());
        assert!(!is_feasible(&[2, 2], &s).unwrap());
    }

    #[test]
    fn extendability_examples() {
        let s = spec(&[1, 1], &[2, 2], 2);
        assert!(is_extendable(&[1, 0], &s).unwrap());
        assert!(!is_extendable(&[2, 0], &s).unwrap());
        assert!(is_extendable(&[0, 0], &s).unwrap());
    }

    #[test]
    fn count_length_mismatch_is_rejected() {
        let s = spec(&[1, 1], &[2, 2], 2);
        assert!(matches!(
            is_feasible(&[1], &s),
            Err(Error::ColorCountMismatch { .. })
        ));
        assert!(matches!(
            is_extendable(&[1, 1, 1], &s),
            Err(Error::ColorCountMismatch { .. })
        ));
    }

    #[test]
    fn infeasible_specs_rejected_at_construction() {
        assert!(FairnessSpec::new(vec![2], vec![1], 5).is_err());
        assert!(FairnessSpec::new(vec![2, 2], vec![3, 3], 3).is_err());
        let ground = GroundSet::new(vec![ColorId(0)], 2).unwrap();
        let s = spec(&[0, 1], &[1, 1], 2);
        assert!(s.validate_for(&ground).is_err());
    }

    #[test]
    fn fairness_error_examples() {
        let s = spec(&[2, 1], &[3, 2], 10);
        assert_eq!(fairness_error(&[1, 3], &s).unwrap(), 2);
        assert_eq!(fairness_error(&[2, 2], &s).unwrap(), 0);
        let s = spec(&[3, 4], &[5, 5], 10);
        assert_eq!(fairness_error(&[0, 0], &s).unwrap(), 7);
    }

    #[test]
    fn cardinality_overflow_is_separate() {
        let s = spec(&[0, 0], &[5, 5], 3);
        assert_eq!(cardinality_overflow(&[2, 2], &s), 1);
        assert_eq!(fairness_error(&[2, 2], &s).unwrap(), 0);
        assert_eq!(cardinality_overflow(&[1, 1], &s), 0);
    }

    #[test]
    fn excess_ratio_examples() {
        let ground = {
            let mut colors = vec![ColorId(0); 10];
            colors.extend(vec![ColorId(1); 4]);
            GroundSet::new(colors, 2).unwrap()
        };
        let s = spec(&[1, 2], &[10, 4], 10);
        assert_eq!(excess_ratio(&s, &ground).unwrap(), Ratio::new(1, 2));

        let s = spec(&[0, 0], &[10, 4], 10);
        assert_eq!(excess_ratio(&s, &ground).unwrap(), Ratio::new(1, 1));

        let s = spec(&[1, 4], &[10, 4], 10);
        assert_eq!(excess_ratio(&s, &ground).unwrap(), Ratio::new(0, 1));
    }

    #[test]
    fn excess_ratio_rejects_empty_required_group() {
        let ground = GroundSet::new(vec![ColorId(0), ColorId(0)], 2).unwrap();
        let s = spec(&[1, 1], &[2, 2], 4);
        assert!(excess_ratio(&s, &ground).is_err());
    }

    #[test]
    fn label_encoding_first_appearance_order() {
        let (ground, table) = GroundSet::from_labels(&["red", "red", "blue", "red", "blue"]);
        assert_eq!(table, vec!["red".to_string(), "blue".to_string()]);
        assert_eq!(ground.num_colors(), 2);
        assert_eq!(ground.color(ElementId(0)), ColorId(0));
        assert_eq!(ground.color(ElementId(2)), ColorId(1));
        assert_eq!(ground.color_sizes(), &[3, 2]);
    }
}
