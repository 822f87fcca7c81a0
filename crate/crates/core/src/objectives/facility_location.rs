//! Exemplar-clustering objective.
//!
//! `f(S) = C - sum_r min_{e in S} d(r, e)` with squared Euclidean `d`,
//! `f(empty) = 0`, and a shift `C` large enough to keep all values
//! non-negative. The clustering cost of a selection is `C - f(S)`.

use crate::error::{Error, Result};
use crate::fairness::ElementId;
use crate::objectives::{ObjectiveOracle, SetFunction};

#[derive(Clone, Debug)]
pub struct FacilityLocationInstance {
    points: Vec<Vec<f64>>,
    candidates: Vec<Vec<f64>>,
    shift: f64,
}

fn squared_distance(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum()
}

impl FacilityLocationInstance {
    /// Shift defaults to `|points| * max_{r,e} d(r, e)`, which dominates
    /// `sum_r max_e d(r, e)` and hence keeps `f` non-negative.
    pub fn new(points: Vec<Vec<f64>>, candidates: Vec<Vec<f64>>) -> Result<Self> {
        if candidates.is_empty() {
            return Err(Error::InvalidParameter(
                "facility location needs at least one candidate".into(),
            ));
        }
        let dim = candidates[0].len();
        if candidates.iter().any(|v| v.len() != dim) || points.iter().any(|v| v.len() != dim) {
            return Err(Error::InvalidParameter(
                "facility location rows have mixed dimensions".into(),
            ));
        }
        let mut max_dist = 0.0f64;
        for r in &points {
            for e in &candidates {
                max_dist = max_dist.max(squared_distance(r, e));
            }
        }
        let shift = points.len() as f64 * max_dist;
        Ok(Self {
            points,
            candidates,
            shift,
        })
    }

    /// Records double as candidates, matching the exemplar-clustering setup.
    pub fn from_records(records: Vec<Vec<f64>>) -> Result<Self> {
        Self::new(records.clone(), records)
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    /// `C - f(S)`, the quantity minimized by exemplar clustering.
    pub fn clustering_cost(&self, set: &[ElementId]) -> f64 {
        self.shift - self.value(set)
    }

    pub fn into_oracle(self) -> ObjectiveOracle {
        let descriptor = format!(
            "facility_location(records={}, candidates={})",
            self.points.len(),
            self.candidates.len()
        );
        ObjectiveOracle::from_function(descriptor, self)
    }
}

impl SetFunction for FacilityLocationInstance {
    fn ground_size(&self) -> usize {
        self.candidates.len()
    }

    fn value(&self, set: &[ElementId]) -> f64 {
        if set.is_empty() {
            return 0.0;
        }
        let total: f64 = self
            .points
            .iter()
            .map(|r| {
                set.iter()
                    .map(|e| squared_distance(r, &self.candidates[e.index()]))
                    .fold(f64::INFINITY, f64::min)
            })
            .sum();
        self.shift - total
    }
}
