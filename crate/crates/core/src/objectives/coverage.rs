//! Maximum-coverage objective: `f(S) = |union of N(v) for v in S|`.

use crate::fairness::ElementId;
use crate::objectives::{ObjectiveOracle, SetFunction};

/// Adjacency-backed coverage instance. Universe items are arbitrary
/// non-negative integers; neighbor lists are stored deduplicated.
#[derive(Clone, Debug)]
pub struct CoverageInstance {
    neighbors: Vec<Vec<u32>>,
    universe_size: usize,
}

impl CoverageInstance {
    pub fn new(mut neighbors: Vec<Vec<u32>>) -> Self {
        let mut universe_size = 0usize;
        for list in &mut neighbors {
            list.sort_unstable();
            list.dedup();
            if let Some(&max) = list.last() {
                universe_size = universe_size.max(max as usize + 1);
            }
        }
        Self {
            neighbors,
            universe_size,
        }
    }

    /// Builds neighbor lists from an arc list over `n` elements. With
    /// `directed = false` each edge covers in both directions.
    pub fn from_arcs(n: usize, arcs: &[(u32, u32)], directed: bool) -> Self {
        let mut neighbors = vec![Vec::new(); n];
        for &(u, v) in arcs {
            neighbors[u as usize].push(v);
            if !directed {
                neighbors[v as usize].push(u);
            }
        }
        Self::new(neighbors)
    }

    pub fn neighbors(&self, e: ElementId) -> &[u32] {
        &self.neighbors[e.index()]
    }

    pub fn into_oracle(self) -> ObjectiveOracle {
        let descriptor = format!(
            "coverage(n={}, universe={})",
            self.neighbors.len(),
            self.universe_size
        );
        ObjectiveOracle::from_function(descriptor, self)
    }
}

impl SetFunction for CoverageInstance {
    fn ground_size(&self) -> usize {
        self.neighbors.len()
    }

    fn value(&self, set: &[ElementId]) -> f64 {
        let words = self.universe_size.div_ceil(64);
        let mut covered = vec![0u64; words];
        let mut count = 0u64;
        for &e in set {
            for &item in &self.neighbors[e.index()] {
                let (w, b) = (item as usize / 64, item as usize % 64);
                if covered[w] & (1 << b) == 0 {
                    covered[w] |= 1 << b;
                    count += 1;
                }
            }
        }
        count as f64
    }
}
