//! Directed-cut objective: `f(S) = |arcs from S into the complement|`.
//!
//! Non-monotone (`f(V) = 0`) and submodular; the objective used by the
//! streaming-hardness construction.

use crate::fairness::ElementId;
use crate::objectives::{ObjectiveOracle, SetFunction};

#[derive(Clone, Debug)]
pub struct CutInstance {
    n: usize,
    arcs: Vec<(u32, u32)>,
}

impl CutInstance {
    pub fn new(n: usize, mut arcs: Vec<(u32, u32)>) -> Self {
        arcs.sort_unstable();
        arcs.dedup();
        Self { n, arcs }
    }

    pub fn arcs(&self) -> &[(u32, u32)] {
        &self.arcs
    }

    pub fn into_oracle(self) -> ObjectiveOracle {
        let descriptor = format!("cut(n={}, arcs={})", self.n, self.arcs.len());
        ObjectiveOracle::from_function(descriptor, self)
    }
}

impl SetFunction for CutInstance {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn value(&self, set: &[ElementId]) -> f64 {
        let words = self.n.div_ceil(64);
        let mut member = vec![0u64; words];
        for &e in set {
            member[e.index() / 64] |= 1 << (e.index() % 64);
        }
        let inside = |v: u32| member[v as usize / 64] & (1 << (v as usize % 64)) != 0;
        self.arcs
            .iter()
            .filter(|&&(u, v)| inside(u) && !inside(v))
            .count() as f64
    }
}
