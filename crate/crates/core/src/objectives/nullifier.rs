//! Piecewise cardinality function with a nullifier element.
//!
//! The ground set splits into `A`, `B` and a distinguished element `x`;
//! `f(S) = |S|` while `x` is absent and `|S intersect A|` once `x` joins.
//! Submodular, non-monotone, and the canonical adversarial instance for
//! backup-based augmentation: before `x` arrives, `A` and `B` are
//! indistinguishable.

use crate::error::{Error, Result};
use crate::fairness::ElementId;
use crate::objectives::{ObjectiveOracle, SetFunction};

#[derive(Clone, Debug)]
pub struct NullifierInstance {
    in_a: Vec<bool>,
    nullifier: ElementId,
}

impl NullifierInstance {
    /// `a` and `b` must partition the ground set minus `x`.
    pub fn new(n: usize, a: &[ElementId], b: &[ElementId], x: ElementId) -> Result<Self> {
        let mut role = vec![0u8; n];
        let assign = |role: &mut Vec<u8>, e: ElementId, tag: u8| -> Result<()> {
            if e.index() >= n {
                return Err(Error::ElementOutOfRange(e.0, n));
            }
            if role[e.index()] != 0 {
                return Err(Error::InvalidParameter(format!(
                    "element {e} assigned to more than one of A, B, x"
                )));
            }
            role[e.index()] = tag;
            Ok(())
        };
        for &e in a {
            assign(&mut role, e, 1)?;
        }
        for &e in b {
            assign(&mut role, e, 2)?;
        }
        assign(&mut role, x, 3)?;
        if role.contains(&0) {
            return Err(Error::InvalidParameter(
                "A, B and x must cover the ground set".into(),
            ));
        }
        Ok(Self {
            in_a: role.iter().map(|&r| r == 1).collect(),
            nullifier: x,
        })
    }

    pub fn nullifier(&self) -> ElementId {
        self.nullifier
    }

    pub fn into_oracle(self) -> ObjectiveOracle {
        let descriptor = format!(
            "nullifier(n={}, x={})",
            self.in_a.len(),
            self.nullifier
        );
        ObjectiveOracle::from_function(descriptor, self)
    }
}

impl SetFunction for NullifierInstance {
    fn ground_size(&self) -> usize {
        self.in_a.len()
    }

    fn value(&self, set: &[ElementId]) -> f64 {
        if set.contains(&self.nullifier) {
            set.iter().filter(|e| self.in_a[e.index()]).count() as f64
        } else {
            set.len() as f64
        }
    }
}
