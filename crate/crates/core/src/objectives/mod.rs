//! Set-function value oracles with exact call accounting.
//!
//! Algorithms in this crate are measured by the number of oracle
//! evaluations they perform, so every counted evaluation goes through
//! [`ObjectiveOracle::evaluate`]. The underlying functions are plain
//! [`SetFunction`] implementations; all shipped families are submodular and
//! normalized (`f(empty) = 0`), and are non-negative on the instances they
//! are built for (the log-det family only on non-empty sets).

mod coverage;
mod cut;
mod facility_location;
mod kernel_logdet;
mod movie_utility;
mod nullifier;

pub use coverage::CoverageInstance;
pub use cut::CutInstance;
pub use facility_location::FacilityLocationInstance;
pub use kernel_logdet::{KernelObjectiveInstance, DEFAULT_KERNEL_EPSILON};
pub use movie_utility::MovieUtilityInstance;
pub use nullifier::NullifierInstance;

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fairness::ElementId;

/// A set function over a fixed ground set. Implementations must be pure:
/// the value may depend only on the membership of `set`, not on its order.
pub trait SetFunction: Send + Sync {
    fn ground_size(&self) -> usize;

    fn value(&self, set: &[ElementId]) -> f64;
}

/// Counted, shareable evaluator for a set function.
pub struct ObjectiveOracle {
    function: Arc<dyn SetFunction>,
    descriptor: String,
    calls: AtomicU64,
}

impl ObjectiveOracle {
    pub fn new(descriptor: impl Into<String>, function: Arc<dyn SetFunction>) -> Self {
        Self {
            function,
            descriptor: descriptor.into(),
            calls: AtomicU64::new(0),
        }
    }

    pub fn from_function<F: SetFunction + 'static>(descriptor: impl Into<String>, f: F) -> Self {
        Self::new(descriptor, Arc::new(f))
    }

    /// Same function, fresh call counter. Used to give each run its own
    /// exact accounting while sharing the (read-only) instance data.
    pub fn fork(&self) -> Self {
        Self {
            function: Arc::clone(&self.function),
            descriptor: self.descriptor.clone(),
            calls: AtomicU64::new(0),
        }
    }

    #[inline]
    pub fn ground_size(&self) -> usize {
        self.function.ground_size()
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    /// Number of counted evaluations so far.
    pub fn call_count(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    fn check(&self, set: &[ElementId]) -> Result<()> {
        let n = self.ground_size();
        for &e in set {
            if e.index() >= n {
                return Err(Error::ElementOutOfRange(e.0, n));
            }
        }
        Ok(())
    }

    /// Evaluates `f(set)`, counting exactly one oracle call.
    pub fn evaluate(&self, set: &[ElementId]) -> Result<f64> {
        self.check(set)?;
        self.calls.fetch_add(1, Ordering::Relaxed);
        Ok(self.function.value(set))
    }

    /// Evaluates `f(set)` without touching the counter. Reserved for
    /// post-run verification; algorithm code must use [`Self::evaluate`].
    pub fn evaluate_uncounted(&self, set: &[ElementId]) -> Result<f64> {
        self.check(set)?;
        Ok(self.function.value(set))
    }

    /// Marginal gain `f(set + e) - f(set)`.
    ///
    /// Consumes one oracle call when the caller supplies `cached = f(set)`,
    /// two otherwise. `e` must not already be a member.
    pub fn marginal_gain(
        &self,
        e: ElementId,
        set: &[ElementId],
        cached: Option<f64>,
    ) -> Result<f64> {
        debug_assert!(!set.contains(&e), "marginal gain of a member");
        let with = crate::algorithms::with_element(set, e);
        let value_with = self.evaluate(&with)?;
        let base = match cached {
            Some(v) => {
                debug_assert!(
                    (v - self.evaluate_uncounted(set)?).abs() <= 1e-9 * v.abs().max(1.0),
                    "stale cached value passed to marginal_gain"
                );
                v
            }
            None => self.evaluate(set)?,
        };
        Ok(value_with - base)
    }
}

/// Outcome of a submodularity / monotonicity probe.
#[derive(Clone, Copy, Debug)]
pub struct SubmodularityReport {
    /// Chains actually checked.
    pub trials: u64,
    /// Chains with `f(e|X) < f(e|Y) - tolerance` for `X <= Y`.
    pub violations: u64,
    /// Most negative value of `f(e|X) - f(e|Y)` observed (0 if none).
    pub worst_violation: f64,
    /// Smallest marginal gain seen; negative values witness
    /// non-monotonicity.
    pub min_marginal: f64,
}

impl SubmodularityReport {
    pub fn is_clean(&self) -> bool {
        self.violations == 0
    }
}

/// Samples random chains `X <= Y <= V`, `e not in Y`, and checks the
/// diminishing-returns inequality `f(e|X) >= f(e|Y) - tolerance`.
pub fn verify_submodularity(
    oracle: &ObjectiveOracle,
    trials: u64,
    seed: u64,
    tolerance: f64,
) -> Result<SubmodularityReport> {
    let n = oracle.ground_size();
    if n == 0 {
        return Ok(SubmodularityReport {
            trials: 0,
            violations: 0,
            worst_violation: 0.0,
            min_marginal: 0.0,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SubmodularityReport {
        trials: 0,
        violations: 0,
        worst_violation: 0.0,
        min_marginal: f64::INFINITY,
    };
    for _ in 0..trials {
        let mut x = Vec::new();
        let mut y = Vec::new();
        let mut outside = Vec::new();
        for i in 0..n as u32 {
            if rng.random_bool(0.5) {
                y.push(ElementId(i));
                if rng.random_bool(0.5) {
                    x.push(ElementId(i));
                }
            } else {
                outside.push(ElementId(i));
            }
        }
        if outside.is_empty() {
            continue;
        }
        let e = outside[rng.random_range(0..outside.len())];
        let gain_x = oracle.marginal_gain(e, &x, None)?;
        let gain_y = oracle.marginal_gain(e, &y, None)?;
        record_chain(&mut report, gain_x, gain_y, tolerance);
    }
    if report.min_marginal == f64::INFINITY {
        report.min_marginal = 0.0;
    }
    Ok(report)
}

/// Checks every chain `X <= Y <= V`, `e not in Y`. Exponential; refuses
/// ground sets beyond 14 elements.
pub fn verify_submodularity_exhaustive(
    oracle: &ObjectiveOracle,
    tolerance: f64,
) -> Result<SubmodularityReport> {
    let n = oracle.ground_size();
    if n > 14 {
        return Err(Error::CapExceeded {
            what: "exhaustive submodularity ground set",
            n,
            cap: 14,
        });
    }
    let mut report = SubmodularityReport {
        trials: 0,
        violations: 0,
        worst_violation: 0.0,
        min_marginal: f64::INFINITY,
    };
    let members = |mask: u32| -> Vec<ElementId> {
        (0..n as u32)
            .filter(|i| mask & (1 << i) != 0)
            .map(ElementId)
            .collect()
    };
    for y_mask in 0u32..1 << n {
        let y = members(y_mask);
        // Enumerate submasks of y_mask.
        let mut x_mask = y_mask;
        loop {
            let x = members(x_mask);
            for i in 0..n as u32 {
                if y_mask & (1 << i) != 0 {
                    continue;
                }
                let e = ElementId(i);
                let gain_x = oracle.marginal_gain(e, &x, None)?;
                let gain_y = oracle.marginal_gain(e, &y, None)?;
                record_chain(&mut report, gain_x, gain_y, tolerance);
            }
            if x_mask == 0 {
                break;
            }
            x_mask = (x_mask - 1) & y_mask;
        }
    }
    if report.min_marginal == f64::INFINITY {
        report.min_marginal = 0.0;
    }
    Ok(report)
}

fn record_chain(report: &mut SubmodularityReport, gain_x: f64, gain_y: f64, tolerance: f64) {
    report.trials += 1;
    let slack = gain_x - gain_y;
    if slack < -tolerance {
        report.violations += 1;
        if slack < report.worst_violation {
            report.worst_violation = slack;
        }
    }
    report.min_marginal = report.min_marginal.min(gain_x).min(gain_y);
}
