//! Log-determinant (DPP) objective.
//!
//! Given a PSD kernel `L`, evaluates `f(S) = logdet(M_S) + shift` on
//! non-empty sets, where `M = L + epsilon * I` and the constant
//! `shift = n * max(0, -log lambda_min(M))`. Eigenvalue interlacing gives
//! `logdet(M_S) >= |S| * log lambda_min(M)`, so the constant dominates
//! every possible negative value and `f` is non-negative on all non-empty
//! sets; `f(empty) = 0`.
//!
//! The shift must be set-independent: any modular correction of at least
//! `-log lambda_min` per element would cancel the smallest possible
//! marginal (each marginal is the log of a Schur complement, which
//! interlaces with the spectrum of `M`) and thereby force monotonicity.
//! A constant keeps the raw log-det marginals, so correlated kernels stay
//! non-monotone, while still being submodular: it only enlarges the
//! empty-set marginal, which is already the largest.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::fairness::ElementId;
use crate::objectives::{ObjectiveOracle, SetFunction};

pub const DEFAULT_KERNEL_EPSILON: f64 = 0.1;

#[derive(Clone, Debug)]
pub struct KernelObjectiveInstance {
    m: DMatrix<f64>,
    epsilon: f64,
    shift: f64,
    lambda_min: f64,
}

impl KernelObjectiveInstance {
    /// Builds the perturbed kernel `M = L + epsilon * I` and computes the
    /// normalization shift once. `L` must be square and symmetric PSD;
    /// symmetry and `lambda_min(M) > 0` are enforced within `psd_tolerance`.
    pub fn new(l: DMatrix<f64>, epsilon: f64, psd_tolerance: f64) -> Result<Self> {
        if l.nrows() != l.ncols() {
            return Err(Error::InvalidParameter(format!(
                "kernel must be square, got {}x{}",
                l.nrows(),
                l.ncols()
            )));
        }
        let n = l.nrows();
        for i in 0..n {
            for j in (i + 1)..n {
                if (l[(i, j)] - l[(j, i)]).abs() > psd_tolerance {
                    return Err(Error::InvalidParameter(format!(
                        "kernel asymmetric at ({i}, {j}): {} vs {}",
                        l[(i, j)],
                        l[(j, i)]
                    )));
                }
            }
        }
        let mut m = l;
        for i in 0..n {
            m[(i, i)] += epsilon;
        }
        let lambda_min = if n == 0 {
            epsilon
        } else {
            m.clone()
                .symmetric_eigen()
                .eigenvalues
                .iter()
                .copied()
                .fold(f64::INFINITY, f64::min)
        };
        if lambda_min <= psd_tolerance {
            return Err(Error::InvalidParameter(format!(
                "kernel not positive definite after perturbation: lambda_min = {lambda_min}"
            )));
        }
        let shift = n as f64 * (-lambda_min.ln()).max(0.0);
        Ok(Self {
            m,
            epsilon,
            shift,
            lambda_min,
        })
    }

    /// Constant added to every non-empty value.
    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }

    pub fn into_oracle(self) -> ObjectiveOracle {
        let descriptor = format!(
            "kernel_logdet(n={}, epsilon={}, shift={:.6})",
            self.m.nrows(),
            self.epsilon,
            self.shift
        );
        ObjectiveOracle::from_function(descriptor, self)
    }
}

impl SetFunction for KernelObjectiveInstance {
    fn ground_size(&self) -> usize {
        self.m.nrows()
    }

    fn value(&self, set: &[ElementId]) -> f64 {
        if set.is_empty() {
            return 0.0;
        }
        let s = set.len();
        let mut sub = DMatrix::zeros(s, s);
        for (i, &ei) in set.iter().enumerate() {
            for (j, &ej) in set.iter().enumerate() {
                sub[(i, j)] = self.m[(ei.index(), ej.index())];
            }
        }
        // Principal submatrices of a PD matrix stay PD, so the
        // factorization only fails on inputs that violated construction.
        let chol = sub
            .cholesky()
            .expect("kernel principal submatrix must be positive definite");
        let logdet: f64 = (0..s).map(|i| chol.l_dirty()[(i, i)].ln()).sum::<f64>() * 2.0;
        logdet + self.shift
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_kernel_singleton() {
        let inst = KernelObjectiveInstance::new(DMatrix::identity(2, 2), 0.1, 1e-8).unwrap();
        assert_eq!(inst.shift(), 0.0);
        assert!((inst.lambda_min() - 1.1).abs() < 1e-9);
        let oracle = inst.into_oracle();
        let v = oracle.evaluate(&[ElementId(0)]).unwrap();
        assert!((v - 1.1f64.ln()).abs() < 1e-12);
        assert!((v - 0.0953).abs() < 1e-4);
    }

    #[test]
    fn order_invariant_and_non_negative() {
        // A correlated PSD kernel with lambda_min(M) < 1 forces a shift.
        let l = DMatrix::from_row_slice(3, 3, &[1.0, 0.9, 0.8, 0.9, 1.0, 0.9, 0.8, 0.9, 1.0]);
        let inst = KernelObjectiveInstance::new(l, 0.1, 1e-8).unwrap();
        assert!(inst.shift() > 0.0);
        let oracle = inst.into_oracle();
        let forward = oracle
            .evaluate(&[ElementId(0), ElementId(1), ElementId(2)])
            .unwrap();
        let backward = oracle
            .evaluate(&[ElementId(2), ElementId(0), ElementId(1)])
            .unwrap();
        assert!((forward - backward).abs() < 1e-9);
        for mask in 1u32..8 {
            let set: Vec<ElementId> =
                (0..3).filter(|i| mask & (1 << i) != 0).map(ElementId).collect();
            assert!(oracle.evaluate(&set).unwrap() >= -1e-12);
        }
    }

    #[test]
    fn correlated_kernel_has_a_negative_marginal() {
        let l = DMatrix::from_row_slice(3, 3, &[1.0, 0.98, 0.9, 0.98, 1.0, 0.95, 0.9, 0.95, 1.0]);
        let oracle = KernelObjectiveInstance::new(l, 0.1, 1e-8)
            .unwrap()
            .into_oracle();
        let pair = oracle.evaluate(&[ElementId(0), ElementId(1)]).unwrap();
        let gain = oracle
            .marginal_gain(ElementId(2), &[ElementId(0), ElementId(1)], Some(pair))
            .unwrap();
        assert!(gain < 0.0, "expected a negative marginal, got {gain}");
    }

    #[test]
    fn asymmetric_kernel_rejected() {
        let l = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.1, 1.0]);
        assert!(KernelObjectiveInstance::new(l, 0.1, 1e-8).is_err());
    }
}
