//! Personalized movie-recommendation utility.
//!
//! `f_u(S) = alpha * sum_{m'} max(max_{m in S} <v_m, v_m'>, 0)
//!         + (1 - alpha) * sum_{m in S} <w_u, v_m>`.
//!
//! The first term rewards coverage of the catalog, the second sums the
//! user's predicted scores. The inner max over an empty selection is taken
//! as 0, so `f(empty) = 0`.

use crate::error::{Error, Result};
use crate::fairness::ElementId;
use crate::objectives::{ObjectiveOracle, SetFunction};

#[derive(Clone, Debug)]
pub struct MovieUtilityInstance {
    gram: Vec<Vec<f64>>,
    user_scores: Vec<f64>,
    alpha: f64,
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

impl MovieUtilityInstance {
    pub fn new(user: Vec<f64>, movies: Vec<Vec<f64>>, alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidParameter(format!(
                "alpha must lie in [0, 1], got {alpha}"
            )));
        }
        let dim = user.len();
        if movies.iter().any(|v| v.len() != dim) {
            return Err(Error::InvalidParameter(
                "movie vectors must match the user vector dimension".into(),
            ));
        }
        let n = movies.len();
        let mut gram = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in i..n {
                let d = dot(&movies[i], &movies[j]);
                gram[i][j] = d;
                gram[j][i] = d;
            }
        }
        let user_scores = movies.iter().map(|v| dot(&user, v)).collect();
        Ok(Self {
            gram,
            user_scores,
            alpha,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn into_oracle(self) -> ObjectiveOracle {
        let descriptor = format!(
            "movie_utility(movies={}, alpha={})",
            self.gram.len(),
            self.alpha
        );
        ObjectiveOracle::from_function(descriptor, self)
    }
}

impl SetFunction for MovieUtilityInstance {
    fn ground_size(&self) -> usize {
        self.gram.len()
    }

    fn value(&self, set: &[ElementId]) -> f64 {
        if set.is_empty() {
            return 0.0;
        }
        let coverage: f64 = (0..self.gram.len())
            .map(|m_prime| {
                set.iter()
                    .map(|m| self.gram[m.index()][m_prime])
                    .fold(f64::NEG_INFINITY, f64::max)
                    .max(0.0)
            })
            .sum();
        let personal: f64 = set.iter().map(|m| self.user_scores[m.index()]).sum();
        self.alpha * coverage + (1.0 - self.alpha) * personal
    }
}
