//! Memory-lower-bound instance generator.
//!
//! Encodes a bit string into a directed-cut instance over three colors.
//! Color 1 holds one placeholder per bit position (`v_i` when the bit is
//! set, `w_i` otherwise), color 2 holds `b` targets, color 3 holds `b`
//! decoys. The distinguished position `i_star` points at the decoys when
//! its bit is set; every other color-1 element points at all targets. With
//! the constraints `l_1 = u_1 = 1`, `l_2 = u_2 = b - a`, `l_3 = u_3 = 0`
//! and `k = 1 + b - a`, the optimum is `b` when the bit is set and `a`
//! otherwise, so any solver beating the `a / b` gap must effectively recall
//! the bit — and `a / b` equals the instance's excess ratio.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::fairness::{ColorId, ElementId, FairnessSpec, GroundSet};
use crate::objectives::{CutInstance, ObjectiveOracle};

#[derive(Clone, Debug)]
pub struct HardnessInstance {
    pub ground: GroundSet,
    pub spec: FairnessSpec,
    pub cut: CutInstance,
    pub a: u32,
    pub b: u32,
    pub i_star: usize,
    pub bit: bool,
    /// Number of encoded bit positions (size of color 1).
    pub n_bits: usize,
}

impl HardnessInstance {
    pub fn oracle(&self) -> ObjectiveOracle {
        self.cut.clone().into_oracle()
    }

    pub fn excess_ratio(&self) -> Ratio<u64> {
        Ratio::new(u64::from(self.a), u64::from(self.b))
    }

    /// Role label of an element: `v<i>`/`w<i>` for bit placeholders,
    /// `y<j>` for targets, `z<j>` for decoys.
    pub fn element_label(&self, e: ElementId, bits: &[bool]) -> String {
        let idx = e.index();
        if idx < self.n_bits {
            if bits[idx] {
                format!("v{idx}")
            } else {
                format!("w{idx}")
            }
        } else if idx < self.n_bits + self.b as usize {
            format!("y{}", idx - self.n_bits)
        } else {
            format!("z{}", idx - self.n_bits - self.b as usize)
        }
    }
}

/// Smallest-denominator rational with `q <= a / b < q + epsilon` and
/// `b = O(1 / epsilon)`.
pub fn choose_rational(q: f64, epsilon: f64) -> Option<(u32, u32)> {
    if !(0.0..=1.0).contains(&q) || epsilon <= 0.0 {
        return None;
    }
    let max_b = (1.0 / epsilon).ceil() as u32 + 1;
    for b in 1..=max_b {
        let a = (q * f64::from(b)).ceil() as u32;
        if a > b {
            continue;
        }
        let ratio = f64::from(a) / f64::from(b);
        if ratio >= q && ratio < q + epsilon {
            return Some((a, b));
        }
    }
    None
}

/// Builds the hardness instance for bit string `x` and index `i_star`,
/// targeting an excess ratio within `[q_target, q_target + epsilon)`.
pub fn gen_hardness(
    x: &[bool],
    i_star: usize,
    q_target: f64,
    epsilon: f64,
) -> Result<HardnessInstance> {
    let n = x.len();
    if i_star >= n {
        return Err(Error::InvalidParameter(format!(
            "i_star = {i_star} out of range for {n} bits"
        )));
    }
    let (a, b) = choose_rational(q_target, epsilon).ok_or_else(|| {
        Error::InvalidParameter(format!(
            "no rational approximation of {q_target} within {epsilon}"
        ))
    })?;
    if a == b {
        return Err(Error::InvalidParameter(format!(
            "targets with a = b = {a} degenerate (color 2 becomes empty)"
        )));
    }
    // The color-2 ratio (b - a) / b must dominate 1 / n for the excess
    // ratio of the instance to equal a / b.
    if (n as u64) * u64::from(b - a) < u64::from(b) {
        return Err(Error::InvalidParameter(format!(
            "need n * (b - a) >= b, got n = {n}, a = {a}, b = {b}"
        )));
    }

    let mut colors = vec![ColorId(0); n];
    colors.extend(vec![ColorId(1); b as usize]);
    colors.extend(vec![ColorId(2); b as usize]);
    let ground = GroundSet::new(colors, 3)?;

    let mut arcs = Vec::new();
    for (i, &bit_set) in x.iter().enumerate() {
        if i == i_star && bit_set {
            // The flagged placeholder points at the decoys.
            for j in 0..b {
                arcs.push((i as u32, (n as u32) + b + j));
            }
        } else {
            for j in 0..b {
                arcs.push((i as u32, (n as u32) + j));
            }
        }
    }
    let cut = CutInstance::new(n + 2 * b as usize, arcs);
    let spec = FairnessSpec::new(vec![1, b - a, 0], vec![1, b - a, 0], 1 + b - a)?;

    Ok(HardnessInstance {
        ground,
        spec,
        cut,
        a,
        b,
        i_star,
        bit: x[i_star],
        n_bits: n,
    })
}
