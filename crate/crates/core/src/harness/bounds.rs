//! Bound-setting recipes tied to group frequencies.
//!
//! Additive recipes move each group's frequency `p_c = n_c / n` by a slack
//! before scaling by `k`; multiplicative recipes scale `p_c * k` by the
//! slack factors. Lower bounds floor, upper bounds ceil. When the rounded
//! lower bounds oversubscribe `k`, the largest ones are decremented (ties
//! to the smaller color) until they fit, and the repair is flagged.

use crate::error::Result;
use crate::fairness::{ColorId, FairnessSpec, GroundSet};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BoundsMode {
    /// `lower = floor(max(0, p - s_l) k)`, `upper = ceil(min(1, p + s_u) k)`.
    Additive,
    /// `lower = floor(s_l p k)`, `upper = ceil(s_u p k)`.
    Multiplicative,
}

#[derive(Clone, Copy, Debug)]
pub struct BoundsRecipe {
    pub mode: BoundsMode,
    pub lower_slack: f64,
    pub upper_slack: f64,
    /// Color whose lower bound is forced to zero (e.g. a "null" attribute).
    pub null_color: Option<ColorId>,
}

/// Guard against float noise right at integer boundaries.
const ROUND_GUARD: f64 = 1e-9;

fn floor_guarded(x: f64) -> u32 {
    (x + ROUND_GUARD).floor().max(0.0) as u32
}

fn ceil_guarded(x: f64) -> u32 {
    (x - ROUND_GUARD).ceil().max(0.0) as u32
}

/// Derives a fairness spec from group frequencies. Returns the spec and
/// whether the lower bounds had to be repaired to fit under `k`.
pub fn proportional_bounds(
    ground: &GroundSet,
    k: u32,
    recipe: &BoundsRecipe,
) -> Result<(FairnessSpec, bool)> {
    let n = ground.len() as f64;
    let num_colors = ground.num_colors() as usize;
    let mut lower = vec![0u32; num_colors];
    let mut upper = vec![0u32; num_colors];
    for c in 0..num_colors {
        let p = f64::from(ground.color_size(ColorId(c as u32))) / n;
        let (l, u) = match recipe.mode {
            BoundsMode::Additive => (
                floor_guarded((p - recipe.lower_slack).max(0.0) * f64::from(k)),
                ceil_guarded((p + recipe.upper_slack).min(1.0) * f64::from(k)),
            ),
            BoundsMode::Multiplicative => (
                floor_guarded(recipe.lower_slack * p * f64::from(k)),
                ceil_guarded(recipe.upper_slack * p * f64::from(k)),
            ),
        };
        lower[c] = l;
        upper[c] = u.max(l);
    }
    if let Some(null) = recipe.null_color {
        lower[null.index()] = 0;
    }

    let mut repaired = false;
    loop {
        let total: u64 = lower.iter().map(|&l| u64::from(l)).sum();
        if total <= u64::from(k) {
            break;
        }
        repaired = true;
        // Largest lower bound gives way first; ties to the smaller color.
        let target = (0..num_colors)
            .max_by(|&a, &b| lower[a].cmp(&lower[b]).then(b.cmp(&a)))
            .expect("at least one color");
        lower[target] -= 1;
    }

    let spec = FairnessSpec::new(lower, upper, k)?;
    spec.validate_for(ground)?;
    Ok((spec, repaired))
}

/// Colors a frame sequence by contiguous segments of length `t`: frame `i`
/// gets color `i / t`, yielding `ceil(n / t)` colors.
pub fn segment_coloring(n_frames: usize, t: usize) -> Result<GroundSet> {
    if t == 0 {
        return Err(crate::error::Error::InvalidParameter(
            "segment length must be at least 1".into(),
        ));
    }
    let colors = (0..n_frames)
        .map(|i| ColorId((i / t) as u32))
        .collect::<Vec<_>>();
    GroundSet::new(colors, n_frames.div_ceil(t).max(1) as u32)
}
