//! Backup collection and post-stream augmentation.
//!
//! While a streaming algorithm builds an extendable solution, a backup
//! buffer of capacity `lower_c` is kept per color. Monotone runs keep the
//! first `lower_c` arrivals; non-monotone runs keep a uniform reservoir
//! sample, so that every element lands in its buffer with probability
//! `lower_c / n_c`. After the stream, lower-bound deficits of the solution
//! are repaired from the buffers.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algorithms::insert_sorted;
use crate::error::{Error, Result};
use crate::fairness::{ColorId, ElementId, FairnessSpec, GroundSet};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BackupMode {
    /// Keep the first `lower_c` arrivals of each color.
    FirstFill,
    /// Keep a uniform reservoir sample of `lower_c` elements per color.
    Reservoir,
}

pub struct BackupSets {
    mode: BackupMode,
    buffers: Vec<Vec<ElementId>>,
    capacities: Vec<u32>,
    seen: Vec<u64>,
    rng: Option<ChaCha8Rng>,
}

impl BackupSets {
    pub fn first_fill(spec: &FairnessSpec) -> Self {
        Self {
            mode: BackupMode::FirstFill,
            buffers: spec.lower_bounds().iter().map(|_| Vec::new()).collect(),
            capacities: spec.lower_bounds().to_vec(),
            seen: vec![0; spec.num_colors() as usize],
            rng: None,
        }
    }

    pub fn reservoir(spec: &FairnessSpec, rng: ChaCha8Rng) -> Self {
        Self {
            mode: BackupMode::Reservoir,
            buffers: spec.lower_bounds().iter().map(|_| Vec::new()).collect(),
            capacities: spec.lower_bounds().to_vec(),
            seen: vec![0; spec.num_colors() as usize],
            rng: Some(rng),
        }
    }

    pub fn mode(&self) -> BackupMode {
        self.mode
    }

    pub fn buffer(&self, c: ColorId) -> &[ElementId] {
        &self.buffers[c.index()]
    }

    /// Total elements currently buffered.
    pub fn stored_elements(&self) -> usize {
        self.buffers.iter().map(Vec::len).sum()
    }

    /// Offers one stream element of color `c` to its buffer.
    ///
    /// Zero-capacity colors consume no randomness at all.
    pub fn offer(&mut self, e: ElementId, c: ColorId) {
        let cap = self.capacities[c.index()] as usize;
        if cap == 0 {
            return;
        }
        self.seen[c.index()] += 1;
        let buffer = &mut self.buffers[c.index()];
        if buffer.len() < cap {
            buffer.push(e);
            return;
        }
        match self.mode {
            BackupMode::FirstFill => {}
            BackupMode::Reservoir => {
                let seen = self.seen[c.index()];
                let rng = self.rng.as_mut().expect("reservoir mode carries an rng");
                let slot = rng.random_range(0..seen);
                if (slot as usize) < cap {
                    buffer[slot as usize] = e;
                }
            }
        }
    }
}

/// Fills every lower-bound deficit of `solution` with buffered elements, in
/// buffer order, skipping duplicates. The result is feasible whenever the
/// input was extendable and the buffers saw each color in full.
pub fn augment(
    solution: &[ElementId],
    backups: &BackupSets,
    spec: &FairnessSpec,
    ground: &GroundSet,
) -> Result<Vec<ElementId>> {
    let counts = ground.color_counts(solution)?;
    let mut result = solution.to_vec();
    result.sort_unstable();
    for c in 0..spec.num_colors() {
        let color = ColorId(c);
        let mut have = counts[color.index()];
        let need = spec.lower(color);
        if have >= need {
            continue;
        }
        for &e in backups.buffer(color) {
            if have >= need {
                break;
            }
            if result.binary_search(&e).is_ok() {
                continue;
            }
            insert_sorted(&mut result, e);
            have += 1;
        }
        if have < need {
            return Err(Error::Infeasible(format!(
                "color {c}: backup buffer holds {} fresh elements, deficit is {}",
                backups.buffer(color).len(),
                need - counts[color.index()]
            )));
        }
    }
    Ok(result)
}
