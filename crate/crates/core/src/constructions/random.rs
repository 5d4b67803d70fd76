//! Seeded random subsets.
//!
//! Each inclusion decision reads the uniform variate stored at a fixed
//! position of a ChaCha8 stream keyed by the seed: element `i` uses the
//! 64-bit word at position `i` (integers are shifted by `2^63` so the map is
//! order-preserving). Decisions are therefore a pure function of
//! `(seed, index)` and do not depend on iteration order or chunking.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bridge::ProbSeq;
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::sets::{GroupSpec, GroupSubset, IntSet};

const CHUNK: usize = 4096;

/// Uniform variates addressed by position.
pub struct IndexedUniforms {
    rng: ChaCha8Rng,
    next: Option<u64>,
}

impl IndexedUniforms {
    pub fn new(seed: u64) -> Self {
        IndexedUniforms {
            rng: ChaCha8Rng::seed_from_u64(seed),
            next: None,
        }
    }

    /// The variate in `[0, 1)` at position `pos`.
    pub fn at(&mut self, pos: u64) -> f64 {
        if self.next != Some(pos) {
            // Word positions count 32-bit words.
            self.rng.set_word_pos(2 * pos as u128);
        }
        self.next = pos.checked_add(1);
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn at_signed(&mut self, i: i64) -> f64 {
        self.at((i as u64) ^ (1 << 63))
    }
}

/// Seed used for trial `trial` of a run keyed by `master`.
pub fn trial_seed(master: u64, trial: u64) -> u64 {
    master ^ trial
}

/// Includes each element of `G` independently with probability `√(g/|G|)`.
pub fn random_group_subset(group: &GroupSpec, g: u64, seed: u64) -> Result<GroupSubset> {
    random_group_subset_with(group, g, seed, Execution::default())
}

pub fn random_group_subset_with(
    group: &GroupSpec,
    g: u64,
    seed: u64,
    exec: Execution,
) -> Result<GroupSubset> {
    let n = group.order();
    if g == 0 {
        return Err(Error::InvalidParameter("g must be at least 1".into()));
    }
    if g as usize > n {
        return Err(Error::GExceedsOrder { g, order: n as u64 });
    }
    let p = (g as f64 / n as f64).sqrt();
    let chunks = exec.map_range(n.div_ceil(CHUNK), |c| {
        let mut u = IndexedUniforms::new(seed);
        let lo = c * CHUNK;
        (lo..(lo + CHUNK).min(n))
            .filter(|&i| u.at(i as u64) < p)
            .collect::<Vec<_>>()
    });
    GroupSubset::from_indices(group.clone(), chunks.concat())
}

/// Includes each integer `i` independently with probability `p_i`.
pub fn sequence_random_set(probs: &ProbSeq, seed: u64) -> Result<IntSet> {
    sequence_random_set_with(probs, seed, Execution::default())
}

pub fn sequence_random_set_with(probs: &ProbSeq, seed: u64, exec: Execution) -> Result<IntSet> {
    let entries = probs.probabilities_f64();
    let chunks = exec.map_range(entries.len().div_ceil(CHUNK), |c| {
        let mut u = IndexedUniforms::new(seed);
        let lo = c * CHUNK;
        entries[lo..(lo + CHUNK).min(entries.len())]
            .iter()
            .filter(|&&(i, p)| u.at_signed(i) < p)
            .map(|&(i, _)| i)
            .collect::<Vec<_>>()
    });
    Ok(IntSet::from_sorted_unchecked(chunks.concat()))
}
