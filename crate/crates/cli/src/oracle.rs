//! Brute-force recounts for `--oracle`, written without the library's
//! profile code.

use anyhow::Result;
use diffset::sets::{GroupSubset, IntSet};

use crate::Violation;

/// Work limit for pair enumeration.
pub const PAIR_LIMIT: usize = 25_000_000;

pub fn small_enough(size: usize) -> bool {
    size.saturating_mul(size) <= PAIR_LIMIT
}

/// `min_{1≤m≤N} r_A(m)`.
pub fn int_min_difference(a: &IntSet, n: u64) -> u64 {
    let mut counts = vec![0u64; n as usize + 1];
    for x in a.iter() {
        for y in a.iter() {
            let d = x - y;
            if d >= 1 && d <= n as i64 {
                counts[d as usize] += 1;
            }
        }
    }
    counts[1..].iter().copied().min().unwrap_or(0)
}

/// `max_m q_A(m)`.
pub fn int_max_sum(a: &IntSet) -> u64 {
    let mut counts = std::collections::HashMap::new();
    for x in a.iter() {
        for y in a.iter() {
            *counts.entry(x + y).or_insert(0u64) += 1;
        }
    }
    counts.values().copied().max().unwrap_or(0)
}

fn group_counts(a: &GroupSubset, sum: bool) -> Vec<u64> {
    let f = a.group().factors().to_vec();
    let coords = a.coords();
    let mut counts = vec![0u64; a.group().order()];
    for x in &coords {
        for y in &coords {
            // Mixed radix, last coordinate fastest.
            let mut idx = 0u64;
            for i in 0..f.len() {
                let c = if sum { (x[i] + y[i]) % f[i] } else { (x[i] + f[i] - y[i]) % f[i] };
                idx = idx * f[i] + c;
            }
            counts[idx as usize] += 1;
        }
    }
    counts
}

/// `min_x r_A(x)` over the whole group.
pub fn group_min_difference(a: &GroupSubset) -> u64 {
    group_counts(a, false).into_iter().min().unwrap_or(0)
}

/// `min_{x≠0} r_A(x)`.
pub fn group_min_nonzero_difference(a: &GroupSubset) -> u64 {
    group_counts(a, false).into_iter().skip(1).min().unwrap_or(0)
}

pub fn group_max_sum(a: &GroupSubset) -> u64 {
    group_counts(a, true).into_iter().max().unwrap_or(0)
}

pub fn check(what: &str, library: u64, oracle: u64) -> Result<()> {
    if library != oracle {
        return Err(Violation(format!("oracle mismatch for {what}: library {library}, brute force {oracle}")).into());
    }
    Ok(())
}
