//! Representation counts `r_A` (differences) and `q_A` (sums).

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::par::Execution;
use crate::sets::{GroupSpec, GroupSubset, IntSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Difference,
    Sum,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProfileDomain {
    /// The integer shifts `lo..=hi`.
    Interval { lo: i64, hi: i64 },
    /// Every element of the group, in index order.
    Group(GroupSpec),
}

/// Representation counts over a queried domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepProfile {
    pub mode: Mode,
    pub domain: ProfileDomain,
    counts: Vec<u64>,
    pub min_count: u64,
    pub max_count: u64,
}

impl RepProfile {
    fn new(mode: Mode, domain: ProfileDomain, counts: Vec<u64>) -> Self {
        let min_count = counts.iter().copied().min().unwrap_or(0);
        let max_count = counts.iter().copied().max().unwrap_or(0);
        RepProfile {
            mode,
            domain,
            counts,
            min_count,
            max_count,
        }
    }

    /// Dense counts in domain order.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Count at an integer shift (interval domains only).
    pub fn at(&self, m: i64) -> Option<u64> {
        match self.domain {
            ProfileDomain::Interval { lo, hi } if (lo..=hi).contains(&m) => {
                Some(self.counts[(m - lo) as usize])
            }
            _ => None,
        }
    }

    /// Count at a group element index (group domains only).
    pub fn at_index(&self, x: usize) -> Option<u64> {
        match self.domain {
            ProfileDomain::Group(_) => self.counts.get(x).copied(),
            _ => None,
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Iterates `(integer shift, count)` pairs of an interval profile.
    pub fn iter_interval(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        let lo = match self.domain {
            ProfileDomain::Interval { lo, .. } => lo,
            ProfileDomain::Group(_) => 0,
        };
        self.counts
            .iter()
            .enumerate()
            .map(move |(i, &c)| (lo + i as i64, c))
    }
}

impl Serialize for RepProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RepProfile", 5)?;
        st.serialize_field("mode", &self.mode)?;
        match &self.domain {
            ProfileDomain::Interval { lo, hi } => {
                st.serialize_field("domain", &serde_json::json!({ "interval": [lo, hi] }))?;
                let counts: Vec<(i64, u64)> = self.iter_interval().collect();
                st.serialize_field("counts", &counts)?;
            }
            ProfileDomain::Group(g) => {
                st.serialize_field(
                    "domain",
                    &serde_json::json!({ "invariant_factors": g.factors() }),
                )?;
                let counts: Vec<(Vec<u64>, u64)> = self
                    .counts
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| (g.decode(i), c))
                    .collect();
                st.serialize_field("counts", &counts)?;
            }
        }
        st.serialize_field("min_count", &self.min_count)?;
        st.serialize_field("max_count", &self.max_count)?;
        st.end()
    }
}

fn check_interval(a: &IntSet, lo: i64, hi: i64) -> Result<()> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    if lo > hi {
        return Err(Error::InvalidParameter(format!(
            "empty interval [{lo},{hi}]"
        )));
    }
    Ok(())
}

/// `r_A(m)` for every `m` in `[lo, hi]`.
pub fn rep_diff_profile(a: &IntSet, lo: i64, hi: i64) -> Result<RepProfile> {
    rep_diff_profile_with(a, lo, hi, Execution::default())
}

pub fn rep_diff_profile_with(a: &IntSet, lo: i64, hi: i64, exec: Execution) -> Result<RepProfile> {
    check_interval(a, lo, hi)?;
    let counts = if prefer_bitset(a, lo, hi) {
        diff_counts_bitset(a, lo, hi, exec)
    } else {
        diff_counts_pairs(a, lo, hi, exec)
    };
    Ok(RepProfile::new(
        Mode::Difference,
        ProfileDomain::Interval { lo, hi },
        counts,
    ))
}

/// `q_A(m)` for every `m` in `[lo, hi]`.
pub fn rep_sum_profile(a: &IntSet, lo: i64, hi: i64) -> Result<RepProfile> {
    check_interval(a, lo, hi)?;
    let counts = pair_counts(a.elements(), lo, hi, Execution::default(), |x, y| x + y);
    Ok(RepProfile::new(
        Mode::Sum,
        ProfileDomain::Interval { lo, hi },
        counts,
    ))
}

/// Counts over every element of the ambient group.
pub fn group_rep_profile(a: &GroupSubset, mode: Mode) -> RepProfile {
    group_rep_profile_with(a, mode, Execution::default())
}

pub fn group_rep_profile_with(a: &GroupSubset, mode: Mode, exec: Execution) -> RepProfile {
    let g = a.group();
    let n = g.order();
    let elems = a.indices();
    let counts = exec.fold_range(
        elems.len(),
        || vec![0u64; n],
        |mut acc, i| {
            let x = elems[i];
            match mode {
                Mode::Difference => elems.iter().for_each(|&y| acc[g.sub(x, y)] += 1),
                Mode::Sum => elems.iter().for_each(|&y| acc[g.add(x, y)] += 1),
            }
            acc
        },
        add_vecs,
    );
    RepProfile::new(mode, ProfileDomain::Group(g.clone()), counts)
}

/// `r_A(x)` for a single group element, by membership tests.
pub fn group_rep_count(a: &GroupSubset, x: usize) -> u64 {
    let g = a.group();
    a.indices()
        .iter()
        .filter(|&&y| a.contains(g.add(y, x)))
        .count() as u64
}

/// `r_A(m)` for a single integer shift.
pub fn diff_count(a: &IntSet, m: i64) -> u64 {
    a.iter().filter(|&x| a.contains(x + m)).count() as u64
}

fn add_vecs(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
    a
}

fn pair_counts<F>(elems: &[i64], lo: i64, hi: i64, exec: Execution, op: F) -> Vec<u64>
where
    F: Fn(i64, i64) -> i64 + Sync + Send,
{
    let width = (hi - lo + 1) as usize;
    exec.fold_range(
        elems.len(),
        || vec![0u64; width],
        |mut acc, i| {
            let x = elems[i];
            for &y in elems {
                let m = op(x, y);
                if (lo..=hi).contains(&m) {
                    acc[(m - lo) as usize] += 1;
                }
            }
            acc
        },
        add_vecs,
    )
}

fn diff_counts_pairs(a: &IntSet, lo: i64, hi: i64, exec: Execution) -> Vec<u64> {
    pair_counts(a.elements(), lo, hi, exec, |x, y| x - y)
}

fn prefer_bitset(a: &IntSet, lo: i64, hi: i64) -> bool {
    let (Some(min), Some(max)) = (a.min(), a.max()) else {
        return false;
    };
    let span = (max - min + 1) as u128;
    let width = (hi - lo + 1) as u128;
    let k = a.len() as u128;
    width * span.div_ceil(64) < k * k
}

/// Shift-and counting: `r_A(m) = popcount(χ_A & (χ_A >> |m|))` over the hull.
fn diff_counts_bitset(a: &IntSet, lo: i64, hi: i64, exec: Execution) -> Vec<u64> {
    let min = a.min().expect("nonempty");
    let span = (a.max().expect("nonempty") - min + 1) as usize;
    let bits = Bits::from_offsets(span, a.iter().map(|x| (x - min) as usize));
    exec.map_range((hi - lo + 1) as usize, |i| {
        let m = (lo + i as i64).unsigned_abs() as usize;
        if m >= span {
            0
        } else {
            bits.and_shifted_count(m)
        }
    })
}

/// Fixed-width bitset with a shift-and popcount.
pub(crate) struct Bits {
    words: Vec<u64>,
}

impl Bits {
    pub(crate) fn from_offsets(len: usize, offsets: impl Iterator<Item = usize>) -> Self {
        let mut words = vec![0u64; len.div_ceil(64).max(1)];
        for o in offsets {
            words[o / 64] |= 1 << (o % 64);
        }
        Bits { words }
    }

    /// `popcount(self & (self >> shift))`.
    pub(crate) fn and_shifted_count(&self, shift: usize) -> u64 {
        let (ws, bs) = (shift / 64, shift % 64);
        let n = self.words.len();
        let mut total = 0u64;
        for i in 0..n.saturating_sub(ws) {
            let lo = self.words[i + ws] >> bs;
            let hi = if bs > 0 && i + ws + 1 < n {
                self.words[i + ws + 1] << (64 - bs)
            } else {
                0
            };
            total += (self.words[i] & (lo | hi)).count_ones() as u64;
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(v: &[i64]) -> IntSet {
        IntSet::new(v.to_vec()).unwrap()
    }

    /// Direct enumeration of ordered pairs.
    fn brute(a: &IntSet, m: i64, mode: Mode) -> u64 {
        let mut c = 0;
        for x in a.iter() {
            for y in a.iter() {
                let v = match mode {
                    Mode::Difference => x - y,
                    Mode::Sum => x + y,
                };
                c += (v == m) as u64;
            }
        }
        c
    }

    #[test]
    fn difference_examples() {
        let p = rep_diff_profile(&set(&[0]), -1, 1).unwrap();
        assert_eq!(p.counts(), &[0, 1, 0]);
        let p = rep_diff_profile(&set(&[0, 1, 3]), 1, 3).unwrap();
        assert_eq!(p.counts(), &[1, 1, 1]);
        let p = rep_diff_profile(&set(&[0, 1]), 0, 0).unwrap();
        assert_eq!(p.counts(), &[2]);
        assert_eq!(
            rep_diff_profile(&IntSet::default(), 0, 1),
            Err(Error::EmptySet)
        );
    }

    #[test]
    fn sum_examples() {
        assert_eq!(
            rep_sum_profile(&set(&[0, 1]), 0, 2).unwrap().counts(),
            &[1, 2, 1]
        );
        assert_eq!(rep_sum_profile(&set(&[0]), 0, 0).unwrap().counts(), &[1]);
        assert_eq!(
            rep_sum_profile(&set(&[1, 2, 4]), 2, 8).unwrap().counts(),
            &[1, 2, 1, 2, 2, 0, 1]
        );
        assert_eq!(
            rep_sum_profile(&IntSet::default(), 0, 0),
            Err(Error::EmptySet)
        );
    }

    #[test]
    fn group_examples() {
        let a = GroupSubset::cyclic(7, &[1, 2, 4]).unwrap();
        let p = group_rep_profile(&a, Mode::Difference);
        assert_eq!(p.counts(), &[3, 1, 1, 1, 1, 1, 1]);
        assert_eq!(p.total(), 9);

        let full = GroupSubset::full(GroupSpec::new(vec![2, 2]).unwrap());
        assert_eq!(
            group_rep_profile(&full, Mode::Difference).counts(),
            &[4, 4, 4, 4]
        );

        let single = GroupSubset::cyclic(5, &[0]).unwrap();
        assert_eq!(
            group_rep_profile(&single, Mode::Difference).counts(),
            &[1, 0, 0, 0, 0]
        );
    }

    #[test]
    fn bitset_and_pairs_agree() {
        let a = set(&[0, 3, 4, 9, 70, 71, 130, 200]);
        for exec in [Execution::Sequential, Execution::Parallel] {
            assert_eq!(
                diff_counts_bitset(&a, -210, 210, exec),
                diff_counts_pairs(&a, -210, 210, exec)
            );
        }
    }

    proptest! {
        #[test]
        fn profiles_match_enumeration(v in proptest::collection::btree_set(-40i64..40, 1..12), lo in -90i64..0, w in 0i64..180) {
            let a = IntSet::new(v.into_iter().collect()).unwrap();
            let hi = lo + w;
            let d = rep_diff_profile(&a, lo, hi).unwrap();
            let s = rep_sum_profile(&a, lo, hi).unwrap();
            for m in lo..=hi {
                prop_assert_eq!(d.at(m).unwrap(), brute(&a, m, Mode::Difference));
                prop_assert_eq!(s.at(m).unwrap(), brute(&a, m, Mode::Sum));
            }
            prop_assert_eq!(d.at(0).map(|c| c as usize), (lo..=hi).contains(&0).then_some(a.len()));
        }

        #[test]
        fn difference_profile_symmetry_and_translation(v in proptest::collection::btree_set(-30i64..30, 1..10), t in -1000i64..1000) {
            let a = IntSet::new(v.into_iter().collect()).unwrap();
            let span = 70;
            let p = rep_diff_profile(&a, -span, span).unwrap();
            let q = rep_diff_profile(&a.translate(t), -span, span).unwrap();
            prop_assert_eq!(p.counts(), q.counts());
            for m in -span..=span {
                prop_assert_eq!(p.at(m), p.at(-m));
            }
            prop_assert_eq!(p.total(), (a.len() * a.len()) as u64);
        }

        #[test]
        fn group_profile_totals(n in 1u64..30, v in proptest::collection::btree_set(0i64..30, 1..10)) {
            let res: Vec<i64> = v.into_iter().filter(|&x| x < n as i64).collect();
            prop_assume!(!res.is_empty());
            let a = GroupSubset::cyclic(n, &res).unwrap();
            let d = group_rep_profile(&a, Mode::Difference);
            let s = group_rep_profile(&a, Mode::Sum);
            let k = a.len() as u64;
            prop_assert_eq!(d.total(), k * k);
            prop_assert_eq!(s.total(), k * k);
            prop_assert_eq!(d.at_index(0), Some(k));
            for x in 0..n as usize {
                prop_assert_eq!(d.at_index(x).unwrap(), group_rep_count(&a, x));
            }
        }
    }
}
