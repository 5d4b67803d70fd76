//! Unions of parabolas `A_u = {(x, x²/u)}` in `(Z/pZ)²`.
//!
//! For `u ≠ v`, the number of ways to write a target `(a, b)` as a difference
//! of a point of `A_u` and a point of `A_v` is `1 + (Δ/p)` with
//! `Δ = 4uv(a² − b(u − v))`. Choosing `k` consecutive slopes `t+1, …, t+k`
//! whose character sum `S_t` is small gives a union where every nonzero
//! target has at least `k² − 2(k−1) − S_t` representations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::constructions::legendre::{check_odd_prime, legendre_unchecked, mod_inv, reduce};
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::sets::{group_rep_count, group_rep_profile_with, GroupSpec, GroupSubset, Mode};

/// `A_u = {(x, x²·u⁻¹) : x ∈ Z/pZ}`.
pub fn parabola_set(p: u64, u: i64) -> Result<GroupSubset> {
    check_odd_prime(p)?;
    let u = reduce(u, p);
    let inv = mod_inv(u, p)?;
    let group = GroupSpec::new(vec![p, p])?;
    let points: Vec<Vec<i64>> = (0..p)
        .map(|x| vec![x as i64, ((x * x % p) * inv % p) as i64])
        .collect();
    GroupSubset::from_coords(group, &points)
}

/// How a pair count was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "lowercase")]
pub enum PairCountMethod {
    /// `1 + (Δ/p)` for `u ≠ v`.
    Discriminant { delta: u64, symbol: i8 },
    /// Closed form for `u = v`: `a ≠ 0` gives 1, `(0,0)` gives `p`, else 0.
    Direct,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCount {
    pub count: u64,
    #[serde(flatten)]
    pub method: PairCountMethod,
}

/// `r_{u,v}(a,b) = |{(P, Q) ∈ A_u × A_v : P − Q = (a, b)}|`.
pub fn pair_rep_count(p: u64, u: i64, v: i64, target: (i64, i64)) -> Result<PairCount> {
    check_odd_prime(p)?;
    let (u, v) = (reduce(u, p), reduce(v, p));
    if u == 0 || v == 0 {
        return Err(Error::NotInvertible(p));
    }
    let (a, b) = (reduce(target.0, p), reduce(target.1, p));
    if u == v {
        // x − y = a and (x² − y²)/u = b, i.e. a(x + y) = bu.
        let count = match (a, b) {
            (0, 0) => p,
            (0, _) => 0,
            _ => 1,
        };
        return Ok(PairCount {
            count,
            method: PairCountMethod::Direct,
        });
    }
    let m = |x: u64, y: u64| x * y % p;
    let u_minus_v = (u + p - v) % p;
    let inner = (m(a, a) + p - m(b, u_minus_v)) % p;
    let delta = m(m(4 % p, m(u, v)), inner);
    let symbol = legendre_unchecked(delta, p);
    Ok(PairCount {
        count: (1 + symbol as i64) as u64,
        method: PairCountMethod::Discriminant { delta, symbol },
    })
}

/// `S_t = Σ_{|ℓ|≤k−1} |Σ_{i−j=ℓ} ((t+i)(t+j) / p)|` with `i, j ∈ [1, k]`.
pub fn shift_score(p: u64, k: u64, t: u64) -> Result<u64> {
    check_odd_prime(p)?;
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let max = p as i64 - k as i64 - 1;
    if t as i64 > max {
        return Err(Error::ShiftOutOfRange { t, max });
    }
    Ok(shift_score_unchecked(p, k, t))
}

fn shift_score_unchecked(p: u64, k: u64, t: u64) -> u64 {
    let chi: Vec<i64> = (1..=k)
        .map(|i| legendre_unchecked((t + i) % p, p) as i64)
        .collect();
    let k = k as i64;
    (-(k - 1)..=k - 1)
        .map(|l| {
            let s: i64 = (1..=k)
                .filter_map(|i| {
                    let j = i - l;
                    (1..=k)
                        .contains(&j)
                        .then(|| chi[(i - 1) as usize] * chi[(j - 1) as usize])
                })
                .sum();
            s.unsigned_abs()
        })
        .sum()
}

/// Whether the asymptotic size guarantee applies to an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GuaranteeStatus {
    /// `S_t < 2k^{3/2}` and the guaranteed value is positive.
    Active,
    /// `S_t < 2k^{3/2}` but the guaranteed value is at most 0.
    Vacuous,
    /// The chosen shift does not satisfy `S_t < 2k^{3/2}`.
    Unmet,
}

/// How `verified_g` was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum Verification {
    Exhaustive,
    /// Minimum over this many random nonzero targets: an upper bound on the true minimum.
    Sampled {
        targets: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnionOptions {
    /// Enumerate every target when `p² ≤ enumeration_cap`.
    pub enumeration_cap: usize,
    pub sample_targets: usize,
    pub seed: u64,
    pub exec: Execution,
}

impl Default for UnionOptions {
    fn default() -> Self {
        UnionOptions {
            enumeration_cap: 1_000_000,
            sample_targets: 4096,
            seed: 0,
            exec: Execution::default(),
        }
    }
}

/// The union `A = ⋃_{u=t+1}^{t+k} A_u` for the best shift `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolaUnion {
    pub p: u64,
    pub k: u64,
    pub t: u64,
    #[serde(rename = "S_t")]
    pub score: u64,
    /// `⌈k² − 2(k−1) − 2k^{3/2}⌉`.
    pub guaranteed_g: i64,
    pub guarantee: GuaranteeStatus,
    pub verified_g: u64,
    pub verification: Verification,
    /// `k² − 2(k−1) − S_t`, the instance lower bound on `r_A` at nonzero targets.
    pub proof_bound: i64,
    /// Every checked nonzero target meets `proof_bound`.
    pub proof_inequality_holds: bool,
    #[serde(skip)]
    pub set: Option<GroupSubset>,
    pub elements: Vec<[u64; 2]>,
}

impl ParabolaUnion {
    pub fn set(&self) -> GroupSubset {
        match &self.set {
            Some(s) => s.clone(),
            None => {
                let group = GroupSpec::new(vec![self.p, self.p]).expect("valid prime square");
                let coords: Vec<Vec<i64>> = self
                    .elements
                    .iter()
                    .map(|e| vec![e[0] as i64, e[1] as i64])
                    .collect();
                GroupSubset::from_coords(group, &coords).expect("stored elements are valid")
            }
        }
    }
}

/// `⌈k² − 2(k−1) − 2k^{3/2}⌉ = k² − 2k + 2 − ⌊√(4k³)⌋`.
pub fn guaranteed_g(k: u64) -> i64 {
    let k = k as i128;
    let floor_root = crate::rational::isqrt_u128((4 * k * k * k) as u128) as i128;
    (k * k - 2 * k + 2 - floor_root) as i64
}

/// Scores every admissible shift; ties go to the smallest `t`.
pub fn best_shift(p: u64, k: u64, exec: Execution) -> Result<(u64, u64)> {
    check_odd_prime(p)?;
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if p <= k + 1 {
        return Err(Error::NoAdmissibleShift { p, k });
    }
    let count = (p - k) as usize;
    let scores = exec.map_range(count, |t| shift_score_unchecked(p, k, t as u64));
    let (t, s) = scores
        .iter()
        .enumerate()
        .min_by_key(|&(t, s)| (*s, t))
        .expect("at least one shift");
    Ok((t as u64, *s))
}

pub fn union_for_shift(p: u64, k: u64, t: u64) -> Result<GroupSubset> {
    let group = GroupSpec::new(vec![p, p])?;
    let mut idx: Vec<usize> = Vec::with_capacity((k * (p - 1) + 1) as usize);
    for u in t + 1..=t + k {
        let inv = mod_inv(u, p)?;
        idx.extend((0..p).map(|x| (x * p + (x * x % p) * inv % p) as usize));
    }
    idx.sort_unstable();
    idx.dedup();
    GroupSubset::from_indices(group, idx)
}

pub fn best_shift_union(p: u64, k: u64) -> Result<ParabolaUnion> {
    best_shift_union_with(p, k, &UnionOptions::default())
}

pub fn best_shift_union_with(p: u64, k: u64, opts: &UnionOptions) -> Result<ParabolaUnion> {
    let (t, score) = best_shift(p, k, opts.exec)?;
    let set = union_for_shift(p, k, t)?;
    let ki = k as i64;
    let proof_bound = ki * ki - 2 * (ki - 1) - score as i64;
    let g = guaranteed_g(k);
    // S_t < 2k^{3/2} ⇔ S_t² < 4k³.
    let guarantee = if (score as u128).pow(2) >= 4 * (k as u128).pow(3) {
        GuaranteeStatus::Unmet
    } else if g <= 0 {
        GuaranteeStatus::Vacuous
    } else {
        GuaranteeStatus::Active
    };

    let order = (p * p) as usize;
    let (verified_g, verification, holds) = if order <= opts.enumeration_cap {
        let prof = group_rep_profile_with(&set, Mode::Difference, opts.exec);
        let min_nonzero = prof.counts()[1..].iter().copied().min().unwrap_or(0);
        (
            min_nonzero,
            Verification::Exhaustive,
            min_nonzero as i64 >= proof_bound,
        )
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let targets: Vec<usize> = (0..opts.sample_targets)
            .map(|_| rng.random_range(1..order))
            .collect();
        let counts = opts.exec.map_slice(&targets, |&x| group_rep_count(&set, x));
        let min = counts.iter().copied().min().unwrap_or(0);
        (
            min,
            Verification::Sampled {
                targets: targets.len(),
            },
            counts.iter().all(|&c| c as i64 >= proof_bound),
        )
    };

    let elements = set.coords().into_iter().map(|c| [c[0], c[1]]).collect();
    Ok(ParabolaUnion {
        p,
        k,
        t,
        score,
        guaranteed_g: g,
        guarantee,
        verified_g,
        verification,
        proof_bound,
        proof_inequality_holds: holds,
        set: Some(set),
        elements,
    })
}
