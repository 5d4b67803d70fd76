//! Monte Carlo validation of the random constructions.
//!
//! Each trial draws a set with seed `master ⊕ trial`, checks the
//! construction's conclusions exactly and records the outcome. For a few
//! probe shifts the report also compares empirical deviation frequencies of
//! `r_A` with the Chernoff bound. The comparison is made on the parts of a
//! split of the index set on which the products `X_i X_{i+x}` are
//! independent:
//!
//! * in a group, every coset cycle `a, a+x, a+2x, …` is coloured
//!   alternately, giving two parts (three when the cycle is odd). For `x` of
//!   order 2 the terms pair up and one representative per pair is kept;
//! * on the integers, `i` is split by whether `i mod 2m` lies in `[1, m]`.

use std::cmp::Ordering;

use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::bridge::ProbSeq;
use crate::constructions::chernoff::chernoff_bound;
use crate::constructions::random::{
    random_group_subset_with, sequence_random_set_with, trial_seed,
};
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::rational::{q, q_to_f64, CubeRootScaled, Q};
use crate::sets::{group_rep_profile_with, rep_diff_profile_with, GroupSpec, IntSet, Mode};

/// A random construction and the parameters its guarantee depends on.
#[derive(Clone, Debug)]
pub enum RandomModel {
    /// Elements of `G` kept with probability `√(g/|G|)`.
    Group { group: GroupSpec, g: u64 },
    /// Integers kept with probability `p_i`; conclusions are checked for
    /// shifts in `[1, N]` against `τ̂`.
    Sequence { probs: ProbSeq, n: u64, tau_hat: Q },
}

#[derive(Clone, Debug)]
pub struct MonteCarloConfig {
    pub trials: u64,
    pub seed: u64,
    pub delta: Q,
    pub epsilon: Q,
    /// Number of shifts probed for tail frequencies.
    pub probes: usize,
    pub exec: Execution,
}

impl Default for MonteCarloConfig {
    fn default() -> Self {
        MonteCarloConfig {
            trials: 100,
            seed: 0,
            delta: Q::new(3.into(), 10.into()),
            epsilon: Q::new(1.into(), 10.into()),
            probes: 6,
            exec: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub seed: u64,
    pub size: usize,
    /// `min r_A` over the target domain.
    pub achieved_g: u64,
    pub size_ok: bool,
    pub g_ok: bool,
    pub success: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Thresholds {
    /// Smallest integer that `min r_A` must reach.
    pub required_g: u64,
    /// Size bound, rounded for display; the check itself is exact.
    pub size_bound: f64,
    /// Expected size `Σ p_i`.
    pub expected_size: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailCheck {
    /// Probe shift (group coordinates or an integer in a one-element list).
    pub shift: Vec<i64>,
    /// `"total"` or the part index.
    pub scope: String,
    pub mu: f64,
    pub delta: f64,
    pub frequency: f64,
    pub bound: f64,
    /// Five binomial standard errors of the observed frequency.
    pub slack: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Aggregate {
    pub successes: u64,
    pub success_rate: f64,
    pub mean_size: f64,
    pub min_size: usize,
    pub max_size: usize,
    pub min_achieved_g: u64,
    pub tails_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonteCarloReport {
    pub model: String,
    pub trials: u64,
    pub seed: u64,
    pub delta: String,
    pub epsilon: String,
    pub thresholds: Thresholds,
    pub per_trial: Vec<TrialRecord>,
    pub aggregate: Aggregate,
    pub tails: Vec<TailCheck>,
}

/// A probe shift and its split into independent parts.
struct Probe {
    shift: Vec<i64>,
    /// `(index, part)` pairs; the term for index `i` is `X_i X_{i+x}`.
    terms: Vec<(usize, usize)>,
    /// `r = factor · Σ terms`.
    factor: u64,
    mu_parts: Vec<f64>,
}

impl Probe {
    fn mu_total(&self) -> f64 {
        self.factor as f64 * self.mu_parts.iter().sum::<f64>()
    }
}

pub fn monte_carlo_validate(
    model: &RandomModel,
    cfg: &MonteCarloConfig,
) -> Result<MonteCarloReport> {
    if cfg.trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    if !cfg.delta.is_positive() || cfg.delta >= Q::one() {
        return Err(Error::InvalidParameter("delta must lie in (0, 1)".into()));
    }
    if cfg.epsilon.is_negative() || cfg.epsilon >= Q::one() {
        return Err(Error::InvalidParameter("epsilon must lie in [0, 1)".into()));
    }
    match model {
        RandomModel::Group { group, g } => validate_group(group, *g, cfg),
        RandomModel::Sequence { probs, n, tau_hat } => validate_sequence(probs, *n, tau_hat, cfg),
    }
}

/// Per-trial outcome plus the probe deviations.
struct Draw {
    record: TrialRecord,
    probe_sums: Vec<Vec<u64>>,
}

fn validate_group(group: &GroupSpec, g: u64, cfg: &MonteCarloConfig) -> Result<MonteCarloReport> {
    let n = group.order();
    if g == 0 || g as usize > n {
        return Err(Error::GExceedsOrder { g, order: n as u64 });
    }
    // min r_A ≥ (1−δ)g
    let required = (q(g as i64) * (Q::one() - &cfg.delta)).ceil().to_integer();
    let required_g = required.to_u64().expect("required g fits in u64");
    // |A|² ≤ (1+ε)² g |G|
    let one_plus = Q::one() + &cfg.epsilon;
    let size_sq_bound = &one_plus * &one_plus * q(g as i64) * q(n as i64);
    let p2 = g as f64 / n as f64;
    let probes = group_probes(group, cfg.probes, p2);

    let draws = cfg
        .exec
        .map_range(cfg.trials as usize, |t| -> Result<Draw> {
            let seed = trial_seed(cfg.seed, t as u64);
            let a = random_group_subset_with(group, g, seed, Execution::Sequential)?;
            let prof = group_rep_profile_with(&a, Mode::Difference, Execution::Sequential);
            let ind = a.indicator();
            let probe_sums = probes
                .iter()
                .map(|pr| {
                    let x = group.encode(&pr.shift).expect("probe lies in the group");
                    let mut sums = vec![0u64; pr.mu_parts.len()];
                    for &(i, part) in &pr.terms {
                        if ind[i] && ind[group.add(i, x)] {
                            sums[part] += 1;
                        }
                    }
                    sums
                })
                .collect();
            let size_ok = q((a.len() * a.len()) as i64) <= size_sq_bound;
            let g_ok = prof.min_count >= required_g;
            Ok(Draw {
                record: TrialRecord {
                    trial: t as u64,
                    seed,
                    size: a.len(),
                    achieved_g: prof.min_count,
                    size_ok,
                    g_ok,
                    success: size_ok && g_ok,
                },
                probe_sums,
            })
        });
    let draws: Vec<Draw> = draws.into_iter().collect::<Result<_>>()?;
    let thresholds = Thresholds {
        required_g,
        size_bound: q_to_f64(&size_sq_bound).sqrt(),
        expected_size: (g as f64 * n as f64).sqrt(),
    };
    Ok(assemble(
        format!("group {group} g={g}"),
        cfg,
        thresholds,
        &probes,
        draws,
    ))
}

fn validate_sequence(
    probs: &ProbSeq,
    n: u64,
    tau_hat: &Q,
    cfg: &MonteCarloConfig,
) -> Result<MonteCarloReport> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be positive".into()));
    }
    if !tau_hat.is_positive() {
        return Err(Error::InvalidParameter("tau_hat must be positive".into()));
    }
    let one_plus = Q::one() + &cfg.epsilon;
    let one_minus = Q::one() - &cfg.epsilon;
    // |A| ≤ (1+ε) τ̂ N^{2/3} and r_A(m) ≥ ((1−ε)²/(1+ε)²) N^{1/3}
    let size_bound = CubeRootScaled::new(&one_plus * tau_hat, n, 2);
    let g_bound = CubeRootScaled::new((&one_minus * &one_minus) / (&one_plus * &one_plus), n, 1);
    let required_g = g_bound.ceil().to_u64().expect("required g fits in u64");
    let p = probs.probabilities_f64();
    let probes = sequence_probes(&p, n, cfg.probes);

    let draws = cfg
        .exec
        .map_range(cfg.trials as usize, |t| -> Result<Draw> {
            let seed = trial_seed(cfg.seed, t as u64);
            let a = sequence_random_set_with(probs, seed, Execution::Sequential)?;
            let achieved = min_diff_count(&a, n)?;
            let probe_sums = probes
                .iter()
                .map(|pr| {
                    let m = pr.shift[0];
                    let mut sums = vec![0u64; pr.mu_parts.len()];
                    for &(k, part) in &pr.terms {
                        let i = p[k].0;
                        if a.contains(i) && a.contains(i + m) {
                            sums[part] += 1;
                        }
                    }
                    sums
                })
                .collect();
            let size_ok = size_bound.cmp_rational(&q(a.len() as i64)) != Ordering::Less;
            let g_ok = achieved >= required_g;
            Ok(Draw {
                record: TrialRecord {
                    trial: t as u64,
                    seed,
                    size: a.len(),
                    achieved_g: achieved,
                    size_ok,
                    g_ok,
                    success: size_ok && g_ok,
                },
                probe_sums,
            })
        });
    let draws: Vec<Draw> = draws.into_iter().collect::<Result<_>>()?;
    let thresholds = Thresholds {
        required_g,
        size_bound: size_bound.to_f64(),
        expected_size: p.iter().map(|e| e.1).sum(),
    };
    Ok(assemble(
        format!("sequence N={n} tau_hat={tau_hat}"),
        cfg,
        thresholds,
        &probes,
        draws,
    ))
}

fn min_diff_count(a: &IntSet, n: u64) -> Result<u64> {
    if a.is_empty() {
        return Ok(0);
    }
    Ok(rep_diff_profile_with(a, 1, n as i64, Execution::Sequential)?.min_count)
}

/// Probe shifts: `1`, an element of order 2 when one exists, and a few
/// evenly spaced indices.
fn group_probes(group: &GroupSpec, count: usize, p2: f64) -> Vec<Probe> {
    let n = group.order();
    let mut xs: Vec<usize> = Vec::new();
    if n > 1 {
        xs.push(1);
        if let Some(h) = (1..n).find(|&x| group.element_order(x) == 2) {
            xs.push(h);
        }
        for k in 1..count.max(1) {
            xs.push((k * n / count.max(1) + 1) % n);
        }
    }
    xs.retain(|&x| x != 0);
    xs.sort_unstable();
    xs.dedup();
    xs.into_iter()
        .map(|x| {
            let ord = group.element_order(x) as usize;
            let mut terms = Vec::with_capacity(n);
            let mut seen = vec![false; n];
            let (factor, parts) = if ord == 2 {
                (2, 1)
            } else {
                (1, if ord % 2 == 1 { 3 } else { 2 })
            };
            for start in 0..n {
                if seen[start] {
                    continue;
                }
                let mut c = start;
                for j in 0..ord {
                    seen[c] = true;
                    if ord == 2 {
                        if j == 0 {
                            terms.push((c, 0));
                        }
                    } else {
                        let part = if ord % 2 == 1 && j == ord - 1 {
                            2
                        } else {
                            j % 2
                        };
                        terms.push((c, part));
                    }
                    c = group.add(c, x);
                }
            }
            let mut mu_parts = vec![0.0; parts];
            for &(_, part) in &terms {
                mu_parts[part] += p2;
            }
            Probe {
                shift: group.decode(x).into_iter().map(|c| c as i64).collect(),
                terms,
                factor,
                mu_parts,
            }
        })
        .collect()
}

/// Probe shifts spread over `[1, N]`, split by `i mod 2m ∈ [1, m]`.
fn sequence_probes(p: &[(i64, f64)], n: u64, count: usize) -> Vec<Probe> {
    let count = count.max(1) as u64;
    let mut ms: Vec<i64> = (0..count)
        .map(|k| 1 + (k * (n - 1) / count.saturating_sub(1).max(1)) as i64)
        .collect();
    ms.dedup();
    ms.into_iter()
        .map(|m| {
            let mut terms = Vec::new();
            let mut mu_parts = vec![0.0; 2];
            for (k, &(i, pi)) in p.iter().enumerate() {
                let Ok(k2) = p.binary_search_by_key(&(i + m), |e| e.0) else {
                    continue;
                };
                let r = i.rem_euclid(2 * m);
                let part = if (1..=m).contains(&r) { 0 } else { 1 };
                terms.push((k, part));
                mu_parts[part] += pi * p[k2].1;
            }
            Probe {
                shift: vec![m],
                terms,
                factor: 1,
                mu_parts,
            }
        })
        .collect()
}

fn assemble(
    model: String,
    cfg: &MonteCarloConfig,
    thresholds: Thresholds,
    probes: &[Probe],
    draws: Vec<Draw>,
) -> MonteCarloReport {
    let trials = draws.len() as f64;
    let delta = q_to_f64(&cfg.delta);
    let mut tails = Vec::new();
    for (k, pr) in probes.iter().enumerate() {
        for d in [delta / 2.0, delta] {
            // parts
            for (j, &mu) in pr.mu_parts.iter().enumerate() {
                if mu <= 0.0 {
                    continue;
                }
                let hits = draws
                    .iter()
                    .filter(|dr| (dr.probe_sums[k][j] as f64 - mu).abs() >= d * mu)
                    .count();
                tails.push(tail(
                    pr,
                    j.to_string(),
                    mu,
                    d,
                    hits as f64 / trials,
                    chernoff_bound(d, mu),
                    trials,
                ));
            }
            // the whole count, against the union bound over its parts
            let mu = pr.mu_total();
            if mu > 0.0 {
                let hits = draws
                    .iter()
                    .filter(|dr| {
                        let r = pr.factor * dr.probe_sums[k].iter().sum::<u64>();
                        (r as f64 - mu).abs() >= d * mu
                    })
                    .count();
                let bound = pr
                    .mu_parts
                    .iter()
                    .filter(|&&m| m > 0.0)
                    .map(|&m| chernoff_bound(d, m))
                    .sum::<f64>()
                    .min(1.0);
                tails.push(tail(
                    pr,
                    "total".into(),
                    mu,
                    d,
                    hits as f64 / trials,
                    bound,
                    trials,
                ));
            }
        }
    }
    let per_trial: Vec<TrialRecord> = draws.into_iter().map(|d| d.record).collect();
    let successes = per_trial.iter().filter(|r| r.success).count() as u64;
    let aggregate = Aggregate {
        successes,
        success_rate: successes as f64 / trials,
        mean_size: per_trial.iter().map(|r| r.size as f64).sum::<f64>() / trials,
        min_size: per_trial.iter().map(|r| r.size).min().unwrap_or(0),
        max_size: per_trial.iter().map(|r| r.size).max().unwrap_or(0),
        min_achieved_g: per_trial.iter().map(|r| r.achieved_g).min().unwrap_or(0),
        tails_ok: tails.iter().all(|t| t.holds),
    };
    MonteCarloReport {
        model,
        trials: cfg.trials,
        seed: cfg.seed,
        delta: cfg.delta.to_string(),
        epsilon: cfg.epsilon.to_string(),
        thresholds,
        per_trial,
        aggregate,
        tails,
    }
}

fn tail(
    pr: &Probe,
    scope: String,
    mu: f64,
    delta: f64,
    frequency: f64,
    bound: f64,
    trials: f64,
) -> TailCheck {
    let slack = 5.0 * (frequency * (1.0 - frequency) / trials).sqrt();
    TailCheck {
        shift: pr.shift.clone(),
        scope,
        mu,
        delta,
        frequency,
        bound,
        slack,
        holds: frequency <= bound + slack,
    }
}
