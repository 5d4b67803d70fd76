use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sets::profile::{group_rep_profile, rep_diff_profile, rep_sum_profile, Mode};
use crate::sets::{GroupSubset, IntSet};

/// The property a certificate asserts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertMode {
    /// `r_A ≥ g` on the domain.
    Difference,
    /// `q_A ≤ g` everywhere.
    Sidon,
}

/// Where the certificate is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertDomain {
    /// The shifts `[N] = {1, …, N}`.
    Interval(u64),
    WholeGroup,
}

/// The set a certificate is about.
#[derive(Clone, Copy, Debug)]
pub enum CertSet<'a> {
    Int(&'a IntSet),
    Group(&'a GroupSubset),
}

/// A shift (integer case) or a group element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Witness {
    Shift(i64),
    Element(Vec<u64>),
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Witness::Shift(m) => write!(f, "{m}"),
            Witness::Element(v) => write!(f, "{v:?}"),
        }
    }
}

/// Outcome of a certificate check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub passed: bool,
    /// Minimum of `r_A` over the domain, or maximum of `q_A`.
    pub achieved_g: u64,
    /// First violating shift, if any.
    pub witness: Option<Witness>,
}

pub fn verify_certificate(
    set: CertSet<'_>,
    g: u64,
    domain: CertDomain,
    mode: CertMode,
) -> Result<Verdict> {
    match (set, domain) {
        (CertSet::Int(a), CertDomain::Interval(n)) => match mode {
            CertMode::Difference => verify_difference_interval(a, g, n),
            CertMode::Sidon => verify_sidon_interval(a, g, n),
        },
        (CertSet::Group(a), CertDomain::WholeGroup) => Ok(match mode {
            CertMode::Difference => verify_difference_group(a, g),
            CertMode::Sidon => verify_sidon_group(a, g),
        }),
        (CertSet::Int(_), CertDomain::WholeGroup) => Err(Error::InvalidParameter(
            "whole-group domain needs a group subset".into(),
        )),
        (CertSet::Group(_), CertDomain::Interval(_)) => Err(Error::InvalidParameter(
            "interval domain needs an integer set".into(),
        )),
    }
}

/// `A` is a `g`-difference set for `[N]`: `r_A(m) ≥ g` for `1 ≤ m ≤ N`.
pub fn verify_difference_interval(a: &IntSet, g: u64, n: u64) -> Result<Verdict> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    let p = rep_diff_profile(a, 1, n as i64)?;
    let witness = p
        .iter_interval()
        .find(|&(_, c)| c < g)
        .map(|(m, _)| Witness::Shift(m));
    Ok(Verdict {
        passed: witness.is_none(),
        achieved_g: p.min_count,
        witness,
    })
}

/// `A ⊆ [1,N]` is a `g`-Sidon set for `[N]`: `q_A(m) ≤ g` for all `m`.
///
/// Sums of elements of `[1,N]` lie in `[2, 2N]`, so that range is exhaustive.
pub fn verify_sidon_interval(a: &IntSet, g: u64, n: u64) -> Result<Verdict> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    if !a.within(1, n as i64) {
        return Err(Error::SupportOutsideInterval(n as i64));
    }
    if a.is_empty() {
        return Ok(Verdict {
            passed: true,
            achieved_g: 0,
            witness: None,
        });
    }
    let p = rep_sum_profile(a, 2, 2 * n as i64)?;
    let witness = p
        .iter_interval()
        .find(|&(_, c)| c > g)
        .map(|(m, _)| Witness::Shift(m));
    Ok(Verdict {
        passed: witness.is_none(),
        achieved_g: p.max_count,
        witness,
    })
}

/// `r_A(x) ≥ g` for every `x` in the group.
pub fn verify_difference_group(a: &GroupSubset, g: u64) -> Verdict {
    let p = group_rep_profile(a, Mode::Difference);
    let witness = p
        .counts()
        .iter()
        .position(|&c| c < g)
        .map(|i| Witness::Element(a.group().decode(i)));
    Verdict {
        passed: witness.is_none(),
        achieved_g: p.min_count,
        witness,
    }
}

/// `q_A(x) ≤ g` for every `x` in the group.
pub fn verify_sidon_group(a: &GroupSubset, g: u64) -> Verdict {
    let p = group_rep_profile(a, Mode::Sum);
    let witness = p
        .counts()
        .iter()
        .position(|&c| c > g)
        .map(|i| Witness::Element(a.group().decode(i)));
    Verdict {
        passed: witness.is_none(),
        achieved_g: p.max_count,
        witness,
    }
}
