//! Lifting a difference set of `(Z/pZ)²` to the cyclic group `Z/p²sZ`.

use serde::Serialize;

use crate::constructions::legendre::check_odd_prime;
use crate::constructions::parabola::{best_shift_union_with, ParabolaUnion, UnionOptions};
use crate::error::{Error, Result};
use crate::sets::{group_rep_profile_with, GroupSpec, GroupSubset, Mode};

/// `C = {a + cp + bsp : (a, b) ∈ A, 0 ≤ c < s}` in `Z/p²sZ`.
///
/// Representatives satisfy `0 ≤ a, b ≤ p − 1`. If `A` is a `g`-difference
/// set then `C` is a `g(s−1)`-difference set of size `|A|·s`.
pub fn lift_to_cyclic(a: &GroupSubset, s: u64) -> Result<GroupSubset> {
    let f = a.group().factors();
    if f.len() != 2 || f[0] != f[1] {
        return Err(Error::WrongAmbientGroup(format!(
            "expected (Z/pZ)^2, got {}",
            a.group()
        )));
    }
    let p = f[0];
    check_odd_prime(p).map_err(|_| Error::WrongAmbientGroup(format!("{p} is not an odd prime")))?;
    if s == 0 {
        return Err(Error::InvalidParameter("s must be at least 1".into()));
    }
    let n = p * p * s;
    let group = GroupSpec::cyclic(n)?;
    let mut idx = Vec::with_capacity(a.len() * s as usize);
    for coords in a.coords() {
        let (x, y) = (coords[0], coords[1]);
        idx.extend((0..s).map(|c| (x + c * p + y * s * p) as usize));
    }
    GroupSubset::from_indices(group, idx)
}

/// Parabola union followed by the cyclic lift.
#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub k: u64,
    pub s: u64,
    pub p: u64,
    pub modulus: u64,
    pub size: usize,
    /// `s(pk − k + 1)`.
    pub expected_size: u64,
    pub union: ParabolaUnion,
    /// `verified_g(A)·(s−1)`.
    pub lifted_guarantee: u64,
    /// `min_x r_C(x)`, exhaustive over `Z/p²sZ`.
    pub verified_g: u64,
    /// `|C| / √(verified_g · p²s)`; `None` when `verified_g = 0`.
    pub ratio: Option<f64>,
    /// Suggested width `k = 4s²` for a given `s`.
    pub recommended_k: u64,
    pub set: GroupSubset,
}

pub fn cyclic_pipeline(k: u64, s: u64, p: u64, opts: &UnionOptions) -> Result<PipelineReport> {
    let union = best_shift_union_with(p, k, opts)?;
    let set = lift_to_cyclic(&union.set(), s)?;
    let modulus = p * p * s;
    let prof = group_rep_profile_with(&set, Mode::Difference, opts.exec);
    let verified_g = prof.min_count;
    let ratio =
        (verified_g > 0).then(|| set.len() as f64 / ((verified_g as f64) * modulus as f64).sqrt());
    Ok(PipelineReport {
        k,
        s,
        p,
        modulus,
        size: set.len(),
        expected_size: s * (p * k - k + 1),
        lifted_guarantee: union.verified_g * (s - 1),
        verified_g,
        ratio,
        recommended_k: 4 * s * s,
        union,
        set,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::verify_difference_group;

    #[test]
    fn full_group_lifts_to_full_group() {
        let a = GroupSubset::full(GroupSpec::new(vec![3, 3]).unwrap());
        let c = lift_to_cyclic(&a, 2).unwrap();
        assert_eq!(c.len(), 18);
        assert_eq!(c.group().order(), 18);
        let v = verify_difference_group(&c, 9);
        assert!(v.passed);
        assert_eq!(v.achieved_g, 18);
    }

    #[test]
    fn lift_of_parabola_union() {
        let u = best_shift_union_with(5, 2, &UnionOptions::default()).unwrap();
        let c = lift_to_cyclic(&u.set(), 3).unwrap();
        assert_eq!(c.len(), 27);
        assert_eq!(c.group().order(), 75);
        let v = verify_difference_group(&c, u.verified_g * 2);
        assert!(v.passed, "{v:?}");
    }

    #[test]
    fn s_one_keeps_size() {
        let u = best_shift_union_with(7, 2, &UnionOptions::default()).unwrap();
        let c = lift_to_cyclic(&u.set(), 1).unwrap();
        assert_eq!(c.len(), u.elements.len());
    }

    #[test]
    fn rejects_wrong_group() {
        let a = GroupSubset::cyclic(7, &[1, 2, 4]).unwrap();
        assert!(matches!(
            lift_to_cyclic(&a, 2),
            Err(Error::WrongAmbientGroup(_))
        ));
        let b = GroupSubset::full(GroupSpec::new(vec![3, 9]).unwrap());
        assert!(matches!(
            lift_to_cyclic(&b, 2),
            Err(Error::WrongAmbientGroup(_))
        ));
        let c = GroupSubset::full(GroupSpec::new(vec![4, 4]).unwrap());
        assert!(matches!(
            lift_to_cyclic(&c, 2),
            Err(Error::WrongAmbientGroup(_))
        ));
    }

    #[test]
    fn pipeline_examples() {
        let r = cyclic_pipeline(2, 2, 11, &UnionOptions::default()).unwrap();
        assert_eq!(r.size, 42);
        assert_eq!(r.expected_size, 42);
        assert!(r.verified_g >= r.lifted_guarantee);
        assert!(r.ratio.unwrap() >= 1.0);
        assert_eq!(r.recommended_k, 16);

        let r = cyclic_pipeline(1, 2, 5, &UnionOptions::default()).unwrap();
        assert_eq!(r.size, 10);
        assert_eq!(r.modulus, 50);
        let oracle = (0..50)
            .map(|x| crate::sets::group_rep_count(&r.set, x))
            .min()
            .unwrap();
        assert_eq!(r.verified_g, oracle);
    }
}
