use crate::error::{Error, Result};
use crate::sets::{verify_difference_group, verify_difference_interval, GroupSubset, IntSet};

/// Composes a `g1`-difference set for `[N]` with a `g2`-difference set of
/// `Z/qZ` into a `g1·g2`-difference set for `[qN]`:
/// `B = {q·a + c : a ∈ A, c ∈ C̄}` where `C̄ ⊆ [1, q]` lifts `C`.
///
/// Both input certificates are checked first; a failure carries its witness.
pub fn blow_up(a: &IntSet, g1: u64, n: u64, c: &GroupSubset, g2: u64) -> Result<IntSet> {
    if !c.group().is_cyclic() {
        return Err(Error::WrongAmbientGroup(format!(
            "expected a cyclic group, got {}",
            c.group()
        )));
    }
    let va = verify_difference_interval(a, g1, n)?;
    if !va.passed {
        return Err(Error::CertificateFailed {
            what: format!("A is not a {g1}-difference set for [{n}]"),
            witness: va.witness.map(|w| w.to_string()).unwrap_or_default(),
        });
    }
    let vc = verify_difference_group(c, g2);
    if !vc.passed {
        return Err(Error::CertificateFailed {
            what: format!("C is not a {g2}-difference set of {}", c.group()),
            witness: vc.witness.map(|w| w.to_string()).unwrap_or_default(),
        });
    }
    let q = c.group().order() as i64;
    let lifted: Vec<i64> = c
        .indices()
        .iter()
        .map(|&r| if r == 0 { q } else { r as i64 })
        .collect();
    let mut out = Vec::with_capacity(a.len() * lifted.len());
    for x in a.iter() {
        out.extend(lifted.iter().map(|&r| q * x + r));
    }
    IntSet::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i64]) -> IntSet {
        IntSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn singer_times_small_cover() {
        let a = set(&[0, 1, 3]);
        let c = GroupSubset::cyclic(7, &[1, 2, 4]).unwrap();
        let b = blow_up(&a, 1, 3, &c, 1).unwrap();
        assert_eq!(b.elements(), &[1, 2, 4, 8, 9, 11, 22, 23, 25]);
        // Independent check: every m in [1, 21] is a difference.
        for m in 1..=21 {
            assert!(b.iter().any(|x| b.contains(x + m)), "m={m}");
        }
    }

    #[test]
    fn trivial_modulus() {
        let c = GroupSubset::cyclic(1, &[0]).unwrap();
        let b = blow_up(&set(&[0, 1]), 1, 1, &c, 1).unwrap();
        assert_eq!(b.elements(), &[1, 2]);
    }

    #[test]
    fn failing_inputs_carry_witness() {
        let c = GroupSubset::cyclic(7, &[1, 2, 4]).unwrap();
        match blow_up(&set(&[0, 1]), 1, 2, &c, 1) {
            Err(Error::CertificateFailed { witness, .. }) => assert_eq!(witness, "2"),
            other => panic!("unexpected {other:?}"),
        }
        match blow_up(&set(&[0, 1, 3]), 1, 3, &c, 2) {
            Err(Error::CertificateFailed { witness, .. }) => assert_eq!(witness, "[1]"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
