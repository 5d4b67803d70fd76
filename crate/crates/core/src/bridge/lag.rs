//! Exact minima of lagged products `Σ_i x_i x_{i+m}` over a range of lags.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::par::Execution;
use crate::rational::{common_denominator, Q};

/// `min_{m ∈ lags} Σ_i x_i x_{i+m}` for a dense sequence, with the smallest
/// minimizing lag. Returns `None` for an empty lag range.
///
/// Values are cleared to a common denominator; the sums run in `i128` when
/// that cannot overflow and in big integers otherwise.
pub(crate) fn min_lag_product(
    xs: &[Q],
    lo: usize,
    hi: usize,
    exec: Execution,
) -> Option<(Q, usize)> {
    if lo > hi {
        return None;
    }
    let d = common_denominator(xs);
    let ints: Vec<BigInt> = xs
        .iter()
        .map(|x| (x * Q::from_integer(d.clone())).to_integer())
        .collect();
    let d2 = Q::from_integer(&d * &d);
    let lags = hi - lo + 1;

    let small: Option<Vec<i64>> = ints.iter().map(|v| v.to_i64()).collect();
    let fits = small.as_ref().is_some_and(|v| {
        let m = v
            .iter()
            .map(|x| x.unsigned_abs() as u128)
            .max()
            .unwrap_or(0);
        m.checked_mul(m)
            .and_then(|sq| sq.checked_mul(v.len() as u128 + 1))
            .is_some_and(|t| t < i128::MAX as u128)
    });

    if fits {
        let v = small.expect("checked above");
        let sums = exec.map_range(lags, |k| {
            let m = lo + k;
            if m >= v.len() {
                return 0i128;
            }
            v[..v.len() - m]
                .iter()
                .zip(&v[m..])
                .map(|(&a, &b)| a as i128 * b as i128)
                .sum::<i128>()
        });
        let (k, s) = argmin(&sums);
        return Some((Q::from_integer(BigInt::from(s)) / d2, lo + k));
    }

    let sums = exec.map_range(lags, |k| {
        let m = lo + k;
        let mut acc = BigInt::zero();
        if m < ints.len() {
            for (a, b) in ints[..ints.len() - m].iter().zip(&ints[m..]) {
                acc += a * b;
            }
        }
        acc
    });
    let (k, s) = argmin(&sums);
    Some((Q::from_integer(s) / d2, lo + k))
}

fn argmin<T: Ord + Clone>(xs: &[T]) -> (usize, T) {
    let mut best = 0;
    for i in 1..xs.len() {
        if xs[i] < xs[best] {
            best = i;
        }
    }
    (best, xs[best].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};

    #[test]
    fn matches_direct_sum() {
        let xs = vec![q(1), q_frac(1, 2), q(0), q(3), q_frac(2, 3)];
        let (min, at) = min_lag_product(&xs, 1, 6, Execution::Sequential).unwrap();
        // lags past the end contribute zero
        assert_eq!(min, q(0));
        assert_eq!(at, 5);
        let (min, at) = min_lag_product(&xs, 1, 3, Execution::Parallel).unwrap();
        let direct = |m: usize| -> Q { (0..xs.len() - m).map(|i| &xs[i] * &xs[i + m]).sum() };
        let want = (1..=3).map(direct).min().unwrap();
        assert_eq!(min, want);
        assert_eq!(direct(at), want);
        assert!(min_lag_product(&xs, 2, 1, Execution::Sequential).is_none());
    }

    #[test]
    fn big_values_take_the_bigint_path() {
        let big = Q::from_integer(BigInt::from(u64::MAX) * 7);
        let xs = vec![big.clone(), big.clone(), big.clone()];
        let (min, at) = min_lag_product(&xs, 1, 2, Execution::Sequential).unwrap();
        assert_eq!(min, &big * &big);
        assert_eq!(at, 2);
    }
}
