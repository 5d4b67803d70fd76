//! Execution strategy for the data-parallel loops.
//!
//! Every parallel loop in the crate goes through [`Execution`], so the same
//! call site can run on the rayon pool or sequentially. Without the
//! `parallel` feature, [`Execution::Parallel`] degrades to sequential
//! execution. Results never depend on the chosen strategy.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// True when work will actually be spread over the rayon pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Maps `f` over `0..len`, preserving index order in the output.
    pub fn map_range<R, F>(self, len: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return (0..len).into_par_iter().map(f).collect();
        }
        (0..len).map(f).collect()
    }

    /// Maps `f` over a slice, preserving order.
    pub fn map_slice<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Folds `0..len` in chunks into per-chunk accumulators and merges them.
    ///
    /// `merge` must be associative and commutative for the result to be
    /// independent of the split.
    pub fn fold_range<A, I, F, M>(self, len: usize, init: I, fold: F, merge: M) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        F: Fn(A, usize) -> A + Sync + Send,
        M: Fn(A, A) -> A + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return (0..len)
                .into_par_iter()
                .fold(&init, &fold)
                .reduce(&init, &merge);
        }
        let _ = &merge;
        (0..len).fold(init(), fold)
    }
}

/// Configures the global rayon pool from `DIFFSET_THREADS` if it is set.
///
/// Returns the thread count that was requested, if any. Calling this after
/// the pool has been initialized is harmless.
pub fn configure_threads_from_env() -> Option<usize> {
    let threads = std::env::var("DIFFSET_THREADS")
        .ok()?
        .trim()
        .parse::<usize>()
        .ok()
        .filter(|&n| n > 0)?;
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    Some(threads)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let seq = Execution::Sequential.map_range(100, |i| i * i);
        let par = Execution::Parallel.map_range(100, |i| i * i);
        assert_eq!(seq, par);
        let sum = |e: Execution| e.fold_range(1000, || 0u64, |a, i| a + i as u64, |a, b| a + b);
        assert_eq!(sum(Execution::Sequential), sum(Execution::Parallel));
        assert_eq!(sum(Execution::Sequential), 499_500);
    }
}
