//! Data-parallel helpers with a sequential fallback.
//!
//! Every parallel map collects into an index-ordered `Vec` and reductions go
//! through [`pairwise_sum`], so results are bit-identical for any worker count.

use std::ops::Add;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How data-parallel loops are executed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when the `parallel` feature is disabled.
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Evaluates `f(0), ..., f(n-1)` and returns the results in index order.
pub fn map_indexed<T, F>(exec: Execution, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

/// Maps over a slice, preserving order.
pub fn map_slice<S, T, F>(exec: Execution, items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Pairwise (cascade) summation with a fixed split order.
pub fn pairwise_sum<T>(values: &[T]) -> T
where
    T: Copy + Default + Add<Output = T>,
{
    const BLOCK: usize = 16;
    if values.len() <= BLOCK {
        return values.iter().fold(T::default(), |acc, &v| acc + v);
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Runs `f` on a pool capped at `threads` workers (`None` keeps the global pool).
pub fn with_threads<R, F>(threads: Option<usize>, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    #[cfg(feature = "parallel")]
    if let Some(n) = threads {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            return pool.install(f);
        }
    }
    let _ = threads;
    f()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree_bitwise() {
        let f = |i: usize| ((i as f64) * 0.37).sin() / (1.0 + i as f64);
        let a = map_indexed(Execution::Sequential, 10_000, f);
        let b = map_indexed(Execution::Parallel, 10_000, f);
        assert_eq!(a, b);
        assert_eq!(pairwise_sum(&a).to_bits(), pairwise_sum(&b).to_bits());
    }

    #[test]
    fn pairwise_sum_small_and_empty() {
        assert_eq!(pairwise_sum::<f64>(&[]), 0.0);
        assert_eq!(pairwise_sum(&[1.0, 2.0, 3.0]), 6.0);
        let v = vec![0.1f64; 1000];
        assert!((pairwise_sum(&v) - 100.0).abs() < 1e-12);
    }
}
