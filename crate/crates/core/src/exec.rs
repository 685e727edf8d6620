//! Execution policy for batches of independent work items.
//!
//! With the default `parallel` feature the batch runs on the rayon thread
//! pool; without it the same code path degrades to a sequential loop.
//! Results always come back in index order, so callers reduce
//! deterministically regardless of completion order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Runs `task(i)` for every `i` in `0..n` and collects results in index
/// order, in parallel when the `parallel` feature is enabled.
#[cfg(feature = "parallel")]
pub fn run_indexed<T, F>(n: usize, task: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).into_par_iter().map(task).collect()
}

/// Runs `task(i)` for every `i` in `0..n` and collects results in index
/// order, in parallel when the `parallel` feature is enabled.
#[cfg(not(feature = "parallel"))]
pub fn run_indexed<T, F>(n: usize, task: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(task).collect()
}

/// Always-sequential variant of [`run_indexed`], kept as a baseline for
/// determinism checks and benchmarks.
pub fn run_indexed_seq<T, F>(n: usize, task: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(task).collect()
}
