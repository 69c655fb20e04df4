//! Data-parallel map helpers.
//!
//! Ensemble simulation and rolling-window estimation are embarrassingly
//! parallel: every item is a pure function of its index. [`map_indexed`]
//! fans out on the rayon pool when the `parallel` feature (default) is
//! enabled and degrades to a plain loop otherwise. Results are collected in
//! index order either way, so output never depends on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Sequential reference implementation of [`map_indexed`]. Always available;
/// the benchmark suite compares it against the parallel path.
pub fn map_indexed_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T + Sync + Send,
    T: Send,
{
    (0..n).map(f).collect()
}

/// Map `f` over `0..n`, collecting results in index order.
#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T + Sync + Send,
    T: Send,
{
    (0..n).into_par_iter().map(f).collect()
}

/// Map `f` over `0..n`, collecting results in index order.
#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T + Sync + Send,
    T: Send,
{
    map_indexed_seq(n, f)
}
