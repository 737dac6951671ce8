//! Thin execution shims: data-parallel with the `parallel` feature (rayon),
//! plain iteration otherwise. Results are index-ordered either way, so every
//! report is identical under any thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `0..count`, collecting in index order.
#[cfg(feature = "parallel")]
pub(crate) fn map_indices<T: Send>(count: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    (0..count).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indices<T: Send>(count: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    (0..count).map(f).collect()
}

/// First index in `0..count` satisfying `pred`, in sequential order; the
/// parallel version prunes work after a hit but returns the same index.
#[cfg(feature = "parallel")]
pub(crate) fn find_first_index(
    count: u64,
    pred: impl Fn(u64) -> bool + Sync + Send,
) -> Option<u64> {
    (0..count).into_par_iter().find_first(|&t| pred(t))
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn find_first_index(
    count: u64,
    pred: impl Fn(u64) -> bool + Sync + Send,
) -> Option<u64> {
    (0..count).find(|&t| pred(t))
}
