//! Deterministic floating-point reduction.
//!
//! Measure sums must come out bit-identical across runs and thread counts,
//! so every accumulation goes through a fixed-shape pairwise tree: values are
//! summed sequentially in small leaves and partial sums are combined by
//! splitting at the midpoint. The tree shape depends only on the input
//! length, never on the degree of parallelism.

use rayon::prelude::*;

const PAIRWISE_LEAF: usize = 32;

/// Number of rows above which row sums are computed on the rayon pool.
const PARALLEL_ROW_THRESHOLD: usize = 64;

/// Sums a slice with a fixed-shape pairwise tree.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= PAIRWISE_LEAF {
        values.iter().sum()
    } else {
        let (lo, hi) = values.split_at(values.len() / 2);
        pairwise_sum(lo) + pairwise_sum(hi)
    }
}

/// Pairwise sum of `f` mapped over a slice, without materializing the mapped
/// values.
pub(crate) fn pairwise_sum_by<T, F>(values: &[T], f: &F) -> f64
where
    F: Fn(&T) -> f64,
{
    if values.len() <= PAIRWISE_LEAF {
        values.iter().map(f).sum()
    } else {
        let (lo, hi) = values.split_at(values.len() / 2);
        pairwise_sum_by(lo, f) + pairwise_sum_by(hi, f)
    }
}

/// Evaluates `row` for every index in `0..rows` and combines the results
/// pairwise. Each row is computed independently (in parallel when there are
/// enough rows) and the combination order is fixed, so the total is
/// bit-identical for any thread count.
pub(crate) fn sum_rows<F>(rows: usize, row: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let totals: Vec<f64> = if rows >= PARALLEL_ROW_THRESHOLD {
        (0..rows).into_par_iter().map(&row).collect()
    } else {
        (0..rows).map(&row).collect()
    };
    pairwise_sum(&totals)
}

/// Maximum of `row` over `0..rows`; parallel-safe because max is exact.
pub(crate) fn max_rows<F>(rows: usize, row: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    if rows >= PARALLEL_ROW_THRESHOLD {
        (0..rows).into_par_iter().map(&row).reduce(|| 0.0, f64::max)
    } else {
        (0..rows).map(&row).fold(0.0, f64::max)
    }
}
