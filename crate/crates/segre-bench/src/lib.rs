//! Shared fixtures for the benchmark targets.

use segre::{random_state, StateTensor};

/// Shapes the benchmarks sweep, from desk-size to the point where the
/// complexity gap between the two routes is unmistakable.
pub const SHAPES: &[&[usize]] = &[
    &[2, 2, 2],
    &[2, 2, 2, 2],
    &[3, 3, 3],
    &[2, 2, 2, 2, 2],
    &[2, 2, 2, 2, 2, 2],
];

/// Seeded state per shape so runs are comparable.
pub fn fixture(dims: &[usize]) -> StateTensor {
    random_state(dims, 0xC0FFEE).expect("valid shape")
}

pub fn shape_label(dims: &[usize]) -> String {
    dims.iter()
        .map(|n| n.to_string())
        .collect::<Vec<_>>()
        .join("x")
}
