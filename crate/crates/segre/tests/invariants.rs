//! Cross-route and symmetry invariants on randomized states.
//!
//! The direct minor sums and the purity route are independent computations
//! of the same quantities; their agreement on random states is the central
//! correctness check of the crate.

use proptest::prelude::*;
use segre::{
    apply_local_unitary, bipartite_concurrence, e_via_purity, enumerate_classes, f_via_purity,
    measure_e, measure_f, per_class_contribution, purity, random_product_state, random_state,
    random_unitary, reduced_density,
};

const SHAPES: &[&[usize]] = &[
    &[2, 2],
    &[2, 3],
    &[3, 3],
    &[2, 2, 2],
    &[2, 3, 2],
    &[3, 3, 3],
    &[2, 2, 2, 2],
];

#[test]
fn per_class_contribution_equals_purity_deficit() {
    for dims in SHAPES {
        for seed in 0..8u64 {
            let psi = random_state(dims, seed).unwrap();
            for class in enumerate_classes(dims.len()).unwrap() {
                let direct = per_class_contribution(&psi, &class).unwrap();
                let rho = reduced_density(&psi, &class).unwrap();
                let deficit = 2.0 * (1.0 - purity(&rho));
                assert!(
                    (direct - deficit).abs() <= 1e-10,
                    "dims {dims:?} seed {seed} class {class}: {direct} vs {deficit}"
                );
            }
        }
    }
}

#[test]
fn measures_agree_across_routes() {
    for dims in SHAPES {
        for seed in 0..8u64 {
            let psi = random_state(dims, seed).unwrap();
            let f = measure_f(&psi, 1.0).unwrap();
            let e = measure_e(&psi, 1.0).unwrap();
            assert!((f - f_via_purity(&psi, 1.0).unwrap()).abs() <= 1e-10);
            assert!((e - e_via_purity(&psi, 1.0).unwrap()).abs() <= 1e-10);
            assert!(e <= f);
        }
    }
}

#[test]
fn product_states_vanish_under_the_direct_route() {
    for dims in SHAPES {
        for seed in 0..8u64 {
            let psi = random_product_state(dims, seed).unwrap();
            assert!(
                measure_f(&psi, 1.0).unwrap() <= 1e-12,
                "dims {dims:?} seed {seed}"
            );
        }
    }
}

#[test]
fn local_unitaries_leave_f_unchanged() {
    for (dims, seed) in [
        (&[2usize, 3] as &[usize], 5u64),
        (&[2, 2, 2], 6),
        (&[2, 2, 2, 2], 7),
    ] {
        let psi = random_state(dims, seed).unwrap();
        let reference = measure_f(&psi, 1.0).unwrap();
        let mut rotated = psi.clone();
        for (position, &n) in dims.iter().enumerate() {
            let u = random_unitary(n, seed * 31 + position as u64);
            rotated = apply_local_unitary(&rotated, position + 1, &u).unwrap();
        }
        let after = measure_f(&rotated, 1.0).unwrap();
        assert!(
            (reference - after).abs() <= 1e-10,
            "dims {dims:?}: {reference} vs {after}"
        );
    }
}

#[test]
fn bipartite_f_is_the_generalized_concurrence() {
    for dims in [&[2usize, 2] as &[usize], &[2, 3], &[3, 3]] {
        for seed in 0..10u64 {
            let psi = random_state(dims, seed).unwrap();
            let f = measure_f(&psi, 1.0).unwrap();
            let c = bipartite_concurrence(&psi).unwrap();
            assert!((f - c).abs() <= 1e-10, "dims {dims:?} seed {seed}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Any normalized state, any shape drawn from the small pool: the two
    /// routes agree and relabeling the subsystems changes nothing.
    #[test]
    fn routes_and_relabeling_agree(shape_index in 0usize..SHAPES.len(), seed in 0u64..10_000) {
        let dims = SHAPES[shape_index];
        let psi = random_state(dims, seed).unwrap();

        let f = measure_f(&psi, 1.0).unwrap();
        prop_assert!((f - f_via_purity(&psi, 1.0).unwrap()).abs() <= 1e-10);

        // rotate the subsystem order by one
        let m = dims.len();
        let order: Vec<usize> = (0..m).map(|t| (t + 1) % m + 1).collect();
        let permuted = psi.permute_subsystems(&order).unwrap();
        prop_assert!((f - measure_f(&permuted, 1.0).unwrap()).abs() <= 1e-12);
    }

    /// Scaling by an arbitrary nonzero complex number scales the raw sum by
    /// the squared modulus.
    #[test]
    fn raw_measure_is_degree_two_homogeneous(re in -2.0f64..2.0, im in -2.0f64..2.0, seed in 0u64..1000) {
        prop_assume!(re * re + im * im > 1e-2);
        let psi = random_state(&[2, 2, 2], seed).unwrap();
        let c = segre::Complex64::new(re, im);
        let base = segre::measure_f_raw(&psi, 1.0).unwrap();
        let scaled = segre::measure_f_raw(&psi.scaled(c), 1.0).unwrap();
        let expected = c.norm_sqr() * base;
        prop_assert!((scaled - expected).abs() <= 1e-10 * expected.max(1.0));
    }
}
