//! Entanglement measures for pure multipartite quantum states, built from
//! the quadric polynomials that cut out the manifold of product states.
//!
//! A pure state on subsystems of dimensions `(N_1, …, N_m)` is a box-shape
//! tensor of complex amplitudes. The state is fully separable exactly when
//! every generalized two-by-two minor
//!
//! ```text
//! α_k α_l − α_{k'} α_{l'},   (k', l') = swap_S(k, l)
//! ```
//!
//! vanishes, where `S` ranges over the nonempty proper position subsets and
//! `swap_S` exchanges the components of the two multi-indices at the
//! positions in `S`. Summing the squared moduli of the minors over all
//! ordered pairs gives two measures:
//!
//! * `E` — singleton classes only; zero exactly on product states.
//! * `F` — every swap class up to complement equivalence, which keeps the
//!   measure faithful beyond three subsystems.
//!
//! Every per-class sum satisfies `Σ |minor|² = 2(1 − Tr ρ_S²)`, so the
//! [`oracle`] module recomputes both measures from marginal purities by a
//! different route; the two paths cross-check each other and the purity
//! route is asymptotically faster.
//!
//! # Example
//!
//! ```
//! use segre::{ghz, measure_f, f_via_purity};
//!
//! let psi = ghz(3, 2).unwrap();
//! let direct = measure_f(&psi, 1.0).unwrap();
//! let oracle = f_via_purity(&psi, 1.0).unwrap();
//! assert!((direct - 3.0f64.sqrt()).abs() < 1e-12);
//! assert!((direct - oracle).abs() < 1e-10);
//! ```

#![forbid(unsafe_code)]

pub use num_complex::Complex64;

pub mod bipartition;
pub mod error;
pub mod measures;
pub mod oracle;
pub mod quadric;
pub mod reduce;
pub mod state;
pub mod unitary;

pub use bipartition::{enumerate_classes, Bipartition};
pub use error::{Error, Result};
pub use measures::{
    ghz_unit_norm_const, is_separable, max_abs_minor, measure_e, measure_e_raw, measure_f,
    measure_f3, measure_f4, measure_f_raw, measure_report, per_class_contribution,
    per_class_contribution_raw, ClassContribution, MeasureReport, DEFAULT_SEPARABILITY_TOL,
    NORMALIZATION_TOL,
};
pub use oracle::{
    bipartite_concurrence, e_via_purity, f_via_purity, purity, reduced_density, DensityMatrix,
};
pub use quadric::{
    canonical_rep, class_term_count, count_terms, enumerate_terms, eval_minor, is_trivial,
    QuadricTerm, TermCounts,
};
pub use state::{
    flat_offset, ghz, index_at, product_state, random_product_state, random_state, w_state,
    MultiIndex, StateTensor, MAX_TOTAL_DIM,
};
pub use unitary::{apply_local_unitary, random_unitary};
