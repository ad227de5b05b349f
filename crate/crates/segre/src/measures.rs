//! Entanglement measures built from summed squared minors.
//!
//! For a class `S` the contribution is the sum of `|α_k α_l − α_{k'} α_{l'}|²`
//! over *all* ordered index pairs `(k, l)`, which for a normalized state
//! equals `2(1 − Tr ρ_S²)`; that identity is the independent cross-check
//! implemented in [`crate::oracle`]. The measure `E` aggregates the singleton
//! classes, `F` aggregates every canonical class.
//!
//! All pair sums go through the fixed-shape reduction in [`crate::reduce`],
//! so results are bit-identical across thread counts.

use crate::bipartition::{enumerate_classes, Bipartition};
use crate::error::{Error, Result};
use crate::quadric::class_term_count;
use crate::reduce::{max_rows, pairwise_sum, sum_rows};
use crate::state::{digits_of, increment_digits, strides_of, StateTensor};

/// Largest accepted deviation of the input norm from 1.
pub const NORMALIZATION_TOL: f64 = 1e-8;

/// Default threshold on `max |minor|` below which a state counts as
/// separable.
pub const DEFAULT_SEPARABILITY_TOL: f64 = 1e-10;

pub(crate) fn ensure_normalized(psi: &StateTensor) -> Result<()> {
    let norm = psi.norm();
    if (norm - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized {
            norm,
            tol: NORMALIZATION_TOL,
        });
    }
    Ok(())
}

pub(crate) fn ensure_norm_const(norm_const: f64) -> Result<()> {
    if norm_const > 0.0 {
        Ok(())
    } else {
        Err(Error::NormConst(norm_const))
    }
}

fn ensure_compatible(psi: &StateTensor, class: &Bipartition) -> Result<()> {
    if class.subsystem_count() != psi.subsystem_count() {
        return Err(Error::Class(format!(
            "class on {} subsystems applied to a state with {}",
            class.subsystem_count(),
            psi.subsystem_count()
        )));
    }
    Ok(())
}

/// Ordered-pair minor sum for one class, no normalization gate.
///
/// Row `a` of the pair grid is summed sequentially while `b` runs as an
/// odometer; the swapped offsets come from exchanging the digits at the
/// class positions.
fn contribution_unchecked(psi: &StateTensor, class: &Bipartition) -> f64 {
    let dims = psi.dims();
    let amps = psi.amps();
    let total = psi.total_dim();
    let strides = strides_of(dims);
    let swap_positions: Vec<usize> = class.positions().iter().map(|&p| p - 1).collect();
    sum_rows(total, |a| {
        let a_digits = digits_of(dims, a);
        let mut b_digits = vec![0usize; dims.len()];
        let mut row = 0.0;
        for b in 0..total {
            if b > 0 {
                increment_digits(&mut b_digits, dims);
            }
            let mut a_swapped = a;
            let mut b_swapped = b;
            for &j in &swap_positions {
                let from_a = a_digits[j] * strides[j];
                let from_b = b_digits[j] * strides[j];
                a_swapped = a_swapped - from_a + from_b;
                b_swapped = b_swapped - from_b + from_a;
            }
            let minor = amps[a] * amps[b] - amps[a_swapped] * amps[b_swapped];
            row += minor.norm_sqr();
        }
        row
    })
}

/// `Σ |α_k α_l − α_{k'} α_{l'}|²` over all ordered pairs for one class.
///
/// Requires a normalized state; the value then equals `2(1 − Tr ρ_S²)`.
pub fn per_class_contribution(psi: &StateTensor, class: &Bipartition) -> Result<f64> {
    ensure_compatible(psi, class)?;
    ensure_normalized(psi)?;
    Ok(contribution_unchecked(psi, class))
}

/// [`per_class_contribution`] without the normalization gate. Homogeneous of
/// degree 4 in the amplitudes.
pub fn per_class_contribution_raw(psi: &StateTensor, class: &Bipartition) -> Result<f64> {
    ensure_compatible(psi, class)?;
    Ok(contribution_unchecked(psi, class))
}

fn contributions_for<'a, I>(psi: &StateTensor, classes: I) -> Vec<f64>
where
    I: IntoIterator<Item = &'a Bipartition>,
{
    classes
        .into_iter()
        .map(|class| contribution_unchecked(psi, class))
        .collect()
}

fn combine(norm_const: f64, contributions: &[f64]) -> f64 {
    (norm_const * pairwise_sum(contributions)).sqrt()
}

/// The singleton-swap measure: square root of the weighted sum of the
/// singleton-class contributions. Zero exactly on product states.
pub fn measure_e(psi: &StateTensor, norm_const: f64) -> Result<f64> {
    ensure_normalized(psi)?;
    measure_e_raw(psi, norm_const)
}

/// [`measure_e`] without the normalization gate.
pub fn measure_e_raw(psi: &StateTensor, norm_const: f64) -> Result<f64> {
    ensure_norm_const(norm_const)?;
    let classes = enumerate_classes(psi.subsystem_count())?;
    let singles = contributions_for(psi, classes.iter().filter(|c| c.is_singleton()));
    Ok(combine(norm_const, &singles))
}

/// The full measure: square root of the weighted sum over every canonical
/// swap class.
pub fn measure_f(psi: &StateTensor, norm_const: f64) -> Result<f64> {
    ensure_normalized(psi)?;
    measure_f_raw(psi, norm_const)
}

/// [`measure_f`] without the normalization gate. Scales as `|c|²` when the
/// state is scaled by `c`.
pub fn measure_f_raw(psi: &StateTensor, norm_const: f64) -> Result<f64> {
    ensure_norm_const(norm_const)?;
    let classes = enumerate_classes(psi.subsystem_count())?;
    let all = contributions_for(psi, classes.iter());
    Ok(combine(norm_const, &all))
}

/// Three-partite expansion evaluated directly: for every ordered pair the
/// three single-position swaps are built in place, with no shared class
/// machinery. Agrees with [`measure_f`] to machine precision.
pub fn measure_f3(psi: &StateTensor, norm_const: f64) -> Result<f64> {
    if psi.subsystem_count() != 3 {
        return Err(Error::Arity {
            expected: 3,
            actual: psi.subsystem_count(),
        });
    }
    ensure_norm_const(norm_const)?;
    ensure_normalized(psi)?;
    let [n2, n3] = [psi.dims()[1], psi.dims()[2]];
    let s1 = n2 * n3;
    let s2 = n3;
    let amps = psi.amps();
    let total = psi.total_dim();
    let sum = sum_rows(total, |a| {
        let a1 = a / s1;
        let a2 = a % s1 / s2;
        let a3 = a % s2;
        let mut row = 0.0;
        for b in 0..total {
            let b1 = b / s1;
            let b2 = b % s1 / s2;
            let b3 = b % s2;
            let pair = amps[a] * amps[b];
            let swap1 = pair - amps[a - a1 * s1 + b1 * s1] * amps[b - b1 * s1 + a1 * s1];
            let swap2 = pair - amps[a - a2 * s2 + b2 * s2] * amps[b - b2 * s2 + a2 * s2];
            let swap3 = pair - amps[a - a3 + b3] * amps[b - b3 + a3];
            row += swap1.norm_sqr() + swap2.norm_sqr() + swap3.norm_sqr();
        }
        row
    });
    Ok((norm_const * sum).sqrt())
}

/// Four-partite expansion evaluated directly: the four single-position swaps
/// plus the three double swaps that pair position 1 with another.
pub fn measure_f4(psi: &StateTensor, norm_const: f64) -> Result<f64> {
    if psi.subsystem_count() != 4 {
        return Err(Error::Arity {
            expected: 4,
            actual: psi.subsystem_count(),
        });
    }
    ensure_norm_const(norm_const)?;
    ensure_normalized(psi)?;
    let [n2, n3, n4] = [psi.dims()[1], psi.dims()[2], psi.dims()[3]];
    let s3 = n4;
    let s2 = n3 * n4;
    let s1 = n2 * n3 * n4;
    let amps = psi.amps();
    let total = psi.total_dim();
    let sum = sum_rows(total, |a| {
        let a1 = a / s1;
        let a2 = a % s1 / s2;
        let a3 = a % s2 / s3;
        let a4 = a % s3;
        let mut row = 0.0;
        for b in 0..total {
            let b1 = b / s1;
            let b2 = b % s1 / s2;
            let b3 = b % s2 / s3;
            let b4 = b % s3;
            let pair = amps[a] * amps[b];
            // subtract the digit being replaced before adding the
            // replacement, keeping everything in unsigned arithmetic
            let swap = |exchanged: &[(usize, usize)]| {
                let mut ka = a;
                let mut kb = b;
                for &(mine, theirs) in exchanged {
                    ka = ka - mine + theirs;
                    kb = kb - theirs + mine;
                }
                pair - amps[ka] * amps[kb]
            };
            let m1 = swap(&[(a1 * s1, b1 * s1)]);
            let m2 = swap(&[(a2 * s2, b2 * s2)]);
            let m3 = swap(&[(a3 * s3, b3 * s3)]);
            let m4 = swap(&[(a4, b4)]);
            let m12 = swap(&[(a1 * s1, b1 * s1), (a2 * s2, b2 * s2)]);
            let m13 = swap(&[(a1 * s1, b1 * s1), (a3 * s3, b3 * s3)]);
            let m14 = swap(&[(a1 * s1, b1 * s1), (a4, b4)]);
            row += m1.norm_sqr()
                + m2.norm_sqr()
                + m3.norm_sqr()
                + m4.norm_sqr()
                + m12.norm_sqr()
                + m13.norm_sqr()
                + m14.norm_sqr();
        }
        row
    });
    Ok((norm_const * sum).sqrt())
}

/// Largest `|minor|` over every canonical class and ordered pair.
pub fn max_abs_minor(psi: &StateTensor) -> Result<f64> {
    ensure_normalized(psi)?;
    let dims = psi.dims();
    let amps = psi.amps();
    let total = psi.total_dim();
    let strides = strides_of(dims);
    let classes = enumerate_classes(psi.subsystem_count())?;
    let mut overall: f64 = 0.0;
    for class in &classes {
        let swap_positions: Vec<usize> = class.positions().iter().map(|&p| p - 1).collect();
        let class_max = max_rows(total, |a| {
            let a_digits = digits_of(dims, a);
            let mut b_digits = vec![0usize; dims.len()];
            let mut row_max: f64 = 0.0;
            for b in 0..total {
                if b > 0 {
                    increment_digits(&mut b_digits, dims);
                }
                let mut a_swapped = a;
                let mut b_swapped = b;
                for &j in &swap_positions {
                    let from_a = a_digits[j] * strides[j];
                    let from_b = b_digits[j] * strides[j];
                    a_swapped = a_swapped - from_a + from_b;
                    b_swapped = b_swapped - from_b + from_a;
                }
                let minor = amps[a] * amps[b] - amps[a_swapped] * amps[b_swapped];
                row_max = row_max.max(minor.norm());
            }
            row_max
        });
        overall = overall.max(class_max);
    }
    Ok(overall)
}

/// Whether every minor vanishes within `tol`; for pure states this decides
/// full separability.
pub fn is_separable(psi: &StateTensor, tol: f64) -> Result<bool> {
    Ok(max_abs_minor(psi)? <= tol)
}

/// The normalization constant that makes the `m`-qubit GHZ state reach
/// `F = 1`: each of the `2^(m-1) - 1` classes contributes exactly 1 there.
pub fn ghz_unit_norm_const(m: usize) -> f64 {
    assert!((2..64).contains(&m), "subsystem count out of range");
    1.0 / ((1u64 << (m - 1)) - 1) as f64
}

/// One class's share of a full measure evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassContribution {
    pub class: Bipartition,
    /// Ordered-pair minor sum for this class.
    pub contribution: f64,
    /// Distinct generators of this class for the state's shape.
    pub term_count: usize,
}

/// Everything the measure computation produces for one state.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureReport {
    pub e: f64,
    pub f: f64,
    pub norm_const: f64,
    /// Per-class data in class enumeration order (singletons first).
    pub per_class: Vec<ClassContribution>,
}

impl MeasureReport {
    pub fn singleton_term_total(&self) -> usize {
        self.per_class
            .iter()
            .filter(|c| c.class.is_singleton())
            .map(|c| c.term_count)
            .sum()
    }

    pub fn multi_term_total(&self) -> usize {
        self.per_class
            .iter()
            .filter(|c| !c.class.is_singleton())
            .map(|c| c.term_count)
            .sum()
    }
}

/// Computes `E`, `F`, and the per-class breakdown in one pass.
pub fn measure_report(psi: &StateTensor, norm_const: f64) -> Result<MeasureReport> {
    ensure_norm_const(norm_const)?;
    ensure_normalized(psi)?;
    let classes = enumerate_classes(psi.subsystem_count())?;
    let contributions = contributions_for(psi, classes.iter());
    let singles: Vec<f64> = classes
        .iter()
        .zip(&contributions)
        .filter(|(class, _)| class.is_singleton())
        .map(|(_, value)| *value)
        .collect();
    let e = combine(norm_const, &singles);
    let f = combine(norm_const, &contributions);
    let per_class = classes
        .into_iter()
        .zip(contributions)
        .map(|(class, contribution)| {
            let term_count = class_term_count(psi.dims(), &class);
            ClassContribution {
                class,
                contribution,
                term_count,
            }
        })
        .collect();
    Ok(MeasureReport {
        e,
        f,
        norm_const,
        per_class,
    })
}
