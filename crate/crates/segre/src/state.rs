//! Dense state tensors for pure multipartite systems.
//!
//! A state on `m` subsystems with dimensions `(N_1, …, N_m)` is stored as a
//! flat row-major array of `D = N_1⋯N_m` complex amplitudes, subsystem 1
//! varying slowest. Indices are 1-based at the API surface and converted to
//! 0-based offsets internally.

use std::fmt;

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::reduce::pairwise_sum_by;

/// Hard cap on the total dimension `D = ∏ N_j` accepted by constructors.
pub const MAX_TOTAL_DIM: usize = 1 << 20;

/// A tensor whose squared norm is within this of 1 is flagged normalized.
pub const NORMALIZED_FLAG_TOL: f64 = 1e-12;

/// Norms at or below this cannot be normalized away.
pub const DEGENERATE_NORM: f64 = 1e-30;

/// One 1-based address `(k_1, …, k_m)` of a single amplitude.
///
/// Ordering is lexicographic on the components, which coincides with
/// row-major offset order for indices of the same shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(components: Vec<usize>) -> Self {
        MultiIndex(components)
    }

    pub fn components(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Component at a 1-based subsystem position.
    pub fn component(&self, position: usize) -> usize {
        self.0[position - 1]
    }
}

impl From<&[usize]> for MultiIndex {
    fn from(components: &[usize]) -> Self {
        MultiIndex(components.to_vec())
    }
}

impl<const N: usize> From<[usize; N]> for MultiIndex {
    fn from(components: [usize; N]) -> Self {
        MultiIndex(components.to_vec())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn validate_dims(dims: &[usize]) -> Result<()> {
    if dims.len() < 2 {
        return Err(Error::Dimension {
            dims: dims.to_vec(),
            reason: "at least two subsystems are required".into(),
        });
    }
    if let Some(&n) = dims.iter().find(|&&n| n < 2) {
        return Err(Error::Dimension {
            dims: dims.to_vec(),
            reason: format!("subsystem dimension {n} is below 2"),
        });
    }
    let mut total = 1usize;
    for &n in dims {
        total = total
            .checked_mul(n)
            .filter(|&t| t <= MAX_TOTAL_DIM)
            .ok_or_else(|| Error::Dimension {
                dims: dims.to_vec(),
                reason: format!("total dimension exceeds {MAX_TOTAL_DIM}"),
            })?;
    }
    Ok(())
}

/// 0-based row-major offset of a 1-based multi-index.
pub fn flat_offset(dims: &[usize], index: &MultiIndex) -> Result<usize> {
    if index.len() != dims.len() {
        return Err(Error::Index {
            index: index.components().to_vec(),
            dims: dims.to_vec(),
        });
    }
    let mut offset = 0usize;
    for (&n, &k) in dims.iter().zip(index.components()) {
        if k < 1 || k > n {
            return Err(Error::Index {
                index: index.components().to_vec(),
                dims: dims.to_vec(),
            });
        }
        offset = offset * n + (k - 1);
    }
    Ok(offset)
}

/// Inverse of [`flat_offset`]: the 1-based multi-index at a row-major offset.
pub fn index_at(dims: &[usize], offset: usize) -> Result<MultiIndex> {
    let total: usize = dims.iter().product();
    if offset >= total {
        return Err(Error::Offset { offset, total });
    }
    let mut rest = offset;
    let mut components = vec![0usize; dims.len()];
    for j in (0..dims.len()).rev() {
        components[j] = rest % dims[j] + 1;
        rest /= dims[j];
    }
    Ok(MultiIndex(components))
}

/// Row-major strides, one per subsystem (last subsystem has stride 1).
pub(crate) fn strides_of(dims: &[usize]) -> Vec<usize> {
    let mut strides = vec![1usize; dims.len()];
    for j in (0..dims.len() - 1).rev() {
        strides[j] = strides[j + 1] * dims[j + 1];
    }
    strides
}

/// 0-based digits of an offset in the mixed radix given by `dims`.
pub(crate) fn digits_of(dims: &[usize], offset: usize) -> Vec<usize> {
    let mut rest = offset;
    let mut digits = vec![0usize; dims.len()];
    for j in (0..dims.len()).rev() {
        digits[j] = rest % dims[j];
        rest /= dims[j];
    }
    digits
}

/// Advances a 0-based digit vector to the next offset (odometer step).
pub(crate) fn increment_digits(digits: &mut [usize], dims: &[usize]) {
    for j in (0..dims.len()).rev() {
        digits[j] += 1;
        if digits[j] < dims[j] {
            return;
        }
        digits[j] = 0;
    }
}

/// A pure multipartite state as a dense box-shape coefficient tensor.
///
/// Immutable after construction; all operations return new tensors.
#[derive(Debug, Clone, PartialEq)]
pub struct StateTensor {
    dims: Vec<usize>,
    amps: Vec<Complex64>,
    normalized: bool,
}

impl StateTensor {
    /// Builds a tensor from sparse `(index, amplitude)` entries; unlisted
    /// amplitudes are zero. The result is not auto-normalized.
    pub fn new(dims: &[usize], entries: &[(MultiIndex, Complex64)]) -> Result<Self> {
        validate_dims(dims)?;
        let total: usize = dims.iter().product();
        let mut amps = vec![Complex64::new(0.0, 0.0); total];
        let mut seen = vec![false; total];
        for (index, value) in entries {
            let offset = flat_offset(dims, index)?;
            if seen[offset] {
                return Err(Error::DuplicateIndex {
                    index: index.components().to_vec(),
                });
            }
            seen[offset] = true;
            amps[offset] = *value;
        }
        Ok(Self::from_parts(dims.to_vec(), amps))
    }

    /// Builds a tensor from a full row-major amplitude vector.
    pub fn from_amps(dims: &[usize], amps: Vec<Complex64>) -> Result<Self> {
        validate_dims(dims)?;
        let total: usize = dims.iter().product();
        if amps.len() != total {
            return Err(Error::Dimension {
                dims: dims.to_vec(),
                reason: format!("expected {total} amplitudes, got {}", amps.len()),
            });
        }
        Ok(Self::from_parts(dims.to_vec(), amps))
    }

    fn from_parts(dims: Vec<usize>, amps: Vec<Complex64>) -> Self {
        let norm_sqr = pairwise_sum_by(&amps, &|z: &Complex64| z.norm_sqr());
        let normalized = (norm_sqr - 1.0).abs() <= NORMALIZED_FLAG_TOL;
        StateTensor {
            dims,
            amps,
            normalized,
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of subsystems `m`.
    pub fn subsystem_count(&self) -> usize {
        self.dims.len()
    }

    /// Total dimension `D = ∏ N_j`.
    pub fn total_dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amp(&self, index: &MultiIndex) -> Result<Complex64> {
        Ok(self.amps[flat_offset(&self.dims, index)?])
    }

    /// Squared norm `Σ |α|²`, accumulated pairwise.
    pub fn norm_sqr(&self) -> f64 {
        pairwise_sum_by(&self.amps, &|z: &Complex64| z.norm_sqr())
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Whether the squared norm was within `1e-12` of 1 at construction.
    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Returns the unit-norm version of this tensor.
    ///
    /// Already-normalized tensors are returned unchanged, so the operation is
    /// exactly idempotent.
    pub fn normalize(&self) -> Result<StateTensor> {
        if self.normalized {
            return Ok(self.clone());
        }
        let norm = self.norm();
        if norm <= DEGENERATE_NORM {
            return Err(Error::DegenerateState { norm });
        }
        let amps = self.amps.iter().map(|z| z / norm).collect();
        Ok(Self::from_parts(self.dims.clone(), amps))
    }

    /// Every amplitude multiplied by `factor`.
    pub fn scaled(&self, factor: Complex64) -> StateTensor {
        let amps = self.amps.iter().map(|z| z * factor).collect();
        Self::from_parts(self.dims.clone(), amps)
    }

    /// Reorders subsystems: position `t` of the result is position
    /// `order[t-1]` of the input (`order` is a 1-based permutation of
    /// `1..=m`).
    pub fn permute_subsystems(&self, order: &[usize]) -> Result<StateTensor> {
        let m = self.dims.len();
        if order.len() != m {
            return Err(Error::Permutation(format!(
                "length {} does not match {m} subsystems",
                order.len()
            )));
        }
        let mut seen = vec![false; m];
        for &p in order {
            if p < 1 || p > m || seen[p - 1] {
                return Err(Error::Permutation(format!(
                    "{order:?} is not a permutation"
                )));
            }
            seen[p - 1] = true;
        }
        let new_dims: Vec<usize> = order.iter().map(|&p| self.dims[p - 1]).collect();
        let mut amps = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        let mut old = vec![0usize; m];
        for (offset, slot) in amps.iter_mut().enumerate() {
            let idx = index_at(&new_dims, offset)?;
            for (t, &p) in order.iter().enumerate() {
                old[p - 1] = idx.components()[t];
            }
            *slot = self.amps[flat_offset(&self.dims, &MultiIndex(old.clone()))?];
        }
        Ok(Self::from_parts(new_dims, amps))
    }
}

/// Tensor product of per-subsystem vectors: `α_{k_1…k_m} = ∏_j v_j[k_j]`.
///
/// The result is rank 1 across every bipartition, so all quadric minors
/// vanish on it.
pub fn product_state(factors: &[Vec<Complex64>]) -> Result<StateTensor> {
    let dims: Vec<usize> = factors.iter().map(Vec::len).collect();
    validate_dims(&dims)?;
    for factor in factors {
        if factor.iter().all(|z| z.norm_sqr() == 0.0) {
            return Err(Error::DegenerateState { norm: 0.0 });
        }
    }
    let total: usize = dims.iter().product();
    let mut amps = Vec::with_capacity(total);
    let mut digits = vec![0usize; dims.len()];
    for offset in 0..total {
        if offset > 0 {
            increment_digits(&mut digits, &dims);
        }
        amps.push(
            digits
                .iter()
                .enumerate()
                .map(|(j, &k)| factors[j][k])
                .product(),
        );
    }
    Ok(StateTensor::from_parts(dims, amps))
}

/// The GHZ state `(1/√d) Σ_{i=1..d} |i,i,…,i⟩` on `m` subsystems of
/// dimension `d`.
pub fn ghz(m: usize, d: usize) -> Result<StateTensor> {
    let dims = vec![d; m];
    validate_dims(&dims)?;
    let amp = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    let entries: Vec<(MultiIndex, Complex64)> =
        (1..=d).map(|i| (MultiIndex(vec![i; m]), amp)).collect();
    StateTensor::new(&dims, &entries)
}

/// The W state `(1/√m) Σ_j |1…1 2 1…1⟩` on `m` qubits, with the excitation
/// at position `j`.
pub fn w_state(m: usize) -> Result<StateTensor> {
    let dims = vec![2usize; m];
    validate_dims(&dims)?;
    let amp = Complex64::new(1.0 / (m as f64).sqrt(), 0.0);
    let entries: Vec<(MultiIndex, Complex64)> = (1..=m)
        .map(|j| {
            let mut components = vec![1usize; m];
            components[j - 1] = 2;
            (MultiIndex(components), amp)
        })
        .collect();
    StateTensor::new(&dims, &entries)
}

/// One sample from the standard complex normal distribution (`E|z|² = 1`).
///
/// Box–Muller on two 64-bit PRNG words, each mapped to a uniform in
/// `(0, 1]` by `((w >> 11) + 1) · 2⁻⁵³`.
pub(crate) fn standard_complex_normal(rng: &mut ChaCha12Rng) -> Complex64 {
    let u1 = unit_open(rng.next_u64());
    let u2 = unit_open(rng.next_u64());
    let radius = (-u1.ln()).sqrt();
    let angle = 2.0 * std::f64::consts::PI * u2;
    Complex64::new(radius * angle.cos(), radius * angle.sin())
}

fn unit_open(word: u64) -> f64 {
    ((word >> 11) + 1) as f64 * (1.0 / 9007199254740992.0)
}

/// A normalized state with i.i.d. standard-complex-normal amplitudes.
///
/// The generator is ChaCha12 seeded with `seed`, consumed two words per
/// amplitude in offset order, so identical seed and dims give bit-identical
/// output.
pub fn random_state(dims: &[usize], seed: u64) -> Result<StateTensor> {
    validate_dims(dims)?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let total: usize = dims.iter().product();
    let amps: Vec<Complex64> = (0..total)
        .map(|_| standard_complex_normal(&mut rng))
        .collect();
    StateTensor::from_amps(dims, amps)?.normalize()
}

/// A fully separable random state: each factor is an independent random
/// unit vector (same PRNG scheme as [`random_state`]), combined by
/// [`product_state`].
pub fn random_product_state(dims: &[usize], seed: u64) -> Result<StateTensor> {
    validate_dims(dims)?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut factors = Vec::with_capacity(dims.len());
    for &n in dims {
        let mut factor: Vec<Complex64> =
            (0..n).map(|_| standard_complex_normal(&mut rng)).collect();
        let norm = factor.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm <= DEGENERATE_NORM {
            return Err(Error::DegenerateState { norm });
        }
        for z in &mut factor {
            *z /= norm;
        }
        factors.push(factor);
    }
    product_state(&factors)
}
