//! Local unitaries: Haar-random sampling and single-subsystem application.

use num_complex::Complex64;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::state::{standard_complex_normal, StateTensor};

/// A Haar-random `dim × dim` unitary, row-major.
///
/// A Ginibre matrix (i.i.d. complex normal entries) is orthonormalized
/// column by column with two Gram–Schmidt passes per column; positive
/// normalization makes the factorization unique, which gives the Haar
/// distribution.
pub fn random_unitary(dim: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut cols: Vec<Vec<Complex64>> = (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| standard_complex_normal(&mut rng))
                .collect()
        })
        .collect();
    for j in 0..dim {
        for _ in 0..2 {
            for i in 0..j {
                let proj: Complex64 = cols[i]
                    .iter()
                    .zip(&cols[j])
                    .map(|(basis, v)| basis.conj() * v)
                    .sum();
                let basis = cols[i].clone();
                for (z, b) in cols[j].iter_mut().zip(&basis) {
                    *z -= proj * b;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut cols[j] {
            *z /= norm;
        }
    }
    let mut unitary = vec![Complex64::new(0.0, 0.0); dim * dim];
    for (c, col) in cols.iter().enumerate() {
        for (r, z) in col.iter().enumerate() {
            unitary[r * dim + c] = *z;
        }
    }
    unitary
}

/// Applies a `d × d` matrix (row-major) to one subsystem (1-based position).
pub fn apply_local_unitary(
    psi: &StateTensor,
    position: usize,
    unitary: &[Complex64],
) -> Result<StateTensor> {
    let m = psi.subsystem_count();
    if position < 1 || position > m {
        return Err(Error::Permutation(format!(
            "position {position} out of range for {m} subsystems"
        )));
    }
    let n = psi.dims()[position - 1];
    if unitary.len() != n * n {
        return Err(Error::Dimension {
            dims: vec![n],
            reason: format!("matrix has {} entries, expected {}", unitary.len(), n * n),
        });
    }
    let total = psi.total_dim();
    let stride: usize = psi.dims()[position..].iter().product();
    let block = stride * n;
    let amps = psi.amps();
    let mut out = vec![Complex64::new(0.0, 0.0); total];
    for base in (0..total).step_by(block) {
        for s in 0..stride {
            for i in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..n {
                    acc += unitary[i * n + j] * amps[base + j * stride + s];
                }
                out[base + i * stride + s] = acc;
            }
        }
    }
    StateTensor::from_amps(psi.dims(), out)
}
