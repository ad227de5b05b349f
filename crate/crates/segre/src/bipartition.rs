//! Canonical bipartitions of subsystem positions.
//!
//! Swapping a set of positions `S` between two multi-indices and swapping its
//! complement produce the same unordered pair of indices, so `{S, S^c}` is a
//! single swap class. Each class is represented canonically by its smaller
//! side; at even split the side containing position 1 wins.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::state::MultiIndex;

/// A canonical nonempty proper subset `S` of the subsystem positions
/// `{1, …, m}`, standing for the swap class `{S, S^c}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bipartition {
    positions: Vec<usize>,
    m: usize,
}

impl Bipartition {
    /// Canonical representative of the class `{S, S^c}`: `S` itself when
    /// `|S| < m/2` (or `|S| = m/2` with `1 ∈ S`), otherwise `S^c`.
    pub fn canonical(positions: &[usize], m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::Dimension {
                dims: vec![m],
                reason: "at least two subsystems are required".into(),
            });
        }
        let mut sorted = positions.to_vec();
        sorted.sort_unstable();
        for pair in sorted.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::Class(format!("duplicate position {}", pair[0])));
            }
        }
        if sorted.iter().any(|&p| p < 1 || p > m) {
            return Err(Error::Class(format!(
                "positions {sorted:?} out of range for m = {m}"
            )));
        }
        if sorted.is_empty() {
            return Err(Error::Class("the empty set is not a swap class".into()));
        }
        if sorted.len() == m {
            return Err(Error::Class(
                "the full position set swaps the pair onto itself".into(),
            ));
        }
        let keep = match (2 * sorted.len()).cmp(&m) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => sorted[0] == 1,
        };
        let positions = if keep {
            sorted
        } else {
            (1..=m).filter(|p| !sorted.contains(p)).collect()
        };
        Ok(Bipartition { positions, m })
    }

    /// Sorted 1-based positions of the representative side.
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn subsystem_count(&self) -> usize {
        self.m
    }

    pub fn cardinality(&self) -> usize {
        self.positions.len()
    }

    pub fn is_singleton(&self) -> bool {
        self.positions.len() == 1
    }

    pub fn contains(&self, position: usize) -> bool {
        self.positions.binary_search(&position).is_ok()
    }

    /// Positions of the complementary side, sorted.
    pub fn complement_positions(&self) -> Vec<usize> {
        (1..=self.m).filter(|&p| !self.contains(p)).collect()
    }

    /// Exchanges the components at this class's positions between `k` and
    /// `l`; components outside the class are untouched. Involutive.
    pub fn swap(&self, k: &MultiIndex, l: &MultiIndex) -> (MultiIndex, MultiIndex) {
        swap_by_positions(k, l, &self.positions)
    }
}

pub(crate) fn swap_by_positions(
    k: &MultiIndex,
    l: &MultiIndex,
    positions: &[usize],
) -> (MultiIndex, MultiIndex) {
    assert_eq!(k.len(), l.len(), "indices must address the same tensor");
    let mut k_out = k.components().to_vec();
    let mut l_out = l.components().to_vec();
    for &p in positions {
        k_out[p - 1] = l.components()[p - 1];
        l_out[p - 1] = k.components()[p - 1];
    }
    (MultiIndex::new(k_out), MultiIndex::new(l_out))
}

impl PartialOrd for Bipartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Bipartition {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.positions.len(), &self.positions, self.m).cmp(&(
            other.positions.len(),
            &other.positions,
            other.m,
        ))
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.positions.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// All `2^(m-1) - 1` canonical swap classes, sorted by cardinality and then
/// lexicographically; singleton classes come first.
pub fn enumerate_classes(m: usize) -> Result<Vec<Bipartition>> {
    if m < 2 {
        return Err(Error::Dimension {
            dims: vec![m],
            reason: "at least two subsystems are required".into(),
        });
    }
    let mut classes = Vec::new();
    for cardinality in 1..=(m / 2) {
        for subset in combinations(m, cardinality) {
            if 2 * cardinality == m && subset[0] != 1 {
                continue;
            }
            classes.push(Bipartition {
                positions: subset,
                m,
            });
        }
    }
    Ok(classes)
}

/// Lexicographic `k`-subsets of `1..=m`.
fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (1..=k).collect();
    loop {
        out.push(current.clone());
        let mut i = k;
        while i > 0 && current[i - 1] == m - k + i {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        current[i - 1] += 1;
        for j in i..k {
            current[j] = current[j - 1] + 1;
        }
    }
    out
}
