//! Generalized two-by-two minors and the distinct quadric generators of each
//! swap class.
//!
//! A minor for class `S` and index pair `(k, l)` is
//! `α_k α_l − α_{k'} α_{l'}` with `(k', l') = swap_S(k, l)`. The four ordered
//! pairs `(k,l)`, `(l,k)`, `(k',l')`, `(l',k')` produce the same polynomial
//! up to sign, so distinct generators correspond to orbits of size four; the
//! canonical representative is the lexicographically smallest ordered pair.
//!
//! A pair belongs to class `S` only when it disagrees at *every* position of
//! `S` and somewhere outside `S`: agreement at a swapped position collapses
//! the minor onto a strictly smaller class, and agreement everywhere outside
//! makes the swapped product equal the original, i.e. the zero polynomial.

use std::fmt;

use num_complex::Complex64;

use crate::bipartition::{enumerate_classes, Bipartition};
use crate::error::{Error, Result};
use crate::state::{index_at, validate_dims, MultiIndex, StateTensor};

/// One distinct quadric generator: a canonical index pair plus its class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadricTerm {
    class: Bipartition,
    k: MultiIndex,
    l: MultiIndex,
}

impl QuadricTerm {
    pub fn class(&self) -> &Bipartition {
        &self.class
    }

    pub fn k(&self) -> &MultiIndex {
        &self.k
    }

    pub fn l(&self) -> &MultiIndex {
        &self.l
    }

    /// Value of this generator on a state.
    pub fn eval(&self, psi: &StateTensor) -> Result<Complex64> {
        eval_minor(psi, &self.class, &self.k, &self.l)
    }
}

impl fmt::Display for QuadricTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S={} k={} l={}", self.class, self.k, self.l)
    }
}

/// `α_k α_l − α_{k'} α_{l'}` with `(k', l') = swap_S(k, l)`.
pub fn eval_minor(
    psi: &StateTensor,
    class: &Bipartition,
    k: &MultiIndex,
    l: &MultiIndex,
) -> Result<Complex64> {
    if class.subsystem_count() != psi.subsystem_count() {
        return Err(Error::Class(format!(
            "class on {} subsystems applied to a state with {}",
            class.subsystem_count(),
            psi.subsystem_count()
        )));
    }
    let (k_swapped, l_swapped) = class.swap(k, l);
    Ok(psi.amp(k)? * psi.amp(l)? - psi.amp(&k_swapped)? * psi.amp(&l_swapped)?)
}

/// Whether `(k, l)` contributes no distinct generator for `class`: the pair
/// agrees at one of the swapped positions, or agrees everywhere outside.
pub fn is_trivial(k: &MultiIndex, l: &MultiIndex, class: &Bipartition) -> bool {
    for &p in class.positions() {
        if k.component(p) == l.component(p) {
            return true;
        }
    }
    let mut swap = class.positions().iter().peekable();
    for p in 1..=k.len() {
        if swap.peek() == Some(&&p) {
            swap.next();
        } else if k.component(p) != l.component(p) {
            return false;
        }
    }
    true
}

/// Canonical representative of the orbit of `(k, l)` under exchange and the
/// class swap: the lexicographically smallest of the four ordered pairs.
pub fn canonical_rep(k: &MultiIndex, l: &MultiIndex, class: &Bipartition) -> Result<QuadricTerm> {
    if is_trivial(k, l, class) {
        return Err(Error::TrivialTerm);
    }
    let (k_swapped, l_swapped) = class.swap(k, l);
    let mut best = (k, l);
    for candidate in [(l, k), (&k_swapped, &l_swapped), (&l_swapped, &k_swapped)] {
        if candidate < best {
            best = candidate;
        }
    }
    Ok(QuadricTerm {
        class: class.clone(),
        k: best.0.clone(),
        l: best.1.clone(),
    })
}

/// Streams the distinct generators of one class in lexicographic `(k, l)`
/// order, each exactly once.
pub fn enumerate_terms(dims: &[usize], class: &Bipartition) -> Result<TermIter> {
    validate_dims(dims)?;
    if class.subsystem_count() != dims.len() {
        return Err(Error::Class(format!(
            "class on {} subsystems applied to dims {:?}",
            class.subsystem_count(),
            dims
        )));
    }
    let total: usize = dims.iter().product();
    Ok(TermIter {
        dims: dims.to_vec(),
        class: class.clone(),
        a: 0,
        b: 0,
        total,
    })
}

/// Iterator over the canonical terms of one class.
pub struct TermIter {
    dims: Vec<usize>,
    class: Bipartition,
    a: usize,
    b: usize,
    total: usize,
}

impl Iterator for TermIter {
    type Item = QuadricTerm;

    fn next(&mut self) -> Option<QuadricTerm> {
        while self.a < self.total {
            let k = index_at(&self.dims, self.a).expect("offset in range");
            while self.b < self.total {
                let l = index_at(&self.dims, self.b).expect("offset in range");
                self.b += 1;
                if is_trivial(&k, &l, &self.class) {
                    continue;
                }
                let (k_swapped, l_swapped) = self.class.swap(&k, &l);
                let pair = (&k, &l);
                if pair < (&l, &k)
                    && pair < (&k_swapped, &l_swapped)
                    && pair < (&l_swapped, &k_swapped)
                {
                    return Some(QuadricTerm {
                        class: self.class.clone(),
                        k,
                        l,
                    });
                }
            }
            self.a += 1;
            self.b = 0;
        }
        None
    }
}

/// Number of distinct generators of one class, in closed form: ordered pairs
/// disagreeing at every class position and somewhere outside, divided by the
/// orbit size 4.
pub fn class_term_count(dims: &[usize], class: &Bipartition) -> usize {
    let inside: usize = class
        .positions()
        .iter()
        .map(|&p| dims[p - 1] * (dims[p - 1] - 1))
        .product();
    let outside_dims: Vec<usize> = class
        .complement_positions()
        .iter()
        .map(|&p| dims[p - 1])
        .collect();
    let outside_pairs: usize = outside_dims.iter().map(|&n| n * n).product();
    let outside_equal: usize = outside_dims.iter().product();
    inside * (outside_pairs - outside_equal) / 4
}

/// Per-class and aggregate generator counts for a tensor shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermCounts {
    /// Counts per canonical class, in class enumeration order.
    pub per_class: Vec<(Bipartition, usize)>,
    /// Total over singleton classes.
    pub singleton_total: usize,
    /// Total over classes that swap two or more positions.
    pub multi_total: usize,
    pub grand_total: usize,
}

/// Counts the distinct generators of every canonical class.
pub fn count_terms(dims: &[usize]) -> Result<TermCounts> {
    validate_dims(dims)?;
    let classes = enumerate_classes(dims.len())?;
    let mut per_class = Vec::with_capacity(classes.len());
    let mut singleton_total = 0;
    let mut multi_total = 0;
    for class in classes {
        let count = class_term_count(dims, &class);
        if class.is_singleton() {
            singleton_total += count;
        } else {
            multi_total += count;
        }
        per_class.push((class, count));
    }
    Ok(TermCounts {
        per_class,
        singleton_total,
        multi_total,
        grand_total: singleton_total + multi_total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{ghz, product_state, random_product_state, random_state, StateTensor};
    use approx::assert_abs_diff_eq;
    use std::collections::HashSet;

    fn class(positions: &[usize], m: usize) -> Bipartition {
        Bipartition::canonical(positions, m).unwrap()
    }

    #[test]
    fn bell_minor_is_one_half() {
        let psi = ghz(2, 2).unwrap();
        let value = eval_minor(
            &psi,
            &class(&[1], 2),
            &MultiIndex::from([1, 1]),
            &MultiIndex::from([2, 2]),
        )
        .unwrap();
        assert_abs_diff_eq!(value.re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(value.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn equal_pair_minor_vanishes() {
        let psi = random_state(&[2, 2, 2], 3).unwrap();
        let k = MultiIndex::from([1, 2, 1]);
        let value = eval_minor(&psi, &class(&[2], 3), &k, &k).unwrap();
        assert_eq!(value, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn basis_state_minor_vanishes() {
        let one = Complex64::new(1.0, 0.0);
        let psi = StateTensor::new(&[2, 2, 2], &[(MultiIndex::from([1, 1, 1]), one)]).unwrap();
        let value = eval_minor(
            &psi,
            &class(&[2], 3),
            &MultiIndex::from([1, 1, 1]),
            &MultiIndex::from([2, 2, 2]),
        )
        .unwrap();
        assert_eq!(value, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn triviality_examples() {
        let s = class(&[1], 2);
        assert!(is_trivial(
            &MultiIndex::from([1, 1]),
            &MultiIndex::from([1, 2]),
            &s
        ));
        assert!(is_trivial(
            &MultiIndex::from([1, 1]),
            &MultiIndex::from([2, 1]),
            &s
        ));
        assert!(!is_trivial(
            &MultiIndex::from([1, 1]),
            &MultiIndex::from([2, 2]),
            &s
        ));
    }

    #[test]
    fn partial_agreement_inside_class_is_trivial() {
        // agreement at a swapped position collapses onto the singleton class
        let s = class(&[1, 2], 4);
        assert!(is_trivial(
            &MultiIndex::from([1, 1, 1, 1]),
            &MultiIndex::from([1, 2, 2, 2]),
            &s
        ));
        assert!(!is_trivial(
            &MultiIndex::from([1, 1, 1, 1]),
            &MultiIndex::from([2, 2, 2, 2]),
            &s
        ));
    }

    #[test]
    fn canonical_rep_picks_lexicographic_minimum() {
        let s = class(&[1], 2);
        let term = canonical_rep(&MultiIndex::from([2, 2]), &MultiIndex::from([1, 1]), &s).unwrap();
        assert_eq!(term.k(), &MultiIndex::from([1, 1]));
        assert_eq!(term.l(), &MultiIndex::from([2, 2]));

        let term = canonical_rep(&MultiIndex::from([1, 2]), &MultiIndex::from([2, 1]), &s).unwrap();
        assert_eq!(term.k(), &MultiIndex::from([1, 1]));
        assert_eq!(term.l(), &MultiIndex::from([2, 2]));
    }

    #[test]
    fn canonical_rep_is_idempotent_and_rejects_trivial_pairs() {
        let s = class(&[2], 3);
        let term = canonical_rep(
            &MultiIndex::from([2, 2, 1]),
            &MultiIndex::from([1, 1, 2]),
            &s,
        )
        .unwrap();
        let again = canonical_rep(term.k(), term.l(), &s).unwrap();
        assert_eq!(term, again);

        assert!(matches!(
            canonical_rep(
                &MultiIndex::from([1, 1, 1]),
                &MultiIndex::from([1, 1, 1]),
                &s
            ),
            Err(Error::TrivialTerm)
        ));
    }

    #[test]
    fn enumeration_counts_for_small_shapes() {
        let terms: Vec<_> = enumerate_terms(&[2, 2], &class(&[1], 2)).unwrap().collect();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].k(), &MultiIndex::from([1, 1]));
        assert_eq!(terms[0].l(), &MultiIndex::from([2, 2]));

        let count = enumerate_terms(&[2, 2, 2], &class(&[1], 3))
            .unwrap()
            .count();
        assert_eq!(count, 6);

        let count = enumerate_terms(&[2, 2, 2, 2], &class(&[1, 2], 4))
            .unwrap()
            .count();
        assert_eq!(count, 12);
    }

    #[test]
    fn count_terms_examples() {
        let counts = count_terms(&[2, 2]).unwrap();
        assert_eq!(counts.grand_total, 1);

        let counts = count_terms(&[2, 2, 2]).unwrap();
        assert!(counts.per_class.iter().all(|(_, n)| *n == 6));
        assert_eq!(counts.grand_total, 18);

        let counts = count_terms(&[2, 2, 2, 2]).unwrap();
        assert_eq!(counts.singleton_total, 112);
        assert_eq!(counts.multi_total, 36);
        assert_eq!(counts.grand_total, 148);
    }

    /// Brute force over every ordered pair with orbit dedup; the independent
    /// route the closed-form and streaming counts are checked against.
    fn brute_force_class_count(dims: &[usize], class: &Bipartition) -> usize {
        let total: usize = dims.iter().product();
        let mut reps: HashSet<(MultiIndex, MultiIndex)> = HashSet::new();
        for a in 0..total {
            let k = index_at(dims, a).unwrap();
            for b in 0..total {
                let l = index_at(dims, b).unwrap();
                if let Ok(term) = canonical_rep(&k, &l, class) {
                    reps.insert((term.k().clone(), term.l().clone()));
                }
            }
        }
        reps.len()
    }

    #[test]
    fn counts_agree_with_brute_force_on_sample_shapes() {
        for dims in [
            vec![2, 2],
            vec![2, 3],
            vec![3, 3],
            vec![2, 2, 2],
            vec![2, 3, 2],
            vec![2, 2, 2, 2],
        ] {
            for class in enumerate_classes(dims.len()).unwrap() {
                let brute = brute_force_class_count(&dims, &class);
                let streamed = enumerate_terms(&dims, &class).unwrap().count();
                let closed = class_term_count(&dims, &class);
                assert_eq!(brute, streamed, "dims {dims:?} class {class}");
                assert_eq!(brute, closed, "dims {dims:?} class {class}");
            }
        }
    }

    #[test]
    fn nontrivial_pair_count_is_four_times_term_count() {
        for dims in [vec![2, 2], vec![2, 2, 2], vec![2, 3, 2]] {
            let total: usize = dims.iter().product();
            for class in enumerate_classes(dims.len()).unwrap() {
                let mut nontrivial = 0usize;
                for a in 0..total {
                    let k = index_at(&dims, a).unwrap();
                    for b in 0..total {
                        let l = index_at(&dims, b).unwrap();
                        if !is_trivial(&k, &l, &class) {
                            nontrivial += 1;
                        }
                    }
                }
                assert_eq!(nontrivial, 4 * class_term_count(&dims, &class));
            }
        }
    }

    #[test]
    fn orbit_values_match_up_to_sign() {
        for seed in 0..20 {
            let psi = random_state(&[3, 3, 3], seed).unwrap();
            for class in enumerate_classes(3).unwrap() {
                for term in enumerate_terms(psi.dims(), &class).unwrap().take(10) {
                    let value = term.eval(&psi).unwrap();
                    let exchanged = eval_minor(&psi, &class, term.l(), term.k()).unwrap();
                    let (ks, ls) = class.swap(term.k(), term.l());
                    let swapped = eval_minor(&psi, &class, &ks, &ls).unwrap();
                    assert_abs_diff_eq!((exchanged - value).norm(), 0.0, epsilon = 1e-12);
                    assert_abs_diff_eq!((swapped + value).norm(), 0.0, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn product_states_kill_every_term() {
        let one = Complex64::new(1.0, 0.0);
        let psi = product_state(&[vec![one, one], vec![one, one], vec![one, one]]).unwrap();
        let seeded = random_product_state(&[2, 2, 2], 9).unwrap();
        for psi in [psi, seeded] {
            let scale = psi
                .amps()
                .iter()
                .map(|z| z.norm())
                .fold(0.0f64, f64::max)
                .powi(2);
            for class in enumerate_classes(3).unwrap() {
                for term in enumerate_terms(psi.dims(), &class).unwrap() {
                    assert!(term.eval(&psi).unwrap().norm() <= 1e-12 * scale);
                }
            }
        }
    }
}
