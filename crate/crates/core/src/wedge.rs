//! Exterior-index combinatorics.
//!
//! The Rust API works with 0-based basis indices; the 1-based convention of
//! documents and reports is applied at the I/O boundary, except for
//! [`canonicalize_wedge`] which takes the user-facing 1-based form.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// A strictly increasing tuple of 1-based basis indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WedgeIndex(Vec<usize>);

impl WedgeIndex {
    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for WedgeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, ")")
    }
}

/// Result of sorting a wedge monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Canonical {
    /// Sorted tuple and the parity of the sorting permutation (`+1` or `-1`).
    Signed(WedgeIndex, i8),
    /// The tuple repeats an index, so the wedge vanishes.
    Zero,
}

/// Canonicalizes a tuple of 1-based indices in `1..=dim`.
pub fn canonicalize_wedge(indices: &[usize], dim: usize) -> Result<Canonical> {
    if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > dim) {
        return Err(Error::Input(format!(
            "basis index {bad} out of range 1..={dim}"
        )));
    }
    Ok(match sort_signed(indices) {
        Some((sorted, sign)) => Canonical::Signed(WedgeIndex(sorted), sign),
        None => Canonical::Zero,
    })
}

/// Sorts `indices`, returning the permutation parity, or `None` on a repeat.
pub fn sort_signed(indices: &[usize]) -> Option<(Vec<usize>, i8)> {
    let mut v = indices.to_vec();
    let mut sign = 1i8;
    // insertion sort; tuples are short
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// Sign of the permutation sorting `indices` in place, or 0 on a repeat.
pub fn sort_in_place(indices: &mut [usize]) -> i8 {
    let mut sign = 1i8;
    for i in 1..indices.len() {
        let mut j = i;
        while j > 0 && indices[j - 1] > indices[j] {
            indices.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && indices[j - 1] == indices[j] {
            return 0;
        }
    }
    sign
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// All strictly increasing `k`-tuples from `0..dim`, in lexicographic order.
pub fn increasing_tuples(dim: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(dim, k));
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, dim: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            if dim - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, dim, k, cur, out);
            cur.pop();
        }
    }
    rec(0, dim, k, &mut cur, &mut out);
    out
}

/// All non-decreasing `k`-tuples from `0..dim`, in lexicographic order.
pub fn nondecreasing_tuples(dim: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, dim: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            rec(i, dim, k, cur, out);
            cur.pop();
        }
    }
    rec(0, dim, k, &mut cur, &mut out);
    out
}

/// Indexed basis of `Λ^k` of a `dim`-dimensional space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeBasis {
    dim: usize,
    degree: usize,
    tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl WedgeBasis {
    pub fn new(dim: usize, degree: usize) -> Self {
        let tuples = increasing_tuples(dim, degree);
        let index = tuples
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        WedgeBasis {
            dim,
            degree,
            tuples,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of basis wedges, `C(dim, degree)`.
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuple(&self, i: usize) -> &[usize] {
        &self.tuples[i]
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    /// Position of a strictly increasing tuple.
    pub fn position(&self, sorted: &[usize]) -> Option<usize> {
        self.index.get(sorted).copied()
    }

    /// Position and sign of an arbitrary tuple, `None` if it has a repeat.
    pub fn locate(&self, tuple: &[usize]) -> Option<(usize, i8)> {
        let (sorted, sign) = sort_signed(tuple)?;
        self.position(&sorted).map(|p| (p, sign))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn signed(v: &[usize], s: i8) -> Canonical {
        Canonical::Signed(WedgeIndex(v.to_vec()), s)
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonicalize_wedge(&[2, 1], 3).unwrap(), signed(&[1, 2], -1));
        assert_eq!(canonicalize_wedge(&[1, 1], 3).unwrap(), Canonical::Zero);
        assert_eq!(canonicalize_wedge(&[3, 1, 2], 3).unwrap(), signed(&[1, 2, 3], 1));
        assert!(canonicalize_wedge(&[0, 1], 3).is_err());
        assert!(canonicalize_wedge(&[4, 1], 3).is_err());
        assert_eq!(canonicalize_wedge(&[], 3).unwrap(), signed(&[], 1));
    }

    #[test]
    fn repeat_after_sorting_is_zero() {
        assert_eq!(sort_signed(&[3, 1, 3]), None);
        assert_eq!(sort_signed(&[2, 0, 1, 0]), None);
        let mut t = [2, 1, 2];
        assert_eq!(sort_in_place(&mut t), 0);
    }

    #[test]
    fn basis_sizes_and_order() {
        let b = WedgeBasis::new(4, 2);
        assert_eq!(b.len(), 6);
        assert_eq!(b.tuple(0), &[0, 1]);
        assert_eq!(b.tuple(5), &[2, 3]);
        assert_eq!(b.locate(&[3, 1]), Some((b.position(&[1, 3]).unwrap(), -1)));
        assert_eq!(WedgeBasis::new(3, 0).len(), 1);
        assert_eq!(nondecreasing_tuples(3, 2).len(), 6);
        assert_eq!(binomial(6, 3), 20);
    }

    fn parity(perm: &[usize]) -> i8 {
        let mut inv = 0;
        for i in 0..perm.len() {
            for j in i + 1..perm.len() {
                if perm[i] > perm[j] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 { 1 } else { -1 }
    }

    proptest! {
        #[test]
        fn permuting_multiplies_by_sign(
            base in proptest::sample::subsequence((1usize..=9).collect::<Vec<_>>(), 1..6),
            seed in any::<u64>(),
        ) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut perm: Vec<usize> = (0..base.len()).collect();
            perm.shuffle(&mut rng);
            let permuted: Vec<usize> = perm.iter().map(|&p| base[p]).collect();
            let c0 = canonicalize_wedge(&base, 9).unwrap();
            let c1 = canonicalize_wedge(&permuted, 9).unwrap();
            match (c0, c1) {
                (Canonical::Signed(t0, s0), Canonical::Signed(t1, s1)) => {
                    prop_assert_eq!(t0, t1);
                    prop_assert_eq!(s1, s0 * parity(&perm));
                }
                _ => prop_assert!(false, "repeat-free tuple canonicalized to zero"),
            }
        }
    }
}
