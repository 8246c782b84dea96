//! Permutations of `{0, .., n-1}` in one-line notation.
//!
//! Composition follows the functional convention: `a.compose(&b)` is the
//! permutation `i -> a(b(i))`, so representations satisfy `R(ab) = R(a) R(b)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::partitions::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::Domain(format!(
                    "{images:?} is not a permutation of 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// The transposition swapping `a` and `b` in `S_n`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(a, b);
        p
    }

    /// The cycle `c[0] -> c[1] -> ... -> c[0]` in `S_n`.
    pub fn cycle(n: usize, c: &[usize]) -> Self {
        let mut p = Self::identity(n);
        for (k, &x) in c.iter().enumerate() {
            p.images[x] = c[(k + 1) % c.len()];
        }
        p
    }

    /// A representative of the class with the given cycle lengths, using
    /// consecutive points for each cycle.
    pub fn of_cycle_type(cycles: &Partition) -> Self {
        let mut p = Self::identity(cycles.n());
        let mut start = 0;
        for &len in cycles.parts() {
            for k in 0..len {
                p.images[start + k] = start + (k + 1) % len;
            }
            start += len;
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            lengths.push(len);
        }
        lengths
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::from_unsorted(self.cycle_lengths())
    }

    /// Indices `w` with `self = s_{w[0]} s_{w[1]} ... s_{w[k-1]}`, where `s_i`
    /// swaps `i` and `i + 1`. The word is reduced (length = number of inversions).
    pub fn adjacent_word(&self) -> Vec<usize> {
        let mut a = self.images.clone();
        let mut pushed = Vec::new();
        // bubble sort: each swap at a descent right-multiplies by s_i
        loop {
            let mut swapped = false;
            for i in 0..a.len().saturating_sub(1) {
                if a[i] > a[i + 1] {
                    a.swap(i, i + 1);
                    pushed.push(i);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        pushed.reverse();
        pushed
    }

    /// Restriction to the block `offset..offset + len`, if the block is invariant.
    pub fn restrict(&self, offset: usize, len: usize) -> Option<Permutation> {
        let mut images = Vec::with_capacity(len);
        for i in offset..offset + len {
            let x = self.images[i];
            if x < offset || x >= offset + len {
                return None;
            }
            images.push(x - offset);
        }
        Some(Permutation { images })
    }

    /// Places `self` on the points `offset..offset + degree` of `S_n`.
    pub fn embed(&self, n: usize, offset: usize) -> Permutation {
        let mut p = Permutation::identity(n);
        for (i, &x) in self.images.iter().enumerate() {
            p.images[offset + i] = offset + x;
        }
        p
    }

    /// Juxtaposition of permutations on consecutive blocks of points.
    pub fn direct_sum(blocks: &[Permutation]) -> Permutation {
        let mut images = Vec::new();
        for b in blocks {
            let offset = images.len();
            images.extend(b.images.iter().map(|&x| x + offset));
        }
        Permutation { images }
    }

    /// All `n!` permutations in lexicographic order of their one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(
            n: usize,
            current: &mut Vec<usize>,
            used: &mut [bool],
            out: &mut Vec<Permutation>,
        ) {
            if current.len() == n {
                out.push(Permutation {
                    images: current.clone(),
                });
                return;
            }
            for x in 0..n {
                if !used[x] {
                    used[x] = true;
                    current.push(x);
                    rec(n, current, used, out);
                    current.pop();
                    used[x] = false;
                }
            }
        }
        rec(n, &mut current, &mut used, &mut out);
        out
    }
}

/// Elements of the Young subgroup `S_{b_1} × S_{b_2} × ...` on consecutive
/// blocks, sorted lexicographically by one-line notation.
pub fn young_subgroup(blocks: &[usize]) -> Vec<Permutation> {
    let mut out = vec![Vec::new()];
    for &b in blocks {
        let factor = Permutation::all(b);
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Permutation>| {
                factor.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.push(p.clone());
                    v
                })
            })
            .collect();
    }
    let mut perms: Vec<Permutation> = out.iter().map(|bs| Permutation::direct_sum(bs)).collect();
    perms.sort();
    perms
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based points, e.g. `(1 2)(3 4)`; `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut wrote = false;
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.images[i];
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacent_word_reconstructs_permutation() {
        for p in Permutation::all(5) {
            let mut acc = Permutation::identity(5);
            for &i in &p.adjacent_word() {
                acc = acc.compose(&Permutation::transposition(5, i, i + 1));
            }
            assert_eq!(acc, p);
        }
    }

    #[test]
    fn compose_is_functional() {
        let a = Permutation::cycle(3, &[0, 1, 2]);
        let b = Permutation::transposition(3, 0, 1);
        // a(b(0)) = a(1) = 2
        assert_eq!(a.compose(&b).apply(0), 2);
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn display_uses_cycle_notation() {
        assert_eq!(Permutation::cycle(4, &[0, 2]).to_string(), "(1 3)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn young_subgroup_is_sorted_and_closed() {
        let h = young_subgroup(&[2, 1, 2]);
        assert_eq!(h.len(), 4);
        assert!(h.windows(2).all(|w| w[0] < w[1]));
        for a in &h {
            for b in &h {
                assert!(h.binary_search(&a.compose(b)).is_ok());
            }
        }
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![2, 0]).is_err());
    }
}
