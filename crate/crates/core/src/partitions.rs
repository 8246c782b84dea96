//! Integer partitions, compositions and conjugacy-class data of `S_n`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{check_limit, Error, Result};

/// Largest `n` for which [`partitions_of`] enumerates by default.
pub const DEFAULT_PARTITION_CAP: usize = 40;

/// A weakly decreasing sequence of positive integers, stored without trailing zeros.
///
/// Partitions label both the irreducible representations of `S_n` and its
/// conjugacy classes (cycle types). Text form is `(3,1)`; `3,1` also parses.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Validates weak decrease; zeros are only accepted as trailing padding and are stripped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        if parts.contains(&0) {
            return Err(Error::Domain(format!("{parts:?} has interior zeros")));
        }
        Ok(Partition { parts })
    }

    /// Sorts and drops zeros; any multiset of nonnegative integers is accepted.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`, labelling the trivial irrep.
    pub fn row(n: usize) -> Self {
        Self::from_unsorted(vec![n])
    }

    /// The one-column partition `(1^n)`, labelling the sign irrep.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of boxes.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts, often written `ℓ(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Row length, zero past the last part.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0);
        let parts = (0..first)
            .map(|j| self.parts.iter().filter(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    /// Whether the Young diagram of `other` fits inside this one.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (0..other.len()).all(|i| other.parts[i] <= self.parts[i])
    }

    /// Rows whose last box can be removed, top to bottom.
    pub fn removable_rows(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.part(i) > self.part(i + 1))
            .collect()
    }

    /// Rows at whose end a box can be added, top to bottom (the last is a new row).
    pub fn addable_rows(&self) -> Vec<usize> {
        (0..=self.len())
            .filter(|&i| i == 0 || self.part(i - 1) > self.part(i))
            .collect()
    }

    pub fn remove_box(&self, row: usize) -> Option<Partition> {
        if !self.removable_rows().contains(&row) {
            return None;
        }
        let mut parts = self.parts.clone();
        parts[row] -= 1;
        Some(Partition::from_unsorted(parts))
    }

    pub fn add_box(&self, row: usize) -> Option<Partition> {
        if !self.addable_rows().contains(&row) {
            return None;
        }
        let mut parts = self.parts.clone();
        if row == parts.len() {
            parts.push(1);
        } else {
            parts[row] += 1;
        }
        Some(Partition { parts })
    }

    /// Hook length of box `(row, col)`.
    pub fn hook(&self, row: usize, col: usize) -> usize {
        let arm = self.parts[row] - col - 1;
        let leg = self.parts[row + 1..].iter().filter(|&&p| p > col).count();
        arm + leg + 1
    }

    /// Multiplicity of each part size: `m[i]` counts parts equal to `i`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.part(0) + 1];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

fn parse_parts(s: &str) -> Result<Vec<usize>> {
    let t = s.trim();
    let t = t
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .or_else(|| t.strip_prefix('[').and_then(|t| t.strip_suffix(']')))
        .unwrap_or(t)
        .trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad part {x:?} in {s:?}")))
        })
        .collect()
}

fn write_parts(f: &mut fmt::Formatter<'_>, parts: &[usize]) -> fmt::Result {
    write!(f, "(")?;
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{p}")?;
    }
    write!(f, ")")
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_parts(s)?).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.parts)
    }
}

/// A sequence of positive integers whose order matters, e.g. the content of a tableau.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Domain(format!(
                "composition {parts:?} has a zero part"
            )));
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The partition obtained by sorting the parts.
    pub fn sorted(&self) -> Partition {
        Partition::from_unsorted(self.parts.clone())
    }
}

impl From<&Partition> for Composition {
    fn from(p: &Partition) -> Self {
        Composition {
            parts: p.parts.clone(),
        }
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Self {
        c.parts
    }
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Composition::new(v)
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Composition::new(parse_parts(s)?).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.parts)
    }
}

/// A conjugacy class of `S_n`: cycle lengths and the number of permutations in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleType {
    pub cycles: Partition,
    pub class_size: BigUint,
}

impl CycleType {
    pub fn new(cycles: Partition) -> Self {
        let n = cycles.n();
        let class_size = factorial(n) / centralizer_order(&cycles);
        CycleType { cycles, class_size }
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// `z_λ = Π_i i^{m_i} m_i!`, the order of the centralizer of a permutation of cycle type `λ`.
pub fn centralizer_order(cycles: &Partition) -> BigUint {
    let mut z = BigUint::one();
    for (i, &m) in cycles.multiplicities().iter().enumerate().skip(1) {
        z *= BigUint::from(i).pow(m as u32) * factorial(m);
    }
    z
}

/// `n! / Π μ_i!`: the number of cosets of the Young subgroup `S_μ`.
pub fn multinomial(parts: &[usize]) -> BigUint {
    let n: usize = parts.iter().sum();
    parts
        .iter()
        .fold(factorial(n), |acc, &p| acc / factorial(p))
}

pub fn partitions_of(n: usize) -> Result<Vec<Partition>> {
    partitions_of_capped(n, DEFAULT_PARTITION_CAP)
}

/// All partitions of `n` in reverse lexicographic order: `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.
pub fn partitions_of_capped(n: usize, cap: usize) -> Result<Vec<Partition>> {
    check_limit("partition size", n as u128, cap as u128)?;
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    fn rec(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p);
            rec(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    rec(n, n, &mut prefix, &mut out);
    Ok(out)
}

/// Dominance order: `mu ⪰ nu` iff every prefix sum of `mu` is at least that of `nu`.
pub fn dominates(mu: &Partition, nu: &Partition) -> Result<bool> {
    if mu.n() != nu.n() {
        return Err(Error::Domain(format!(
            "dominance needs equal sizes, got |{mu}| = {} and |{nu}| = {}",
            mu.n(),
            nu.n()
        )));
    }
    let (mut a, mut b) = (0, 0);
    for r in 0..mu.len().max(nu.len()) {
        a += mu.part(r);
        b += nu.part(r);
        if a < b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dimension `d_λ` of the Specht module, by the hook length formula.
pub fn dim_irrep(lambda: &Partition) -> BigUint {
    let mut hooks = BigUint::one();
    for (row, &len) in lambda.parts().iter().enumerate() {
        for col in 0..len {
            hooks *= lambda.hook(row, col);
        }
    }
    factorial(lambda.n()) / hooks
}

/// `d_λ` as a machine integer; panics past `u64`, which needs `n` well beyond every cap here.
pub fn dim_u64(lambda: &Partition) -> u64 {
    u64::try_from(dim_irrep(lambda)).expect("irrep dimension exceeds u64")
}

/// Conjugacy classes of `S_n`, one per partition, in [`partitions_of`] order.
pub fn conjugacy_classes(n: usize) -> Result<Vec<CycleType>> {
    Ok(partitions_of(n)?.into_iter().map(CycleType::new).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;
    use std::collections::HashMap;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    /// Independent count: compositions-free recursion on the largest part.
    fn brute_count(n: usize, max: usize) -> usize {
        if n == 0 {
            return 1;
        }
        (1..=n.min(max)).map(|k| brute_count(n - k, k)).sum()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(partitions_of(0).unwrap(), vec![Partition::empty()]);
        let four: Vec<String> = partitions_of(4)
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(four, ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
        assert_eq!(partitions_of(10).unwrap().len(), 42);
        for n in 0..=15 {
            assert_eq!(partitions_of(n).unwrap().len(), brute_count(n, n));
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            partitions_of(41),
            Err(Error::SizeLimit { limit: 40, got: 41, .. })
        ));
        assert_eq!(partitions_of_capped(45, 50).unwrap().len(), 89134);
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(p("3,1"), p("(3,1)"));
        assert_eq!(p("(3,1)").to_string(), "(3,1)");
        assert_eq!(p("3,1,0,0").parts(), &[3, 1]);
        assert_eq!(p("()"), Partition::empty());
        assert!("1,3".parse::<Partition>().is_err());
        assert!("3,x".parse::<Partition>().is_err());
        assert!("2,0,1".parse::<Partition>().is_err());
    }

    #[test]
    fn dominance_examples() {
        assert!(dominates(&p("4"), &p("4")).unwrap());
        assert!(dominates(&p("3,1"), &p("2,2")).unwrap());
        assert!(!dominates(&p("2,2"), &p("3,1")).unwrap());
        assert!(dominates(&p("3"), &p("2,1,1")).is_err());
    }

    #[test]
    fn dominance_is_a_partial_order() {
        for n in 0..=8 {
            let ps = partitions_of(n).unwrap();
            for a in &ps {
                assert!(dominates(a, a).unwrap());
                for b in &ps {
                    let ab = dominates(a, b).unwrap();
                    if ab && dominates(b, a).unwrap() {
                        assert_eq!(a, b);
                    }
                    for c in &ps {
                        if ab && dominates(b, c).unwrap() {
                            assert!(dominates(a, c).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dim_irrep(&p("7")), BigUint::one());
        assert_eq!(dim_irrep(&p("2,1")), BigUint::from(2u32));
        assert_eq!(dim_irrep(&p("3,2,1")), BigUint::from(16u32));
    }

    #[test]
    fn regular_representation_dimension_count() {
        for n in 0..=10 {
            let sum: BigUint = partitions_of(n)
                .unwrap()
                .iter()
                .map(|l| dim_irrep(l).pow(2))
                .sum();
            assert_eq!(sum, factorial(n), "n = {n}");
        }
    }

    #[test]
    fn dimension_is_conjugation_invariant() {
        for n in 0..=10 {
            for l in partitions_of(n).unwrap() {
                assert_eq!(dim_irrep(&l), dim_irrep(&l.conjugate()));
                assert_eq!(l.conjugate().conjugate(), l);
            }
        }
    }

    #[test]
    fn class_examples() {
        let c3 = conjugacy_classes(3).unwrap();
        let got: Vec<(String, u32)> = c3
            .iter()
            .map(|c| (c.cycles.to_string(), u32::try_from(&c.class_size).unwrap()))
            .collect();
        assert_eq!(
            got,
            [("(3)".into(), 2), ("(2,1)".into(), 3), ("(1,1,1)".into(), 1)]
        );
        let c1 = conjugacy_classes(1).unwrap();
        assert_eq!(c1.len(), 1);
        assert_eq!(c1[0].class_size, BigUint::one());
        let c5 = conjugacy_classes(5).unwrap();
        assert_eq!(c5.len(), 7);
        let total: BigUint = c5.iter().map(|c| c.class_size.clone()).sum();
        assert_eq!(total, BigUint::from(120u32));
    }

    #[test]
    fn class_sizes_match_brute_force() {
        for n in 0..=8 {
            let total: BigUint = conjugacy_classes(n)
                .unwrap()
                .iter()
                .map(|c| c.class_size.clone())
                .sum();
            assert_eq!(total, factorial(n));
        }
        for n in 1..=6 {
            let mut counts: HashMap<Partition, u64> = HashMap::new();
            for perm in Permutation::all(n) {
                *counts.entry(perm.cycle_type()).or_default() += 1;
            }
            for c in conjugacy_classes(n).unwrap() {
                assert_eq!(BigUint::from(counts[&c.cycles]), c.class_size);
            }
        }
    }

    #[test]
    fn box_moves() {
        let l = p("3,2,1");
        assert_eq!(l.removable_rows(), vec![0, 1, 2]);
        assert_eq!(l.addable_rows(), vec![0, 1, 2, 3]);
        assert_eq!(l.remove_box(2).unwrap(), p("3,2"));
        assert_eq!(p("2,2").remove_box(0), None);
        assert_eq!(p("2,2").add_box(2).unwrap(), p("2,2,1"));
    }

    #[test]
    fn serde_uses_plain_arrays() {
        let l = p("3,1");
        assert_eq!(serde_json::to_string(&l).unwrap(), "[3,1]");
        let back: Partition = serde_json::from_str("[3,1]").unwrap();
        assert_eq!(back, l);
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }

    #[test]
    fn composition_basics() {
        let c: Composition = "1,2,1".parse().unwrap();
        assert_eq!(c.n(), 4);
        assert_eq!(c.sorted(), p("2,1,1"));
        assert!(Composition::new(vec![1, 0]).is_err());
        assert_eq!(multinomial(&[2, 1, 1]), BigUint::from(12u32));
    }
}
