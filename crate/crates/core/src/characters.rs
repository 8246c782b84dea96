//! Exact characters of `S_n` by the Murnaghan–Nakayama rule, and the
//! character-formula backends for Kostka, Littlewood-Richardson and Kronecker
//! coefficients.
//!
//! Everything here is arbitrary-precision integer arithmetic; class-weighted
//! sums are divided by the group order only at the end and the division is
//! checked to be exact.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_limit, Error, Result};
use crate::partitions::{
    conjugacy_classes, factorial, partitions_of, Composition, CycleType, Partition,
};

/// Largest `n` for a full character table.
pub const DEFAULT_TABLE_CAP: usize = 20;

/// Largest `n` for single-coefficient queries.
pub const DEFAULT_QUERY_CAP: usize = 30;

/// Memo for Murnaghan–Nakayama, keyed by (partition, remaining cycle lengths).
///
/// Cycles are peeled from the front of the (weakly decreasing) cycle list, so
/// classes sharing a tail share work.
#[derive(Debug, Default)]
pub struct MnCache {
    memo: HashMap<(Partition, Vec<usize>), BigInt>,
}

impl MnCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    /// `χ^λ` on the class with the given cycle lengths (any order).
    pub fn character(&mut self, lambda: &Partition, cycles: &Partition) -> Result<BigInt> {
        if lambda.n() != cycles.n() {
            return Err(Error::Domain(format!(
                "character of {lambda} (size {}) on cycle type {cycles} (size {})",
                lambda.n(),
                cycles.n()
            )));
        }
        Ok(self.eval(lambda, cycles.parts()))
    }

    fn eval(&mut self, lambda: &Partition, cycles: &[usize]) -> BigInt {
        let Some((&k, rest)) = cycles.split_first() else {
            return BigInt::one();
        };
        let key = (lambda.clone(), cycles.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for (smaller, sign) in rim_hook_removals(lambda, k) {
            let v = self.eval(&smaller, rest);
            if sign {
                total -= v;
            } else {
                total += v;
            }
        }
        self.memo.insert(key, total.clone());
        total
    }
}

/// Every way to remove a rim hook of length `k`: the remaining partition and
/// whether the hook has odd height (negative sign).
fn rim_hook_removals(lambda: &Partition, k: usize) -> Vec<(Partition, bool)> {
    let len = lambda.len();
    // beta-set: first-column hook lengths, strictly decreasing
    let beta: Vec<usize> = (0..len).map(|i| lambda.part(i) + len - 1 - i).collect();
    let mut out = Vec::new();
    for (i, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let crossed = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beta.clone();
        moved[i] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let parts = (0..len).map(|j| moved[j] - (len - 1 - j)).collect();
        out.push((Partition::from_unsorted(parts), crossed % 2 == 1));
    }
    out
}

/// `χ^λ(γ)` for a single class.
pub fn character(lambda: &Partition, gamma: &Partition) -> Result<BigInt> {
    MnCache::new().character(lambda, gamma)
}

/// Convenience for callers holding a [`CycleType`].
pub fn character_on(lambda: &Partition, class: &CycleType) -> Result<BigInt> {
    character(lambda, &class.cycles)
}

/// The full character table of `S_n`: rows are irreps and columns are classes,
/// both in reverse lexicographic partition order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    n: usize,
    labels: Vec<Partition>,
    classes: Vec<CycleType>,
    rows: Vec<Vec<BigInt>>,
    index: HashMap<Partition, usize>,
}

impl CharacterTable {
    pub fn build(n: usize) -> Result<Self> {
        Self::build_capped(n, DEFAULT_TABLE_CAP)
    }

    pub fn build_capped(n: usize, cap: usize) -> Result<Self> {
        check_limit("character table size", n as u128, cap as u128)?;
        let labels = partitions_of(n)?;
        let classes = conjugacy_classes(n)?;
        let mut cache = MnCache::new();
        let mut rows = Vec::with_capacity(labels.len());
        for lambda in &labels {
            let row = classes
                .iter()
                .map(|c| cache.character(lambda, &c.cycles))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        Ok(CharacterTable {
            n,
            labels,
            classes,
            rows,
            index,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[Partition] {
        &self.labels
    }

    pub fn classes(&self) -> &[CycleType] {
        &self.classes
    }

    pub fn row(&self, lambda: &Partition) -> Result<&[BigInt]> {
        self.index
            .get(lambda)
            .map(|&i| self.rows[i].as_slice())
            .ok_or_else(|| Error::Domain(format!("{lambda} is not a partition of {}", self.n)))
    }

    pub fn value(&self, lambda: &Partition, class: &Partition) -> Result<BigInt> {
        let j = self
            .classes
            .iter()
            .position(|c| &c.cycles == class)
            .ok_or_else(|| Error::Domain(format!("{class} is not a class of S_{}", self.n)))?;
        Ok(self.row(lambda)?[j].clone())
    }

    /// `(1/n!) Σ_γ |γ| Π_k χ_k(γ)` over the given rows; errors on inexact division.
    pub fn class_average(&self, rows: &[&[BigInt]]) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for (j, class) in self.classes.iter().enumerate() {
            let mut term = BigInt::from(class.class_size.clone());
            for r in rows {
                term *= &r[j];
            }
            total += term;
        }
        exact_div(total, &factorial(self.n))
    }

    /// Kronecker coefficient `g_{λμν}` from the table.
    pub fn kronecker(&self, lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
        let g = self.class_average(&[self.row(lambda)?, self.row(mu)?, self.row(nu)?])?;
        to_count(g)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TableJson::from(self)).expect("table serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    n: usize,
    classes: Vec<ClassJson>,
    rows: Vec<RowJson>,
}

#[derive(Serialize, Deserialize)]
struct ClassJson {
    cycles: Partition,
    size: u64,
}

#[derive(Serialize, Deserialize)]
struct RowJson {
    label: Partition,
    values: Vec<i64>,
}

impl From<&CharacterTable> for TableJson {
    fn from(t: &CharacterTable) -> Self {
        TableJson {
            n: t.n,
            classes: t
                .classes
                .iter()
                .map(|c| ClassJson {
                    cycles: c.cycles.clone(),
                    size: c.class_size.to_u64().expect("class size fits u64 under the table cap"),
                })
                .collect(),
            rows: t
                .labels
                .iter()
                .zip(&t.rows)
                .map(|(l, r)| RowJson {
                    label: l.clone(),
                    values: r
                        .iter()
                        .map(|v| v.to_i64().expect("character fits i64 under the table cap"))
                        .collect(),
                })
                .collect(),
        }
    }
}

fn exact_div(total: BigInt, denom: &BigUint) -> Result<BigInt> {
    let d = BigInt::from(denom.clone());
    let (q, r) = total.div_rem(&d);
    if !r.is_zero() {
        return Err(Error::Numerical(format!(
            "class sum {total} is not divisible by {d}"
        )));
    }
    Ok(q)
}

fn to_count(v: BigInt) -> Result<u64> {
    if v.is_negative() {
        return Err(Error::Numerical(format!("negative multiplicity {v}")));
    }
    v.to_u64()
        .ok_or_else(|| Error::Numerical(format!("multiplicity {v} exceeds u64")))
}

/// Kronecker coefficient by the character formula
/// `g_{λμν} = (1/n!) Σ_γ |γ| χ^λ(γ) χ^μ(γ) χ^ν(γ)`.
pub fn kronecker(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
    let n = lambda.n();
    if mu.n() != n || nu.n() != n {
        return Err(Error::Domain(format!(
            "kronecker needs three partitions of one n, got {lambda}, {mu}, {nu}"
        )));
    }
    check_limit("kronecker size", n as u128, DEFAULT_QUERY_CAP as u128)?;
    let mut cache = MnCache::new();
    let mut total = BigInt::zero();
    for class in conjugacy_classes(n)? {
        let a = cache.character(lambda, &class.cycles)?;
        if a.is_zero() {
            continue;
        }
        let b = cache.character(mu, &class.cycles)?;
        if b.is_zero() {
            continue;
        }
        let c = cache.character(nu, &class.cycles)?;
        total += BigInt::from(class.class_size) * a * b * c;
    }
    to_count(exact_div(total, &factorial(n))?)
}

/// The Young subgroup `S_{μ_1} × S_{μ_2} × ...` acting on consecutive blocks of points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct YoungSubgroupSpec {
    blocks: Composition,
}

impl YoungSubgroupSpec {
    pub fn new(blocks: Composition) -> Self {
        YoungSubgroupSpec { blocks }
    }

    pub fn blocks(&self) -> &[usize] {
        self.blocks.parts()
    }

    pub fn n(&self) -> usize {
        self.blocks.n()
    }

    pub fn order(&self) -> BigUint {
        self.blocks().iter().map(|&b| factorial(b)).product()
    }

    /// Classes of the subgroup: one cycle type per block, with the class size.
    pub fn classes(&self) -> Result<Vec<(Vec<Partition>, BigUint)>> {
        let mut out: Vec<(Vec<Partition>, BigUint)> = vec![(Vec::new(), BigUint::one())];
        for &b in self.blocks() {
            let block_classes = conjugacy_classes(b)?;
            let mut next = Vec::with_capacity(out.len() * block_classes.len());
            for (cycles, size) in &out {
                for c in &block_classes {
                    let mut cs = cycles.clone();
                    cs.push(c.cycles.clone());
                    next.push((cs, size * &c.class_size));
                }
            }
            out = next;
        }
        Ok(out)
    }
}

/// Cycle type in `S_n` of an element of a Young subgroup with the given block cycle types.
pub fn embedded_cycle_type(block_cycles: &[Partition]) -> Partition {
    Partition::from_unsorted(
        block_cycles
            .iter()
            .flat_map(|c| c.parts().iter().copied())
            .collect(),
    )
}

/// Multiplicity of the irrep `α_1 ⊗ α_2 ⊗ ...` of `S_μ` in `χ^ν` restricted to `S_μ`,
/// evaluated class by class.
pub fn restriction_multiplicity(
    nu: &Partition,
    subgroup: &YoungSubgroupSpec,
    alpha: &[Partition],
) -> Result<u64> {
    if nu.n() != subgroup.n() {
        return Err(Error::Domain(format!(
            "{nu} is not a partition of {}",
            subgroup.n()
        )));
    }
    if alpha.len() != subgroup.blocks().len() {
        return Err(Error::Domain(format!(
            "{} labels for {} blocks",
            alpha.len(),
            subgroup.blocks().len()
        )));
    }
    for (a, &b) in alpha.iter().zip(subgroup.blocks()) {
        if a.n() != b {
            return Err(Error::Domain(format!("label {a} does not partition block size {b}")));
        }
    }
    check_limit("restriction size", nu.n() as u128, DEFAULT_QUERY_CAP as u128)?;
    let mut cache = MnCache::new();
    let mut total = BigInt::zero();
    for (cycles, size) in subgroup.classes()? {
        let mut term = BigInt::from(size);
        for (a, c) in alpha.iter().zip(&cycles) {
            term *= cache.character(a, c)?;
            if term.is_zero() {
                break;
            }
        }
        if term.is_zero() {
            continue;
        }
        term *= cache.character(nu, &embedded_cycle_type(&cycles))?;
        total += term;
    }
    to_count(exact_div(total, &subgroup.order())?)
}

/// `c^ν_{λμ}` as the multiplicity of `λ ⊗ μ` in `ν` restricted to `S_|λ| × S_|μ|`.
pub fn lr_via_characters(nu: &Partition, lambda: &Partition, mu: &Partition) -> Result<u64> {
    if nu.n() != lambda.n() + mu.n() {
        return Err(Error::Domain(format!(
            "LR coefficient needs |ν| = |λ| + |μ|, got {} vs {} + {}",
            nu.n(),
            lambda.n(),
            mu.n()
        )));
    }
    let (blocks, alpha): (Vec<usize>, Vec<Partition>) = [lambda, mu]
        .into_iter()
        .filter(|p| !p.is_empty())
        .map(|p| (p.n(), p.clone()))
        .unzip();
    if blocks.is_empty() {
        return Ok(1);
    }
    restriction_multiplicity(nu, &YoungSubgroupSpec::new(Composition::new(blocks)?), &alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::dim_irrep;
    use crate::tableaux::{kostka, lr_coefficient};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn young(s: &str) -> YoungSubgroupSpec {
        YoungSubgroupSpec::new(s.parse().unwrap())
    }

    #[test]
    fn character_examples() {
        for n in 1..=6 {
            for c in conjugacy_classes(n).unwrap() {
                assert_eq!(character(&Partition::row(n), &c.cycles).unwrap(), BigInt::one());
                let sign = if (n - c.cycles.len()) % 2 == 0 { 1 } else { -1 };
                assert_eq!(
                    character(&Partition::column(n), &c.cycles).unwrap(),
                    BigInt::from(sign)
                );
            }
        }
        let row: Vec<i64> = ["1,1,1", "2,1", "3"]
            .iter()
            .map(|g| character(&p("2,1"), &p(g)).unwrap().to_i64().unwrap())
            .collect();
        assert_eq!(row, [2, 0, -1]);
        assert!(character(&p("2,1"), &p("2,2")).is_err());
    }

    #[test]
    fn table_orthogonality_and_dimensions() {
        for n in 1..=8 {
            let t = CharacterTable::build(n).unwrap();
            for a in t.labels() {
                let id = p(&vec!["1"; n].join(","));
                assert_eq!(t.value(a, &id).unwrap(), BigInt::from(dim_irrep(a)));
                for b in t.labels() {
                    let ip = t.class_average(&[t.row(a).unwrap(), t.row(b).unwrap()]).unwrap();
                    assert_eq!(ip, BigInt::from((a == b) as i32), "rows {a} {b}");
                }
            }
            // column orthogonality: Σ_λ χ^λ(γ)χ^λ(δ) = δ_{γδ} z_γ
            for (j, cj) in t.classes().iter().enumerate() {
                for (k, _) in t.classes().iter().enumerate() {
                    let s: BigInt = t.labels().iter().map(|l| {
                        let r = t.row(l).unwrap();
                        &r[j] * &r[k]
                    }).sum();
                    let expect = if j == k {
                        BigInt::from(crate::partitions::centralizer_order(&cj.cycles))
                    } else {
                        BigInt::zero()
                    };
                    assert_eq!(s, expect);
                }
            }
        }
    }

    #[test]
    fn table_rows_for_trivial_and_sign() {
        let t = CharacterTable::build(5).unwrap();
        assert!(t.row(&p("5")).unwrap().iter().all(|v| v.is_one()));
        for (j, c) in t.classes().iter().enumerate() {
            let sign = if (5 - c.cycles.len()) % 2 == 0 { 1 } else { -1 };
            assert_eq!(t.row(&p("1,1,1,1,1")).unwrap()[j], BigInt::from(sign));
        }
        assert!(CharacterTable::build(21).is_err());
    }

    #[test]
    fn table_json_layout() {
        let json = CharacterTable::build(3).unwrap().to_json();
        assert_eq!(
            json,
            serde_json::json!({
                "n": 3,
                "classes": [
                    {"cycles": [3], "size": 2},
                    {"cycles": [2, 1], "size": 3},
                    {"cycles": [1, 1, 1], "size": 1}
                ],
                "rows": [
                    {"label": [3], "values": [1, 1, 1]},
                    {"label": [2, 1], "values": [-1, 0, 2]},
                    {"label": [1, 1, 1], "values": [1, -1, 1]}
                ]
            })
        );
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(&p("2,1"), &p("2,1"), &p("2,1")).unwrap(), 1);
        for n in 1..=6 {
            let ps = partitions_of(n).unwrap();
            for a in &ps {
                for b in &ps {
                    assert_eq!(
                        kronecker(a, b, &Partition::row(n)).unwrap(),
                        (a == b) as u64
                    );
                }
            }
        }
        assert!(kronecker(&p("2,1"), &p("2"), &p("3")).is_err());
    }

    #[test]
    fn kronecker_symmetry_and_dimension_sum() {
        for n in 1..=6 {
            let t = CharacterTable::build(n).unwrap();
            let ps = t.labels();
            for a in ps {
                for b in ps {
                    let mut sum = BigUint::zero();
                    for c in ps {
                        let g = t.kronecker(a, b, c).unwrap();
                        for (x, y, z) in [(a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                            assert_eq!(t.kronecker(x, y, z).unwrap(), g);
                        }
                        sum += dim_irrep(c) * g;
                    }
                    assert_eq!(sum, dim_irrep(a) * dim_irrep(b));
                }
            }
        }
    }

    #[test]
    fn restriction_examples() {
        for mu in ["3", "2,1", "1,1,1", "1,2"] {
            let s = young(mu);
            let triv: Vec<Partition> = s.blocks().iter().map(|&b| Partition::row(b)).collect();
            assert_eq!(restriction_multiplicity(&p("3"), &s, &triv).unwrap(), 1);
        }
        let s51 = young("5,1");
        for a in partitions_of(5).unwrap() {
            let m = restriction_multiplicity(&p("3,2,1"), &s51, &[a.clone(), p("1")]).unwrap();
            let expected = ["2,2,1", "3,1,1", "3,2"].contains(&a.to_string().trim_matches(|c| c == '(' || c == ')'));
            assert_eq!(m, expected as u64, "α = {a}");
        }
        assert_eq!(
            restriction_multiplicity(&p("3,1"), &young("2,1,1"), &[p("2"), p("1"), p("1")]).unwrap(),
            2
        );
        assert!(restriction_multiplicity(&p("3,1"), &young("2,2"), &[p("2")]).is_err());
        assert!(restriction_multiplicity(&p("3,1"), &young("2,2"), &[p("2"), p("1")]).is_err());
    }

    #[test]
    fn restriction_agrees_with_kostka() {
        for n in 1..=7 {
            for nu in partitions_of(n).unwrap() {
                for mu in partitions_of(n).unwrap() {
                    let s = YoungSubgroupSpec::new(Composition::from(&mu));
                    let triv: Vec<Partition> = mu.parts().iter().map(|&b| Partition::row(b)).collect();
                    assert_eq!(
                        restriction_multiplicity(&nu, &s, &triv).unwrap(),
                        kostka(&nu, &Composition::from(&mu)).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn lr_examples_and_backend_agreement() {
        assert_eq!(lr_via_characters(&p("2,1"), &p("1"), &p("2")).unwrap(), 1);
        for n in 1..=6 {
            for a in 0..=n {
                assert_eq!(lr_via_characters(&Partition::row(n), &Partition::row(a), &Partition::row(n - a)).unwrap(), 1);
            }
        }
        assert_eq!(
            lr_via_characters(&p("5,3,1"), &p("3,1"), &p("2,2,1")).unwrap(),
            lr_coefficient(&p("5,3,1"), &p("3,1"), &p("2,2,1")).unwrap()
        );
        for n in 1..=7 {
            for nu in partitions_of(n).unwrap() {
                for a in 0..=n {
                    for l in partitions_of(a).unwrap() {
                        for m in partitions_of(n - a).unwrap() {
                            let c = lr_via_characters(&nu, &l, &m).unwrap();
                            assert_eq!(c, lr_coefficient(&nu, &l, &m).unwrap());
                            assert_eq!(c, lr_via_characters(&nu, &m, &l).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rim_hooks_of_small_shapes() {
        // (2,2): horizontal domino leaves (2), vertical domino leaves (1,1) with height 1
        let got = rim_hook_removals(&p("2,2"), 2);
        assert_eq!(got.len(), 2);
        assert!(got.contains(&(p("2"), false)));
        assert!(got.contains(&(p("1,1"), true)));
        assert!(rim_hook_removals(&p("2,1"), 2).is_empty());
        assert!(rim_hook_removals(&p("3,1"), 3).is_empty());
    }
}
