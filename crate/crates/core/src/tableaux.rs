//! Young tableaux: standard and semistandard enumeration, Kostka numbers,
//! Yamanouchi words and the Littlewood-Richardson rule.
//!
//! Semistandard tableaux are generated by the corner-filling breadth-first
//! procedure: starting from the empty diagram, the largest value still owed by
//! the content is written into every *corner* (an empty box whose right and
//! lower neighbours are absent or already filled), partial fillings that break
//! the semistandard conditions are dropped, and duplicate states are merged.
//! After `n` rounds the surviving states are exactly the SSYT of the requested
//! shape and content.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{check_limit, Error, Result};
use crate::partitions::{dim_irrep, dominates, Composition, Partition};

/// Bound on the number of live states in one round of [`generate_ssyt`].
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// Bound on `d_λ` for exhaustive standard-tableau enumeration.
pub const DEFAULT_SYT_CAP: u64 = 100_000;

/// The diagram `outer / inner`; `inner` is empty for ordinary (straight) shapes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(Error::Domain(format!("{inner} does not fit inside {outer}")));
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn straight(outer: Partition) -> Self {
        SkewShape {
            outer,
            inner: Partition::empty(),
        }
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn size(&self) -> usize {
        self.outer.n() - self.inner.n()
    }

    pub fn contains_box(&self, row: usize, col: usize) -> bool {
        col < self.outer.part(row) && col >= self.inner.part(row)
    }
}

/// A (possibly partial) filling of a skew shape. Rows are stored at full outer
/// length; `0` marks a box that is empty or belongs to the inner shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    shape: SkewShape,
    rows: Vec<Vec<u32>>,
}

impl Tableau {
    pub fn empty(shape: SkewShape) -> Self {
        let rows = shape.outer.parts().iter().map(|&len| vec![0; len]).collect();
        Tableau { shape, rows }
    }

    /// A straight-shape tableau from explicit rows.
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        Ok(Tableau {
            shape: SkewShape::straight(shape),
            rows,
        })
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.rows
            .get(row)
            .and_then(|r| r.get(col))
            .copied()
            .unwrap_or(0)
    }

    pub fn set(&mut self, row: usize, col: usize, value: u32) {
        self.rows[row][col] = value;
    }

    /// Counts of each positive value: entry `i` is the number of `i + 1`s.
    pub fn content(&self) -> Vec<usize> {
        let max = self.rows.iter().flatten().copied().max().unwrap_or(0) as usize;
        let mut c = vec![0; max];
        for &v in self.rows.iter().flatten() {
            if v > 0 {
                c[v as usize - 1] += 1;
            }
        }
        c
    }

    /// `(row, col)` of the first box holding `value`.
    pub fn position_of(&self, value: u32) -> Option<(usize, usize)> {
        self.rows.iter().enumerate().find_map(|(r, row)| {
            row.iter().position(|&v| v == value).map(|c| (r, c))
        })
    }

    /// Whether the nonempty boxes weakly increase along rows and strictly down columns.
    pub fn is_semistandard(&self) -> bool {
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v == 0 {
                    continue;
                }
                let right = self.get(r, c + 1);
                if right != 0 && right < v {
                    return false;
                }
                let below = self.get(r + 1, c);
                if below != 0 && below <= v {
                    return false;
                }
            }
        }
        true
    }

    /// Concatenation of the rows read top to bottom, each row right to left.
    pub fn reading_word(&self) -> Vec<u32> {
        self.rows
            .iter()
            .flat_map(|row| row.iter().rev().copied().filter(|&v| v > 0))
            .collect()
    }

    /// Empty boxes whose right and lower neighbours are outside the diagram or filled.
    pub fn corners(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            for c in 0..row.len() {
                if row[c] != 0 || !self.shape.contains_box(r, c) {
                    continue;
                }
                let right_ok = c + 1 >= row.len() || row[c + 1] != 0;
                let below_ok = c >= self.shape.outer.part(r + 1) || self.rows[r + 1][c] != 0;
                if right_ok && below_ok {
                    out.push((r, c));
                }
            }
        }
        out
    }
}

impl fmt::Display for Tableau {
    /// Bracketed rows, e.g. `[[1,1,2],[2,3,3]]`; inner boxes of a skew shape print as `.`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (r, row) in self.rows.iter().enumerate() {
            if r > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (c, v) in row.iter().enumerate() {
                if c > 0 {
                    write!(f, ",")?;
                }
                if c < self.shape.inner.part(r) {
                    write!(f, ".")?;
                } else {
                    write!(f, "{v}")?;
                }
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Number of standard Young tableaux of shape `lambda`, by peeling removable boxes.
pub fn count_syt(lambda: &Partition) -> BigUint {
    fn rec(l: &Partition, memo: &mut HashMap<Partition, BigUint>) -> BigUint {
        if l.n() <= 1 {
            return BigUint::one();
        }
        if let Some(v) = memo.get(l) {
            return v.clone();
        }
        let total = l
            .removable_rows()
            .into_iter()
            .map(|r| rec(&l.remove_box(r).unwrap(), memo))
            .sum::<BigUint>();
        memo.insert(l.clone(), total.clone());
        total
    }
    rec(lambda, &mut HashMap::new())
}

/// Exhaustive SYT count; errors if `d_λ` exceeds `cap`.
pub fn count_syt_exhaustive(lambda: &Partition, cap: u64) -> Result<usize> {
    Ok(standard_tableaux_capped(lambda, cap)?.len())
}

pub fn standard_tableaux(lambda: &Partition) -> Result<Vec<Tableau>> {
    standard_tableaux_capped(lambda, DEFAULT_SYT_CAP)
}

/// All SYT of shape `lambda` in last-letter order: grouped by the row holding
/// `n` (top row first), recursively for `n - 1`, `n - 2`, ... within each group.
///
/// The group for row `r` is an ordered copy of the tableaux of `λ` minus the
/// last box of row `r`, which is what makes Young's orthogonal form
/// subgroup-adapted along `S_1 ⊂ S_2 ⊂ ... ⊂ S_n`.
pub fn standard_tableaux_capped(lambda: &Partition, cap: u64) -> Result<Vec<Tableau>> {
    let d = dim_irrep(lambda);
    check_limit(
        "standard tableau count",
        d.to_u128().unwrap_or(u128::MAX),
        cap as u128,
    )?;
    Ok(syt_rec(lambda))
}

fn syt_rec(lambda: &Partition) -> Vec<Tableau> {
    let n = lambda.n();
    if n == 0 {
        return vec![Tableau::empty(SkewShape::straight(Partition::empty()))];
    }
    let mut out = Vec::new();
    for r in lambda.removable_rows() {
        let smaller = lambda.remove_box(r).unwrap();
        for t in syt_rec(&smaller) {
            let mut rows = t.rows;
            if r == rows.len() {
                rows.push(Vec::new());
            }
            rows[r].push(n as u32);
            out.push(Tableau {
                shape: SkewShape::straight(lambda.clone()),
                rows,
            });
        }
    }
    out
}

pub fn generate_ssyt(lambda: &Partition, mu: &Composition) -> Result<Vec<Tableau>> {
    generate_ssyt_capped(lambda, mu, DEFAULT_STATE_CAP)
}

/// All semistandard tableaux of shape `lambda` and content `mu`, sorted by
/// row-major entries, produced by the corner-filling procedure.
pub fn generate_ssyt_capped(
    lambda: &Partition,
    mu: &Composition,
    state_cap: usize,
) -> Result<Vec<Tableau>> {
    if lambda.n() != mu.n() {
        return Err(Error::Domain(format!(
            "shape {lambda} has {} boxes but content {mu} sums to {}",
            lambda.n(),
            mu.n()
        )));
    }
    let start = Tableau::empty(SkewShape::straight(lambda.clone()));
    let mut states: BTreeSet<(Tableau, Vec<usize>)> = BTreeSet::new();
    states.insert((start, mu.parts().to_vec()));

    for _ in 0..lambda.n() {
        let mut next = BTreeSet::new();
        for (t, remaining) in &states {
            // largest value still owed
            let Some(m_idx) = remaining.iter().rposition(|&k| k > 0) else {
                continue;
            };
            let m = m_idx as u32 + 1;
            for (r, c) in t.corners() {
                let mut q = t.clone();
                q.set(r, c, m);
                if q.is_semistandard() {
                    let mut rest = remaining.clone();
                    rest[m_idx] -= 1;
                    next.insert((q, rest));
                }
            }
        }
        check_limit("SSYT state set", next.len() as u128, state_cap as u128)?;
        states = next;
    }
    Ok(states.into_iter().map(|(t, _)| t).collect())
}

/// Kostka number `K^μ_λ`: the number of SSYT of shape `lambda` and content `mu`.
pub fn kostka(lambda: &Partition, mu: &Composition) -> Result<u64> {
    if lambda.n() != mu.n() {
        return Err(Error::Domain(format!(
            "kostka needs |λ| = |μ|, got {} and {}",
            lambda.n(),
            mu.n()
        )));
    }
    if !dominates(lambda, &mu.sorted())? {
        return Ok(0);
    }
    Ok(generate_ssyt(lambda, mu)?.len() as u64)
}

/// Whether every prefix has at least as many `i`s as `(i+1)`s, for every `i`.
pub fn is_yamanouchi(word: &[u32]) -> bool {
    let mut counts: Vec<usize> = Vec::new();
    for &v in word {
        if v == 0 {
            return false;
        }
        let i = v as usize - 1;
        if counts.len() <= i {
            counts.resize(i + 1, 0);
        }
        counts[i] += 1;
        if i > 0 && counts[i] > counts[i - 1] {
            return false;
        }
    }
    true
}

/// LR tableaux of shape `nu / lambda` and content `mu`.
pub fn lr_tableaux(nu: &Partition, lambda: &Partition, mu: &Partition) -> Result<Vec<Tableau>> {
    let mut out = Vec::new();
    lr_search(nu, lambda, mu, &mut |t| out.push(t.clone()))?;
    Ok(out)
}

/// Littlewood-Richardson coefficient `c^ν_{λμ}`, counted by the LR rule: skew
/// SSYT of shape `ν/λ`, content `μ`, whose reversed-row reading word is Yamanouchi.
pub fn lr_coefficient(nu: &Partition, lambda: &Partition, mu: &Partition) -> Result<u64> {
    let mut count = 0u64;
    lr_search(nu, lambda, mu, &mut |_| count += 1)?;
    Ok(count)
}

fn lr_search(
    nu: &Partition,
    lambda: &Partition,
    mu: &Partition,
    visit: &mut dyn FnMut(&Tableau),
) -> Result<()> {
    if nu.n() != lambda.n() + mu.n() {
        return Err(Error::Domain(format!(
            "LR coefficient needs |ν| = |λ| + |μ|, got {} vs {} + {}",
            nu.n(),
            lambda.n(),
            mu.n()
        )));
    }
    if !nu.contains(lambda) {
        return Ok(());
    }
    let shape = SkewShape::new(nu.clone(), lambda.clone())?;
    // boxes in reading order: rows top to bottom, right to left
    let cells: Vec<(usize, usize)> = (0..nu.len())
        .flat_map(|r| (lambda.part(r)..nu.part(r)).rev().map(move |c| (r, c)))
        .collect();
    let mut t = Tableau::empty(shape);
    let mut used = vec![0usize; mu.len()];

    fn rec(
        k: usize,
        cells: &[(usize, usize)],
        t: &mut Tableau,
        used: &mut [usize],
        mu: &Partition,
        visit: &mut dyn FnMut(&Tableau),
    ) {
        if k == cells.len() {
            visit(t);
            return;
        }
        let (r, c) = cells[k];
        let right = if t.shape.contains_box(r, c + 1) {
            t.get(r, c + 1)
        } else {
            u32::MAX
        };
        let above = if r > 0 && t.shape.contains_box(r - 1, c) {
            t.get(r - 1, c)
        } else {
            0
        };
        for v in (above + 1)..=(mu.len() as u32).min(right) {
            let i = v as usize - 1;
            if used[i] == mu.part(i) {
                continue;
            }
            if i > 0 && used[i] + 1 > used[i - 1] {
                continue;
            }
            used[i] += 1;
            t.set(r, c, v);
            rec(k + 1, cells, t, used, mu, visit);
            t.set(r, c, 0);
            used[i] -= 1;
        }
    }
    rec(0, &cells, &mut t, &mut used, mu, visit);
    Ok(())
}

/// `Σ_λ K^μ_λ d_λ`, which equals the multinomial `n!/Π μ_i!`.
pub fn permutation_module_dimension(mu: &Composition) -> Result<BigUint> {
    let mut total = BigUint::zero();
    for lambda in crate::partitions::partitions_of(mu.n())? {
        total += dim_irrep(&lambda) * kostka(&lambda, mu)?;
    }
    Ok(total)
}
