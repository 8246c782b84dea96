//! Young's orthogonal form.
//!
//! The basis of `S^λ` is the set of standard tableaux in last-letter order, so
//! restricting to `S_{n-1}` gives a block-diagonal matrix whose blocks are the
//! irreps of `branching_list(λ)` in order, with no change of basis.
//!
//! Generator `s_i` (0-based) swaps points `i` and `i + 1`, i.e. the entries
//! `i + 1` and `i + 2` of a tableau. With axial distance
//! `r = c(i + 2) - c(i + 1)` where `c = col - row`:
//!
//! ```text
//! s_i e_T = (1/r) e_T + sqrt(1 - 1/r²) e_{T'}
//! ```
//!
//! where `T'` is `T` with the two entries swapped (absent when `|r| = 1`).

use std::collections::{HashMap, VecDeque};

use nalgebra::DMatrix;
use num_traits::ToPrimitive;

use crate::error::{check_limit, Error, Result};
use crate::partitions::{dim_irrep, Composition, Partition};
use crate::perm::Permutation;
use crate::tableaux::{standard_tableaux_capped, Tableau};

/// Largest irrep dimension built densely.
pub const DEFAULT_DENSE_CAP: usize = 2000;

/// Largest group enumerated for projectors.
pub const DEFAULT_GROUP_CAP: usize = 10_000;

/// Distance from an integer tolerated when rounding a multiplicity.
pub const ROUNDING_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone)]
struct SparseGenerator {
    diag: Vec<f64>,
    partner: Vec<Option<(usize, f64)>>,
}

#[derive(Debug, Clone)]
pub struct OrthogonalRep {
    lambda: Partition,
    basis: Vec<Tableau>,
    generators: Vec<DMatrix<f64>>,
    sparse: Vec<SparseGenerator>,
}

pub fn build_rep(lambda: &Partition) -> Result<OrthogonalRep> {
    build_rep_capped(lambda, DEFAULT_DENSE_CAP)
}

pub fn build_rep_capped(lambda: &Partition, cap: usize) -> Result<OrthogonalRep> {
    let d = dim_irrep(lambda).to_u128().unwrap_or(u128::MAX);
    check_limit("irrep dimension", d, cap as u128)?;
    let basis = standard_tableaux_capped(lambda, cap as u64)?;
    let index: HashMap<&[Vec<u32>], usize> = basis
        .iter()
        .enumerate()
        .map(|(k, t)| (t.rows(), k))
        .collect();
    let n = lambda.n();
    let d = basis.len();
    let mut generators = Vec::with_capacity(n.saturating_sub(1));
    let mut sparse = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n.saturating_sub(1) {
        let (a, b) = (i as u32 + 1, i as u32 + 2);
        let mut g = SparseGenerator {
            diag: vec![0.0; d],
            partner: vec![None; d],
        };
        for (k, t) in basis.iter().enumerate() {
            let (ra, ca) = t.position_of(a).expect("entry present");
            let (rb, cb) = t.position_of(b).expect("entry present");
            let r = (cb as i64 - rb as i64) - (ca as i64 - ra as i64);
            let inv = 1.0 / r as f64;
            g.diag[k] = inv;
            if ra != rb && ca != cb {
                let mut rows = t.rows().to_vec();
                rows[ra][ca] = b;
                rows[rb][cb] = a;
                let j = index[rows.as_slice()];
                g.partner[k] = Some((j, (1.0 - inv * inv).sqrt()));
            }
        }
        let mut m = DMatrix::zeros(d, d);
        for k in 0..d {
            m[(k, k)] = g.diag[k];
            if let Some((j, v)) = g.partner[k] {
                m[(j, k)] = v;
            }
        }
        generators.push(m);
        sparse.push(g);
    }
    Ok(OrthogonalRep {
        lambda: lambda.clone(),
        basis,
        generators,
        sparse,
    })
}

impl OrthogonalRep {
    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn n(&self) -> usize {
        self.lambda.n()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Tableau] {
        &self.basis
    }

    /// Matrix of `s_i`, the transposition of points `i` and `i + 1`.
    pub fn generator(&self, i: usize) -> &DMatrix<f64> {
        &self.generators[i]
    }

    pub fn generators(&self) -> &[DMatrix<f64>] {
        &self.generators
    }

    /// `M_i · x`.
    pub fn left_apply(&self, i: usize, x: &DMatrix<f64>) -> DMatrix<f64> {
        let g = &self.sparse[i];
        DMatrix::from_fn(x.nrows(), x.ncols(), |k, c| {
            let mut v = g.diag[k] * x[(k, c)];
            if let Some((j, off)) = g.partner[k] {
                v += off * x[(j, c)];
            }
            v
        })
    }

    /// `x · M_i`.
    pub fn right_apply(&self, x: &DMatrix<f64>, i: usize) -> DMatrix<f64> {
        let g = &self.sparse[i];
        DMatrix::from_fn(x.nrows(), x.ncols(), |r, k| {
            let mut v = g.diag[k] * x[(r, k)];
            if let Some((j, off)) = g.partner[k] {
                v += off * x[(r, j)];
            }
            v
        })
    }
}

/// `R(σ)` as the product of generator matrices along a reduced word of `σ`.
pub fn rep_of_permutation(rep: &OrthogonalRep, sigma: &Permutation) -> Result<DMatrix<f64>> {
    if sigma.degree() != rep.n() {
        return Err(Error::Domain(format!(
            "permutation of degree {} in a representation of S_{}",
            sigma.degree(),
            rep.n()
        )));
    }
    let mut m = DMatrix::identity(rep.dim(), rep.dim());
    for &i in sigma.adjacent_word().iter().rev() {
        m = rep.left_apply(i, &m);
    }
    Ok(m)
}

/// Matrices of every element of the subgroup generated by the given adjacent
/// transpositions, sorted by one-line notation.
pub fn generated_matrices(
    rep: &OrthogonalRep,
    gens: &[usize],
) -> Result<Vec<(Permutation, DMatrix<f64>)>> {
    let n = rep.n();
    let id = Permutation::identity(n);
    let mut seen: HashMap<Permutation, usize> = HashMap::new();
    let mut out = vec![(id.clone(), DMatrix::identity(rep.dim(), rep.dim()))];
    seen.insert(id, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for &i in gens {
            let h = out[k].0.compose(&Permutation::transposition(n, i, i + 1));
            if seen.contains_key(&h) {
                continue;
            }
            check_limit("group order", out.len() as u128 + 1, DEFAULT_GROUP_CAP as u128)?;
            let m = rep.right_apply(&out[k].1, i);
            seen.insert(h.clone(), out.len());
            queue.push_back(out.len());
            out.push((h, m));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Matrices of all of `S_n`, in lexicographic order.
pub fn all_matrices(rep: &OrthogonalRep) -> Result<Vec<(Permutation, DMatrix<f64>)>> {
    let gens: Vec<usize> = (0..rep.n().saturating_sub(1)).collect();
    generated_matrices(rep, &gens)
}

/// Adjacent transpositions generating the Young subgroup with these blocks.
pub fn young_generators(blocks: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut start = 0;
    for &b in blocks {
        gens.extend(start..start + b.saturating_sub(1));
        start += b;
    }
    gens
}

/// Irreps of `S_{n-1}` in the restriction of `λ`, ordered by the row the box
/// is removed from.
pub fn branching_list(lambda: &Partition) -> Vec<Partition> {
    lambda
        .removable_rows()
        .into_iter()
        .filter_map(|r| lambda.remove_box(r))
        .collect()
}

/// Each entry of `branching_list(λ)` with the index of its first basis vector.
pub fn branching_offsets(lambda: &Partition) -> Vec<(Partition, usize)> {
    let mut offset = 0;
    branching_list(lambda)
        .into_iter()
        .map(|nu| {
            let here = offset;
            offset += dim_irrep(&nu).to_usize().expect("dimension fits usize");
            (nu, here)
        })
        .collect()
}

/// `Π = (d/|F|) Σ_f χ(f⁻¹) T(f)`; `label_chars[k]` is `χ` at the inverse of the `k`-th element.
pub fn isotypic_projector(
    matrices: &[DMatrix<f64>],
    label_chars: &[f64],
    d_label: usize,
) -> DMatrix<f64> {
    let size = matrices.first().map_or(0, |m| m.nrows());
    let mut p = DMatrix::zeros(size, size);
    for (m, &c) in matrices.iter().zip(label_chars) {
        p += m * c;
    }
    p * (d_label as f64 / matrices.len() as f64)
}

/// `Tr(Π)/d` from the traces of `T(f)`.
pub fn isotypic_projector_multiplicity(
    traces: &[f64],
    label_chars: &[f64],
    d_label: usize,
) -> Result<u64> {
    check_limit("group order", traces.len() as u128, DEFAULT_GROUP_CAP as u128)?;
    let sum: f64 = traces.iter().zip(label_chars).map(|(t, c)| t * c).sum();
    let trace_pi = d_label as f64 * sum / traces.len() as f64;
    round_multiplicity(trace_pi / d_label as f64)
}

pub fn round_multiplicity(x: f64) -> Result<u64> {
    let r = x.round();
    if (x - r).abs() > ROUNDING_TOLERANCE || r < 0.0 {
        return Err(Error::Numerical(format!(
            "multiplicity {x} is not a nonnegative integer"
        )));
    }
    Ok(r as u64)
}

/// Traces of `R^λ` on all of `S_n`, keyed by permutation.
pub fn trace_table(lambda: &Partition) -> Result<HashMap<Permutation, f64>> {
    let rep = build_rep(lambda)?;
    Ok(all_matrices(&rep)?
        .into_iter()
        .map(|(p, m)| (p, m.trace()))
        .collect())
}

/// Multiplicity of `α_1 ⊗ α_2 ⊗ ...` in `ν` restricted to a Young subgroup, by
/// projecting; both the restricted representation and the label character
/// come from orthogonal-form matrices.
pub fn restriction_via_projector(
    nu: &Partition,
    blocks: &Composition,
    alpha: &[Partition],
) -> Result<u64> {
    if nu.n() != blocks.n() || alpha.len() != blocks.len() {
        return Err(Error::Domain(format!(
            "label {alpha:?} does not match {nu} restricted to S_{blocks}"
        )));
    }
    for (a, &b) in alpha.iter().zip(blocks.parts()) {
        if a.n() != b {
            return Err(Error::Domain(format!("label {a} does not partition block size {b}")));
        }
    }
    let rep = build_rep(nu)?;
    let elements = generated_matrices(&rep, &young_generators(blocks.parts()))?;
    let tables = alpha.iter().map(trace_table).collect::<Result<Vec<_>>>()?;
    let mut traces = Vec::with_capacity(elements.len());
    let mut chars = Vec::with_capacity(elements.len());
    for (f, m) in &elements {
        traces.push(m.trace());
        let inv = f.inverse();
        let mut offset = 0;
        let mut c = 1.0;
        for (table, &b) in tables.iter().zip(blocks.parts()) {
            let piece = inv.restrict(offset, b).expect("element preserves blocks");
            c *= table[&piece];
            offset += b;
        }
        chars.push(c);
    }
    let d_label: usize = alpha
        .iter()
        .map(|a| dim_irrep(a).to_usize().expect("dimension fits usize"))
        .product();
    isotypic_projector_multiplicity(&traces, &chars, d_label)
}

pub fn kostka_via_projector(lambda: &Partition, mu: &Composition) -> Result<u64> {
    let trivial: Vec<Partition> = mu.parts().iter().map(|&m| Partition::row(m)).collect();
    restriction_via_projector(lambda, mu, &trivial)
}

pub fn lr_via_projector(nu: &Partition, lambda: &Partition, mu: &Partition) -> Result<u64> {
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
    restriction_via_projector(nu, &Composition::new(blocks)?, &alpha)
}

/// Multiplicity of `ν` in `λ ⊗ μ`; the traces of the tensor representation
/// are products of orthogonal-form traces.
pub fn kronecker_via_projector(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
    let n = lambda.n();
    if mu.n() != n || nu.n() != n {
        return Err(Error::Domain(format!(
            "kronecker needs three partitions of one n, got {lambda}, {mu}, {nu}"
        )));
    }
    let traces_of = |p: &Partition| -> Result<Vec<f64>> {
        let rep = build_rep(p)?;
        Ok(all_matrices(&rep)?.iter().map(|(_, m)| m.trace()).collect())
    };
    let (a, b, c) = (traces_of(lambda)?, traces_of(mu)?, traces_of(nu)?);
    let tensor: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
    // characters of S_n are real and constant on g and g⁻¹
    let d = dim_irrep(nu).to_usize().expect("dimension fits usize");
    isotypic_projector_multiplicity(&tensor, &c, d)
}

/// `χ^λ` on the class with these cycle lengths, as a rounded matrix trace.
pub fn character_via_trace(lambda: &Partition, cycles: &Partition) -> Result<i64> {
    let rep = build_rep(lambda)?;
    let t = rep_of_permutation(&rep, &Permutation::of_cycle_type(cycles))?.trace();
    let r = t.round();
    if (t - r).abs() > ROUNDING_TOLERANCE {
        return Err(Error::Numerical(format!("trace {t} is not an integer")));
    }
    Ok(r as i64)
}

pub fn max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).abs().max()
}
