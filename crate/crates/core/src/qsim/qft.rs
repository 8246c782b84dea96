//! Fourier transforms over products of symmetric groups.
//!
//! Rows are indexed by `(α, i, j)`: irreps in the canonical label order of
//! [`GroupSpec::labels`], then `(i, j)` row-major. Columns follow
//! [`GroupSpec::elements`].

use std::collections::HashMap;
use std::ops::Range;

use nalgebra::DMatrix;
use num_traits::ToPrimitive;

use super::groups::{GroupSpec, IrrepLabel};
use crate::error::{check_limit, Error, Result};
use crate::partitions::{partitions_of, Partition};
use crate::perm::Permutation;
use crate::yor::{branching_list, branching_offsets, build_rep, rep_of_permutation};

/// Largest group with a dense Fourier matrix.
pub const DEFAULT_QFT_CAP: u128 = 5040;

/// Largest `n` for the embedding isometry.
pub const BEALS_CAP: usize = 6;

/// Row range of each irrep block.
pub fn qft_blocks(g: &GroupSpec) -> Result<Vec<(IrrepLabel, usize, Range<usize>)>> {
    let mut start = 0;
    let mut out = Vec::new();
    for label in g.labels()? {
        let d = g.label_dim(&label)?.to_usize().expect("dimension fits usize");
        out.push((label, d, start..start + d * d));
        start += d * d;
    }
    Ok(out)
}

/// `⟨α,i,j|U|g⟩ = sqrt(d_α/|G|) · r^α(g)_{ij}`.
pub fn qft_matrix(g: &GroupSpec) -> Result<DMatrix<f64>> {
    if g.blocks().is_none() {
        return Err(Error::Unsupported(format!("no Fourier transform for {g}")));
    }
    let order = g.order.to_u128().unwrap_or(u128::MAX);
    check_limit("QFT group order", order, DEFAULT_QFT_CAP)?;
    let size = order as usize;
    let mut u = DMatrix::zeros(size, size);
    for (label, d, rows) in qft_blocks(g)? {
        let scale = (d as f64 / size as f64).sqrt();
        for (col, m) in g.irrep_matrices(&label)?.iter().enumerate() {
            for i in 0..d {
                for j in 0..d {
                    u[(rows.start + i * d + j, col)] = scale * m[(i, j)];
                }
            }
        }
    }
    Ok(u)
}

/// Left regular representation `|h⟩ ↦ |x h⟩` on `ℂ[G]`, for `x` given as a
/// permutation of the same points as `elements`.
pub fn regular_matrix(
    elements: &[Permutation],
    index: &HashMap<Permutation, usize>,
    x: &Permutation,
) -> Result<DMatrix<f64>> {
    let mut m = DMatrix::zeros(elements.len(), elements.len());
    for (col, h) in elements.iter().enumerate() {
        let row = index
            .get(&x.compose(h))
            .ok_or_else(|| Error::Domain(format!("{x} is not in the group")))?;
        m[(*row, col)] = 1.0;
    }
    Ok(m)
}

pub fn element_index(elements: &[Permutation]) -> HashMap<Permutation, usize> {
    elements.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect()
}

/// `⊕_α r^α(x) ⊗ I_{d_α}` in the Fourier basis.
pub fn fourier_block_matrix(g: &GroupSpec, matrices: &[(usize, Vec<DMatrix<f64>>)], col: usize) -> Result<DMatrix<f64>> {
    let size = g.order.to_usize().ok_or_else(|| Error::Domain(format!("{g} is too large")))?;
    let mut out = DMatrix::zeros(size, size);
    let mut start = 0;
    for (d, mats) in matrices {
        let block = mats[col].kronecker(&DMatrix::<f64>::identity(*d, *d));
        out.view_mut((start, start), (d * d, d * d)).copy_from(&block);
        start += d * d;
    }
    Ok(out)
}

/// Position of `ν` in the row-ordered list of `λ` minus one box; 0 if `ν` is
/// not obtained from `λ` that way.
pub fn beals_delta(lambda: &Partition, nu: &Partition) -> usize {
    branching_list(lambda)
        .iter()
        .position(|x| x == nu)
        .unwrap_or(0)
}

/// First basis index of the `ν` block inside `S^λ` restricted to `S_{n-1}`:
/// the total dimension of the entries before `ν` in the branching list.
pub fn beals_offset(lambda: &Partition, nu: &Partition) -> Option<usize> {
    branching_offsets(lambda)
        .into_iter()
        .find(|(x, _)| x == nu)
        .map(|(_, off)| off)
}

/// The isometry `|ν,k,ℓ⟩ ↦ Σ_{λ ≻ ν} sqrt(d_λ / (n d_ν)) |λ, k+o, ℓ+o⟩` from the
/// Fourier basis of `S_{n-1}` to that of `S_n`, with `o = beals_offset(λ, ν)`.
pub fn beals_embedding_map(n: usize) -> Result<DMatrix<f64>> {
    check_limit("embedding size", n as u128, BEALS_CAP as u128)?;
    if n == 0 {
        return Err(Error::Domain("embedding needs n ≥ 1".into()));
    }
    let big = qft_blocks(&GroupSpec::symmetric(n))?;
    let small = qft_blocks(&GroupSpec::symmetric(n - 1))?;
    let rows = big.last().map_or(0, |b| b.2.end);
    let cols = small.last().map_or(0, |b| b.2.end);
    let mut e = DMatrix::zeros(rows, cols);
    for (nu_label, dn, nu_rows) in &small {
        let IrrepLabel::Single(nu) = nu_label else { unreachable!() };
        for (la_label, dl, la_rows) in &big {
            let IrrepLabel::Single(lambda) = la_label else { unreachable!() };
            let Some(off) = beals_offset(lambda, nu) else { continue };
            let amp = (*dl as f64 / (n as f64 * *dn as f64)).sqrt();
            for k in 0..*dn {
                for l in 0..*dn {
                    let r = la_rows.start + (k + off) * dl + (l + off);
                    e[(r, nu_rows.start + k * dn + l)] = amp;
                }
            }
        }
    }
    Ok(e)
}

/// `QFT_{S_n}` assembled recursively: for `g = t_j h` with `t_j = (j, n-1)`
/// and `h` fixing `n-1`, column `g` is `W(t_j) · U_E · QFT_{S_{n-1}} |h⟩`,
/// where `W(t)` applies `r^λ(t)` to the row index of each block.
pub fn qft_via_beals(n: usize) -> Result<DMatrix<f64>> {
    check_limit("embedding size", n as u128, BEALS_CAP as u128)?;
    let mut q = DMatrix::from_element(1, 1, 1.0);
    for m in 2..=n {
        let e = beals_embedding_map(m)?;
        let embedded = &e * &q;
        let small = Permutation::all(m - 1);
        let small_index: HashMap<&Permutation, usize> =
            small.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let blocks = qft_blocks(&GroupSpec::symmetric(m))?;
        let reps = partitions_of(m)?
            .iter()
            .map(build_rep)
            .collect::<Result<Vec<_>>>()?;
        let coset_mats: Vec<Vec<DMatrix<f64>>> = (0..m)
            .map(|j| {
                reps.iter()
                    .map(|r| rep_of_permutation(r, &Permutation::transposition(m, j, m - 1)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let all = Permutation::all(m);
        let mut next = DMatrix::zeros(all.len(), all.len());
        for (col, g) in all.iter().enumerate() {
            let j = g.apply(m - 1);
            let t = Permutation::transposition(m, j, m - 1);
            let h = t.compose(g).restrict(0, m - 1).expect("h fixes the last point");
            let v = embedded.column(small_index[&h]);
            for ((_, d, rows), rt) in blocks.iter().zip(&coset_mats[j]) {
                for i in 0..*d {
                    for l in 0..*d {
                        let mut acc = 0.0;
                        for k in 0..*d {
                            acc += rt[(i, k)] * v[rows.start + k * d + l];
                        }
                        next[(rows.start + i * d + l, col)] = acc;
                    }
                }
            }
        }
        q = next;
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::yor::max_abs_diff;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn is_unitary(u: &DMatrix<f64>, tol: f64) -> bool {
        let id = DMatrix::identity(u.nrows(), u.ncols());
        max_abs_diff(&(u * u.transpose()), &id) < tol && max_abs_diff(&(u.transpose() * u), &id) < tol
    }

    #[test]
    fn s2_matrix() {
        let u = qft_matrix(&GroupSpec::symmetric(2)).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = DMatrix::from_row_slice(2, 2, &[h, h, h, -h]);
        assert!(max_abs_diff(&u, &expected) < 1e-12);
    }

    #[test]
    fn unitary_and_block_diagonalizing() {
        for g in [GroupSpec::symmetric(3), GroupSpec::symmetric(4), GroupSpec::young("2,2".parse().unwrap()), GroupSpec::direct_square(2)] {
            let u = qft_matrix(&g).unwrap();
            assert!(is_unitary(&u, 1e-9));
            let elements = g.elements().unwrap();
            let index = element_index(&elements);
            let mats: Vec<(usize, Vec<DMatrix<f64>>)> = qft_blocks(&g)
                .unwrap()
                .into_iter()
                .map(|(l, d, _)| (d, g.irrep_matrices(&l).unwrap()))
                .collect();
            for (col, x) in elements.iter().enumerate() {
                let conj = &u * regular_matrix(&elements, &index, x).unwrap() * u.transpose();
                let expected = fourier_block_matrix(&g, &mats, col).unwrap();
                assert!(max_abs_diff(&conj, &expected) < 1e-8);
            }
        }
    }

    #[test]
    fn young_qft_is_a_tensor_product() {
        let s2 = qft_matrix(&GroupSpec::symmetric(2)).unwrap();
        let u = qft_matrix(&GroupSpec::young("2,2".parse().unwrap())).unwrap();
        assert!(max_abs_diff(&u, &s2.kronecker(&s2)) < 1e-12);
    }

    #[test]
    fn delta_examples() {
        assert_eq!(beals_delta(&p("3"), &p("2")), 0);
        assert_eq!(beals_delta(&p("2,1"), &p("2")), 1);
        assert_eq!(beals_delta(&p("2,1"), &p("1,1")), 0);
        assert_eq!(beals_delta(&p("2,1,1"), &p("2,1")), 1);
        assert_eq!(beals_delta(&p("3"), &p("1,1")), 0);
        assert_eq!(beals_offset(&p("3,1"), &p("3")), Some(2));
    }

    fn column_of(e: &DMatrix<f64>, g: &GroupSpec, label: &str, k: usize, l: usize) -> Vec<(String, usize, usize, f64)> {
        let small = qft_blocks(g).unwrap();
        let (_, d, rows) = small.iter().find(|(x, _, _)| x.to_string() == label).unwrap();
        let col = rows.start + k * d + l;
        let n = g.degree() + 1;
        let mut out = Vec::new();
        for (lab, dl, r) in qft_blocks(&GroupSpec::symmetric(n)).unwrap() {
            for i in 0..dl {
                for j in 0..dl {
                    let v = e[(r.start + i * dl + j, col)];
                    if v.abs() > 1e-12 {
                        out.push((lab.to_string(), i, j, v));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn embedding_worked_examples() {
        let e3 = beals_embedding_map(3).unwrap();
        let s2 = GroupSpec::symmetric(2);
        let r3 = 3f64.sqrt();
        let got = column_of(&e3, &s2, "(2)", 0, 0);
        assert_eq!(got.len(), 2);
        assert_eq!((got[0].0.as_str(), got[0].1, got[0].2), ("(3)", 0, 0));
        assert!((got[0].3 - 1.0 / r3).abs() < 1e-12);
        assert_eq!((got[1].0.as_str(), got[1].1, got[1].2), ("(2,1)", 1, 1));
        assert!((got[1].3 - 2f64.sqrt() / r3).abs() < 1e-12);
        let got = column_of(&e3, &s2, "(1,1)", 0, 0);
        assert_eq!((got[0].0.as_str(), got[0].1, got[0].2), ("(2,1)", 0, 0));
        assert_eq!((got[1].0.as_str(), got[1].1, got[1].2), ("(1,1,1)", 0, 0));

        let e4 = beals_embedding_map(4).unwrap();
        let got = column_of(&e4, &GroupSpec::symmetric(3), "(2,1)", 0, 1);
        let r8 = 8f64.sqrt();
        let want = [("(3,1)", 0, 1, 3f64.sqrt() / r8), ("(2,2)", 0, 1, 2f64.sqrt() / r8), ("(2,1,1)", 1, 2, 3f64.sqrt() / r8)];
        assert_eq!(got.len(), 3);
        for ((l, i, j, v), (wl, wi, wj, wv)) in got.iter().zip(want) {
            assert_eq!((l.as_str(), *i, *j), (wl, wi, wj));
            assert!((v - wv).abs() < 1e-12);
        }
    }

    #[test]
    fn embedding_is_an_isometry() {
        for n in 1..=5 {
            let e = beals_embedding_map(n).unwrap();
            let id = DMatrix::identity(e.ncols(), e.ncols());
            assert!(max_abs_diff(&(e.transpose() * &e), &id) < 1e-10);
        }
        assert!(beals_embedding_map(7).is_err());
    }

    #[test]
    fn recursion_reproduces_qft() {
        for n in 1..=5 {
            let direct = qft_matrix(&GroupSpec::symmetric(n)).unwrap();
            assert!(max_abs_diff(&qft_via_beals(n).unwrap(), &direct) < 1e-8, "n = {n}");
        }
    }
}
