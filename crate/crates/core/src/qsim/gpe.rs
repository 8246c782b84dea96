//! Dense end-to-end simulation of generalized phase estimation.
//!
//! Target register `ℂ[G]` holds `ρ = Π^G_α / d_α²`; control register `ℂ[H]`
//! starts uniform, controls the left regular action of `H`, and is measured
//! after an `H` Fourier transform. Outcome `β` has probability
//! `Σ_r Tr[E_r ρ E_r†]` with `E_r = |H|^{-1/2} Σ_h v_r(h) R(h)`, where `v_r`
//! runs over the Fourier rows of `β`. For a wreath product, whose full dual is
//! not modeled, the rows of the `β`-isotypic projector of `ℂ[H]` stand in for
//! the Fourier rows; they span the same space.

use indexmap::IndexMap;
use nalgebra::DMatrix;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::groups::{embedding, GroupSpec, IrrepLabel};
use super::qft::{element_index, qft_blocks, qft_matrix};
use crate::error::{check_limit, Error, Result};

/// Largest `|G|` simulated densely.
pub const DENSE_GPE_CAP: u128 = 120;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseDistribution {
    pub entries: IndexMap<IrrepLabel, f64>,
    /// One minus the total of `entries`.
    pub residual: f64,
}

pub fn simulate_gpe_dense(g: &GroupSpec, h: &GroupSpec, alpha: &IrrepLabel) -> Result<DenseDistribution> {
    check_limit(
        "dense simulation group order",
        g.order.to_u128().unwrap_or(u128::MAX),
        DENSE_GPE_CAP,
    )?;
    g.check_label(alpha)?;
    let elements = g.elements()?;
    let index = element_index(&elements);
    let size = elements.len();

    // ρ = Π/d_α² with Π = V_αᵀ V_α; keep V_αᵀ / d_α so that Tr[E ρ Eᵀ] = ‖E·W‖²
    let u = qft_matrix(g)?;
    let (_, d_alpha, rows) = qft_blocks(g)?
        .into_iter()
        .find(|(l, _, _)| l == alpha)
        .expect("label checked");
    let w = u.rows(rows.start, rows.len()).transpose() / d_alpha as f64;

    let h_perms = embedding(g, h)?;
    // R(h) as a row permutation: (R(h) x)[index(h∘y)] = x[y]
    let actions: Vec<Vec<usize>> = h_perms
        .iter()
        .map(|x| {
            elements
                .iter()
                .map(|y| {
                    index
                        .get(&x.compose(y))
                        .copied()
                        .ok_or_else(|| Error::Domain(format!("{x} is not in {g}")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let scale = 1.0 / (h_perms.len() as f64).sqrt();

    let mut entries = IndexMap::new();
    for (beta, coeffs) in measurement_rows(h)? {
        let mut p = 0.0;
        for v in coeffs.row_iter() {
            // E_r W, built row-permuted without forming E_r
            let mut ew = DMatrix::<f64>::zeros(size, w.ncols());
            for (hi, perm) in actions.iter().enumerate() {
                let c = v[hi] * scale;
                if c == 0.0 {
                    continue;
                }
                for (y, &row) in perm.iter().enumerate() {
                    for k in 0..w.ncols() {
                        ew[(row, k)] += c * w[(y, k)];
                    }
                }
            }
            p += ew.norm_squared();
        }
        entries.insert(beta, p);
    }
    let residual = 1.0 - entries.values().sum::<f64>();
    Ok(DenseDistribution { entries, residual })
}

/// For each modeled label of `H`, the coefficient rows `v_r(h)` of its measurement operators.
fn measurement_rows(h: &GroupSpec) -> Result<Vec<(IrrepLabel, DMatrix<f64>)>> {
    if h.blocks().is_some() {
        let u = qft_matrix(h)?;
        return Ok(qft_blocks(h)?
            .into_iter()
            .map(|(label, _, rows)| (label, u.rows(rows.start, rows.len()).into_owned()))
            .collect());
    }
    // isotypic projector of the regular representation: Π[x, y] = (d/|H|) χ(x⁻¹ y)
    let elements = h.elements()?;
    let index = element_index(&elements);
    let order = elements.len();
    let mut out = Vec::new();
    for label in h.labels()? {
        let d = h.label_dim(&label)?.to_f64().expect("small dimension");
        let chars: Vec<f64> = h.irrep_matrices(&label)?.iter().map(|m| m.trace()).collect();
        let mut pi = DMatrix::zeros(order, order);
        for (i, x) in elements.iter().enumerate() {
            let x_inv = x.inverse();
            for (j, y) in elements.iter().enumerate() {
                pi[(i, j)] = d / order as f64 * chars[index[&x_inv.compose(y)]];
            }
        }
        out.push((label, pi));
    }
    Ok(out)
}
