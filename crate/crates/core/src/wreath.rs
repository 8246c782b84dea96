//! The wreath product `S_c ≀ S_d` inside `S_{cd}`.
//!
//! Point `(i, j)` (position `i` in block `j`) is flattened to `j·c + i`. The
//! element `(g, σ)` sends `(i, j)` to `(g_{σ(j)}(i), σ(j))`: blocks move by
//! `σ`, then each destination block is permuted internally. Products follow
//! `(g, σ)(h, τ) = (k, στ)` with `k_m = g_m ∘ h_{σ⁻¹(m)}`.
//!
//! The irrep `λ ≀ μ` acts on `(S^λ)^{⊗d} ⊗ S^μ` by `B(g)·P(σ)`, where `P(σ)`
//! moves tensor slot `j` to slot `σ(j)` (so slot `m` receives `u_{σ⁻¹(m)}`)
//! and applies `r^μ(σ)`, and `B(g)` applies `r^λ(g_m)` in slot `m`.

use nalgebra::DMatrix;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::characters::MnCache;
use crate::error::{check_limit, Error, Result};
use crate::partitions::{dim_irrep, factorial, Partition};
use crate::perm::Permutation;
use crate::yor::{
    build_rep, isotypic_projector_multiplicity, rep_of_permutation, round_multiplicity,
    OrthogonalRep, DEFAULT_DENSE_CAP,
};

/// Largest wreath product enumerated.
pub const DEFAULT_ORDER_CAP: u128 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathElement {
    pub base: Vec<Permutation>,
    pub top: Permutation,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WreathIrrepLabel {
    pub lambda: Partition,
    pub mu: Partition,
}

impl WreathElement {
    pub fn new(base: Vec<Permutation>, top: Permutation) -> Result<Self> {
        if base.len() != top.degree() {
            return Err(Error::Domain(format!(
                "{} base factors for a top permutation of degree {}",
                base.len(),
                top.degree()
            )));
        }
        if let Some(first) = base.first() {
            if base.iter().any(|g| g.degree() != first.degree()) {
                return Err(Error::Domain("base factors of different degrees".into()));
            }
        }
        Ok(WreathElement { base, top })
    }

    pub fn identity(c: usize, d: usize) -> Self {
        WreathElement {
            base: vec![Permutation::identity(c); d],
            top: Permutation::identity(d),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WreathElement) -> WreathElement {
        let sigma_inv = self.top.inverse();
        let base = (0..self.base.len())
            .map(|m| self.base[m].compose(&other.base[sigma_inv.apply(m)]))
            .collect();
        WreathElement {
            base,
            top: self.top.compose(&other.top),
        }
    }

    pub fn inverse(&self) -> WreathElement {
        // (g, σ)⁻¹ = (k, σ⁻¹) with k_m = g_{σ(m)}⁻¹
        let base = (0..self.base.len())
            .map(|m| self.base[self.top.apply(m)].inverse())
            .collect();
        WreathElement {
            base,
            top: self.top.inverse(),
        }
    }
}

pub fn wreath_order(c: usize, d: usize) -> u128 {
    let o = factorial(c).pow(d as u32) * factorial(d);
    o.to_u128().unwrap_or(u128::MAX)
}

/// All `(c!)^d · d!` elements: top permutation outermost, then base factors
/// lexicographically.
pub fn wreath_elements(c: usize, d: usize) -> Result<Vec<WreathElement>> {
    check_limit("wreath product order", wreath_order(c, d), DEFAULT_ORDER_CAP)?;
    let factors = Permutation::all(c);
    let mut bases: Vec<Vec<Permutation>> = vec![Vec::new()];
    for _ in 0..d {
        bases = bases
            .into_iter()
            .flat_map(|prefix| {
                factors.iter().map(move |g| {
                    let mut v = prefix.clone();
                    v.push(g.clone());
                    v
                })
            })
            .collect();
    }
    let mut out = Vec::with_capacity(bases.len() * factorial(d).to_usize().unwrap_or(0));
    for top in Permutation::all(d) {
        for base in &bases {
            out.push(WreathElement {
                base: base.clone(),
                top: top.clone(),
            });
        }
    }
    Ok(out)
}

pub fn embed(c: usize, d: usize, w: &WreathElement) -> Result<Permutation> {
    check_limit("wreath product order", wreath_order(c, d), DEFAULT_ORDER_CAP)?;
    if w.base.len() != d || w.top.degree() != d || w.base.iter().any(|g| g.degree() != c) {
        return Err(Error::Domain(format!("element does not belong to S_{c} ≀ S_{d}")));
    }
    let mut images = vec![0; c * d];
    for j in 0..d {
        let m = w.top.apply(j);
        for i in 0..c {
            images[j * c + i] = m * c + w.base[m].apply(i);
        }
    }
    Permutation::from_images(images)
}

/// Orthogonal-form matrices for the two factors of a wreath irrep.
#[derive(Debug, Clone)]
pub struct WreathRep {
    label: WreathIrrepLabel,
    inner: OrthogonalRep,
    outer: OrthogonalRep,
    d: usize,
}

impl WreathRep {
    pub fn new(label: &WreathIrrepLabel) -> Result<Self> {
        let inner = build_rep(&label.lambda)?;
        let outer = build_rep(&label.mu)?;
        let d = label.mu.n();
        let dim = (inner.dim() as u128)
            .checked_pow(d as u32)
            .and_then(|x| x.checked_mul(outer.dim() as u128))
            .unwrap_or(u128::MAX);
        check_limit("wreath irrep dimension", dim, DEFAULT_DENSE_CAP as u128)?;
        Ok(WreathRep {
            label: label.clone(),
            inner,
            outer,
            d,
        })
    }

    pub fn label(&self) -> &WreathIrrepLabel {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.inner.dim().pow(self.d as u32) * self.outer.dim()
    }

    fn check(&self, w: &WreathElement) -> Result<()> {
        let c = self.label.lambda.n();
        if w.base.len() != self.d || w.top.degree() != self.d || w.base.iter().any(|g| g.degree() != c) {
            return Err(Error::Domain(format!(
                "element does not belong to S_{c} ≀ S_{}",
                self.d
            )));
        }
        Ok(())
    }

    /// The explicit matrix `B(g)·P(σ)`; tensor slot 0 is the most significant index.
    pub fn matrix(&self, w: &WreathElement) -> Result<DMatrix<f64>> {
        self.check(w)?;
        let dl = self.inner.dim();
        let tensor_dim = dl.pow(self.d as u32);
        let mut base = DMatrix::from_element(1, 1, 1.0);
        for g in &w.base {
            base = base.kronecker(&rep_of_permutation(&self.inner, g)?);
        }
        let mut slots = DMatrix::zeros(tensor_dim, tensor_dim);
        for y in 0..tensor_dim {
            let digits = to_digits(y, dl, self.d);
            let mut moved = vec![0; self.d];
            for (j, &v) in digits.iter().enumerate() {
                moved[w.top.apply(j)] = v;
            }
            slots[(from_digits(&moved, dl), y)] = 1.0;
        }
        let top = slots.kronecker(&rep_of_permutation(&self.outer, &w.top)?);
        Ok(base.kronecker(&DMatrix::identity(self.outer.dim(), self.outer.dim())) * top)
    }

    /// Trace of `matrix(w)` without forming it:
    /// `Σ_y Π_m r^λ(g_m)[y_m, y_{σ⁻¹(m)}] · Tr r^μ(σ)`.
    pub fn character(&self, w: &WreathElement) -> Result<f64> {
        self.check(w)?;
        let dl = self.inner.dim();
        let mats = w
            .base
            .iter()
            .map(|g| rep_of_permutation(&self.inner, g))
            .collect::<Result<Vec<_>>>()?;
        let sigma_inv = w.top.inverse();
        let mut total = 0.0;
        for y in 0..dl.pow(self.d as u32) {
            let digits = to_digits(y, dl, self.d);
            let mut term = 1.0;
            for m in 0..self.d {
                term *= mats[m][(digits[m], digits[sigma_inv.apply(m)])];
                if term == 0.0 {
                    break;
                }
            }
            total += term;
        }
        Ok(total * rep_of_permutation(&self.outer, &w.top)?.trace())
    }
}

fn to_digits(mut x: usize, base: usize, len: usize) -> Vec<usize> {
    let mut digits = vec![0; len];
    for k in (0..len).rev() {
        digits[k] = x % base;
        x /= base;
    }
    digits
}

fn from_digits(digits: &[usize], base: usize) -> usize {
    digits.iter().fold(0, |acc, &v| acc * base + v)
}

pub fn wreath_character(label: &WreathIrrepLabel, w: &WreathElement) -> Result<f64> {
    WreathRep::new(label)?.character(w)
}

fn check_plethysm_sizes(nu: &Partition, lambda: &Partition, mu: &Partition) -> Result<()> {
    if lambda.is_empty() || mu.is_empty() || nu.n() != lambda.n() * mu.n() {
        return Err(Error::Domain(format!(
            "plethysm needs |ν| = |λ|·|μ| with λ, μ nonempty, got {nu}, {lambda}, {mu}"
        )));
    }
    Ok(())
}

/// `a^ν_{λμ} = (1/|H|) Σ_w χ^ν(embed w) · χ^{λ≀μ}(w)` with exact `χ^ν`.
pub fn plethysm(nu: &Partition, lambda: &Partition, mu: &Partition) -> Result<u64> {
    check_plethysm_sizes(nu, lambda, mu)?;
    let (c, d) = (lambda.n(), mu.n());
    let label = WreathIrrepLabel {
        lambda: lambda.clone(),
        mu: mu.clone(),
    };
    let rep = WreathRep::new(&label)?;
    let elements = wreath_elements(c, d)?;
    let mut cache = MnCache::new();
    let mut total = 0.0;
    for w in &elements {
        let chi = cache.character(nu, &embed(c, d, w)?.cycle_type())?;
        if chi == num_bigint::BigInt::ZERO {
            continue;
        }
        let chi = chi
            .to_f64()
            .ok_or_else(|| Error::Numerical("character value overflows f64".into()))?;
        // wreath characters are real, so χ(w) = χ(w⁻¹)
        total += chi * rep.character(w)?;
    }
    round_multiplicity(total / elements.len() as f64)
}

/// The same multiplicity as an isotypic projector: `r^ν` restricted to the
/// embedded subgroup from orthogonal-form traces, label character from the
/// wreath module.
pub fn plethysm_via_projector(nu: &Partition, lambda: &Partition, mu: &Partition) -> Result<u64> {
    check_plethysm_sizes(nu, lambda, mu)?;
    let (c, d) = (lambda.n(), mu.n());
    let label = WreathIrrepLabel {
        lambda: lambda.clone(),
        mu: mu.clone(),
    };
    let wrep = WreathRep::new(&label)?;
    let big = build_rep(nu)?;
    let elements = wreath_elements(c, d)?;
    let mut traces = Vec::with_capacity(elements.len());
    let mut chars = Vec::with_capacity(elements.len());
    for w in &elements {
        traces.push(rep_of_permutation(&big, &embed(c, d, w)?)?.trace());
        chars.push(wrep.character(&w.inverse())?);
    }
    isotypic_projector_multiplicity(&traces, &chars, wrep.dim())
}

/// `d_λ^d · d_μ`.
pub fn wreath_irrep_dim(lambda: &Partition, mu: &Partition) -> u128 {
    (dim_irrep(lambda).pow(mu.n() as u32) * dim_irrep(mu))
        .to_u128()
        .unwrap_or(u128::MAX)
}
