use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{check_limit, Error, Result};
use crate::partitions::{dim_irrep, factorial, partitions_of, Composition, Partition};
use crate::perm::{young_subgroup, Permutation};
use crate::wreath::{embed, wreath_elements, WreathIrrepLabel, WreathRep};
use crate::yor::{all_matrices, build_rep, DEFAULT_GROUP_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupKind {
    Symmetric { n: usize },
    /// `S_{μ_1} × S_{μ_2} × ...` on consecutive blocks.
    Young { blocks: Composition },
    /// `S_a × S_b`, the Littlewood-Richardson subgroup.
    Product { a: usize, b: usize },
    /// `S_c ≀ S_d` embedded in `S_{cd}`.
    Wreath { c: usize, d: usize },
    /// `S_n × S_n` on `2n` points; contains `S_n` diagonally.
    DirectSquare { n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "GroupKind", try_from = "GroupKind")]
pub struct GroupSpec {
    pub kind: GroupKind,
    pub order: BigUint,
}

/// Irrep labels across group kinds. `Other` stands for irreps of a wreath
/// product outside the modeled `λ ≀ μ` family.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IrrepLabel {
    Single(Partition),
    Tuple(Vec<Partition>),
    Wreath { inner: Partition, outer: Partition },
    Other,
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrepLabel::Single(p) => write!(f, "{p}"),
            IrrepLabel::Tuple(ps) => {
                let parts: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", parts.join("x"))
            }
            IrrepLabel::Wreath { inner, outer } => write!(f, "{inner}wr{outer}"),
            IrrepLabel::Other => write!(f, "other"),
        }
    }
}

impl GroupSpec {
    pub fn new(kind: GroupKind) -> Result<Self> {
        let order = match &kind {
            GroupKind::Symmetric { n } => factorial(*n),
            GroupKind::Young { blocks } => blocks.parts().iter().map(|&b| factorial(b)).product(),
            GroupKind::Product { a, b } => factorial(*a) * factorial(*b),
            GroupKind::Wreath { c, d } => {
                if *c == 0 || *d == 0 {
                    return Err(Error::Domain("wreath factors must be nonempty".into()));
                }
                factorial(*c).pow(*d as u32) * factorial(*d)
            }
            GroupKind::DirectSquare { n } => factorial(*n) * factorial(*n),
        };
        Ok(GroupSpec { kind, order })
    }

    pub fn symmetric(n: usize) -> Self {
        Self::new(GroupKind::Symmetric { n }).expect("valid")
    }

    pub fn young(blocks: Composition) -> Self {
        Self::new(GroupKind::Young { blocks }).expect("valid")
    }

    pub fn product(a: usize, b: usize) -> Self {
        Self::new(GroupKind::Product { a, b }).expect("valid")
    }

    pub fn wreath(c: usize, d: usize) -> Result<Self> {
        Self::new(GroupKind::Wreath { c, d })
    }

    pub fn direct_square(n: usize) -> Self {
        Self::new(GroupKind::DirectSquare { n }).expect("valid")
    }

    /// The trivial subgroup of `S_n`, as the Young subgroup `S_1^n`.
    pub fn trivial(n: usize) -> Result<Self> {
        Ok(Self::young(Composition::new(vec![1; n])?))
    }

    /// Number of points of the parent symmetric group.
    pub fn degree(&self) -> usize {
        match &self.kind {
            GroupKind::Symmetric { n } => *n,
            GroupKind::Young { blocks } => blocks.n(),
            GroupKind::Product { a, b } => a + b,
            GroupKind::Wreath { c, d } => c * d,
            GroupKind::DirectSquare { n } => 2 * n,
        }
    }

    pub fn order_u64(&self) -> Result<u64> {
        self.order.to_u64().ok_or(Error::SizeLimit {
            what: "group order",
            limit: u64::MAX as u128,
            got: u128::MAX,
        })
    }

    /// Factors that are symmetric groups on consecutive blocks, or `None` for a wreath product.
    pub fn blocks(&self) -> Option<Vec<usize>> {
        match &self.kind {
            GroupKind::Symmetric { n } => Some(vec![*n]),
            GroupKind::Young { blocks } => Some(blocks.parts().to_vec()),
            GroupKind::Product { a, b } => Some(vec![*a, *b]),
            GroupKind::DirectSquare { n } => Some(vec![*n, *n]),
            GroupKind::Wreath { .. } => None,
        }
    }

    /// Irrep labels in canonical order: reverse lexicographic partitions, and
    /// for products the first factor varies slowest.
    pub fn labels(&self) -> Result<Vec<IrrepLabel>> {
        match &self.kind {
            GroupKind::Symmetric { n } => {
                Ok(partitions_of(*n)?.into_iter().map(IrrepLabel::Single).collect())
            }
            GroupKind::Wreath { c, d } => {
                let mut out = Vec::new();
                for inner in partitions_of(*c)? {
                    for outer in partitions_of(*d)? {
                        out.push(IrrepLabel::Wreath {
                            inner: inner.clone(),
                            outer,
                        });
                    }
                }
                Ok(out)
            }
            _ => {
                let blocks = self.blocks().expect("product of symmetric groups");
                let mut out: Vec<Vec<Partition>> = vec![Vec::new()];
                for b in blocks {
                    let ps = partitions_of(b)?;
                    out = out
                        .into_iter()
                        .flat_map(|prefix| {
                            ps.iter().map(move |p| {
                                let mut v = prefix.clone();
                                v.push(p.clone());
                                v
                            })
                        })
                        .collect();
                }
                Ok(out.into_iter().map(IrrepLabel::Tuple).collect())
            }
        }
    }

    pub fn trivial_label(&self) -> IrrepLabel {
        match &self.kind {
            GroupKind::Symmetric { n } => IrrepLabel::Single(Partition::row(*n)),
            GroupKind::Wreath { c, d } => IrrepLabel::Wreath {
                inner: Partition::row(*c),
                outer: Partition::row(*d),
            },
            _ => IrrepLabel::Tuple(
                self.blocks()
                    .expect("product of symmetric groups")
                    .into_iter()
                    .map(Partition::row)
                    .collect(),
            ),
        }
    }

    pub fn check_label(&self, label: &IrrepLabel) -> Result<()> {
        let ok = match (&self.kind, label) {
            (GroupKind::Symmetric { n }, IrrepLabel::Single(p)) => p.n() == *n,
            (GroupKind::Wreath { c, d }, IrrepLabel::Wreath { inner, outer }) => {
                inner.n() == *c && outer.n() == *d
            }
            (GroupKind::Wreath { .. }, _) | (GroupKind::Symmetric { .. }, _) => false,
            (_, IrrepLabel::Tuple(ps)) => {
                let blocks = self.blocks().expect("product of symmetric groups");
                ps.len() == blocks.len() && ps.iter().zip(&blocks).all(|(p, &b)| p.n() == b)
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("{label} is not an irrep label of {self}")))
        }
    }

    pub fn label_dim(&self, label: &IrrepLabel) -> Result<BigUint> {
        self.check_label(label)?;
        Ok(match label {
            IrrepLabel::Single(p) => dim_irrep(p),
            IrrepLabel::Tuple(ps) => ps.iter().map(dim_irrep).product(),
            IrrepLabel::Wreath { inner, outer } => {
                dim_irrep(inner).pow(outer.n() as u32) * dim_irrep(outer)
            }
            IrrepLabel::Other => unreachable!("rejected by check_label"),
        })
    }

    /// Elements as permutations of `degree()` points. Products of symmetric
    /// groups are sorted by one-line notation; wreath elements follow
    /// [`wreath_elements`].
    pub fn elements(&self) -> Result<Vec<Permutation>> {
        check_limit(
            "group order",
            self.order.to_u128().unwrap_or(u128::MAX),
            DEFAULT_GROUP_CAP as u128,
        )?;
        match &self.kind {
            GroupKind::Wreath { c, d } => wreath_elements(*c, *d)?
                .iter()
                .map(|w| embed(*c, *d, w))
                .collect(),
            _ => Ok(young_subgroup(&self.blocks().expect("product of symmetric groups"))),
        }
    }

    /// `r^label(g)` for every element, aligned with [`GroupSpec::elements`].
    pub fn irrep_matrices(&self, label: &IrrepLabel) -> Result<Vec<DMatrix<f64>>> {
        self.check_label(label)?;
        match (&self.kind, label) {
            (GroupKind::Wreath { c, d }, IrrepLabel::Wreath { inner, outer }) => {
                let rep = WreathRep::new(&WreathIrrepLabel {
                    lambda: inner.clone(),
                    mu: outer.clone(),
                })?;
                wreath_elements(*c, *d)?.iter().map(|w| rep.matrix(w)).collect()
            }
            _ => {
                let blocks = self.blocks().expect("product of symmetric groups");
                let parts: Vec<Partition> = match label {
                    IrrepLabel::Single(p) => vec![p.clone()],
                    IrrepLabel::Tuple(ps) => ps.clone(),
                    _ => unreachable!("rejected by check_label"),
                };
                let tables = parts
                    .iter()
                    .map(|p| {
                        let rep = build_rep(p)?;
                        Ok(all_matrices(&rep)?.into_iter().collect::<HashMap<_, _>>())
                    })
                    .collect::<Result<Vec<_>>>()?;
                self.elements()?
                    .iter()
                    .map(|g| {
                        let mut m = DMatrix::from_element(1, 1, 1.0);
                        let mut offset = 0;
                        for (table, &b) in tables.iter().zip(&blocks) {
                            let piece = g.restrict(offset, b).expect("element preserves blocks");
                            m = m.kronecker(&table[&piece]);
                            offset += b;
                        }
                        Ok(m)
                    })
                    .collect()
            }
        }
    }
}

impl From<GroupSpec> for GroupKind {
    fn from(g: GroupSpec) -> Self {
        g.kind
    }
}

impl TryFrom<GroupKind> for GroupSpec {
    type Error = Error;

    fn try_from(kind: GroupKind) -> Result<Self> {
        GroupSpec::new(kind)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            GroupKind::Symmetric { n } => write!(f, "symmetric:{n}"),
            GroupKind::Young { blocks } => write!(f, "young:{}", blocks.parts().iter().map(|b| b.to_string()).collect::<Vec<_>>().join(",")),
            GroupKind::Product { a, b } => write!(f, "product:{a},{b}"),
            GroupKind::Wreath { c, d } => write!(f, "wreath:{c},{d}"),
            GroupKind::DirectSquare { n } => write!(f, "square:{n}"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// `symmetric:N`, `young:A,B,..`, `product:A,B`, `wreath:C,D`, `square:N`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("group {s:?} lacks a kind prefix")))?;
        let nums: Vec<usize> = args
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("group {s:?}: {e}")))?;
        let arity = |k: usize| -> Result<()> {
            if nums.len() == k {
                Ok(())
            } else {
                Err(Error::Parse(format!("group {s:?} needs {k} argument(s)")))
            }
        };
        let kind = match kind {
            "symmetric" | "sym" => {
                arity(1)?;
                GroupKind::Symmetric { n: nums[0] }
            }
            "young" => GroupKind::Young {
                blocks: Composition::new(nums)?,
            },
            "product" => {
                arity(2)?;
                GroupKind::Product { a: nums[0], b: nums[1] }
            }
            "wreath" => {
                arity(2)?;
                GroupKind::Wreath { c: nums[0], d: nums[1] }
            }
            "square" => {
                arity(1)?;
                GroupKind::DirectSquare { n: nums[0] }
            }
            other => return Err(Error::Parse(format!("unknown group kind {other:?}"))),
        };
        GroupSpec::new(kind)
    }
}

/// Images in the point set of `g` of the elements of `h`, aligned with
/// `h.elements()`. `S_m` sits in `S_n` on the first `m` points; products of
/// symmetric groups sit in `S_n` as the same block structure; `S_n` sits in
/// `S_n × S_n` diagonally.
pub fn embedding(g: &GroupSpec, h: &GroupSpec) -> Result<Vec<Permutation>> {
    let n = g.degree();
    match (&g.kind, &h.kind) {
        (GroupKind::Symmetric { .. }, _) if h.degree() <= n => {
            if matches!(h.kind, GroupKind::DirectSquare { .. }) {
                return Err(unsupported(g, h));
            }
            Ok(h.elements()?.into_iter().map(|p| p.embed(n, 0)).collect())
        }
        (GroupKind::DirectSquare { n: m }, GroupKind::Symmetric { n: k }) if m == k => Ok(h
            .elements()?
            .into_iter()
            .map(|p| Permutation::direct_sum(&[p.clone(), p]))
            .collect()),
        (a, b) if a == b => h.elements(),
        _ => Err(unsupported(g, h)),
    }
}

pub(crate) fn unsupported(g: &GroupSpec, h: &GroupSpec) -> Error {
    Error::Unsupported(format!("{h} inside {g}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_parsing() {
        let cases = [
            ("symmetric:4", 24u64),
            ("young:2,1,2", 4),
            ("product:2,3", 12),
            ("wreath:2,3", 48),
            ("square:3", 36),
        ];
        for (s, order) in cases {
            let g: GroupSpec = s.parse().unwrap();
            assert_eq!(g.order_u64().unwrap(), order);
            assert_eq!(g.to_string(), s);
            assert_eq!(g.elements().unwrap().len() as u64, order);
        }
        assert!("young:2,0".parse::<GroupSpec>().is_err());
        assert!("cyclic:3".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn labels_and_dimensions() {
        for s in ["symmetric:4", "young:2,2", "product:2,1", "square:3"] {
            let g: GroupSpec = s.parse().unwrap();
            let sum: BigUint = g
                .labels()
                .unwrap()
                .iter()
                .map(|l| g.label_dim(l).unwrap().pow(2))
                .sum();
            assert_eq!(sum, g.order, "{s}");
        }
        let w = GroupSpec::wreath(2, 2).unwrap();
        assert_eq!(w.labels().unwrap().len(), 4);
        assert!(w.label_dim(&IrrepLabel::Single(Partition::row(4))).is_err());
    }

    #[test]
    fn irrep_matrices_are_homomorphisms() {
        for s in ["young:2,2", "square:2", "wreath:2,2"] {
            let g: GroupSpec = s.parse().unwrap();
            let elements = g.elements().unwrap();
            let index: HashMap<&Permutation, usize> =
                elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
            for label in g.labels().unwrap() {
                let mats = g.irrep_matrices(&label).unwrap();
                for (i, a) in elements.iter().enumerate() {
                    for (j, b) in elements.iter().enumerate() {
                        let k = index[&a.compose(b)];
                        assert!((&mats[i] * &mats[j] - &mats[k]).abs().max() < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn embeddings() {
        let s3 = GroupSpec::symmetric(3);
        let s2 = GroupSpec::symmetric(2);
        assert_eq!(embedding(&s3, &s2).unwrap()[1].images(), &[1, 0, 2]);
        let sq = GroupSpec::direct_square(2);
        assert_eq!(embedding(&sq, &s2).unwrap()[1].images(), &[1, 0, 3, 2]);
        assert!(embedding(&s2, &s3).is_err());
        assert!(embedding(&sq, &GroupSpec::symmetric(3)).is_err());
    }
}
