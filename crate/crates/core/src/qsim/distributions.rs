use indexmap::IndexMap;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::groups::{embedding, unsupported, GroupKind, GroupSpec, IrrepLabel};
use crate::characters::{kronecker, restriction_multiplicity, MnCache, YoungSubgroupSpec};
use crate::error::{Error, Result};
use crate::partitions::{Composition, Partition};
use crate::wreath::plethysm;

/// Outcome probabilities over irrep labels, with the mass of unmodeled labels
/// kept separately.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "DistributionJson", try_from = "DistributionJson")]
pub struct ExactDistribution {
    pub entries: IndexMap<IrrepLabel, BigRational>,
    pub residual: BigRational,
}

#[derive(Serialize, Deserialize)]
struct DistributionJson {
    entries: Vec<EntryJson>,
    residual: String,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    label: IrrepLabel,
    p: String,
}

impl From<ExactDistribution> for DistributionJson {
    fn from(d: ExactDistribution) -> Self {
        DistributionJson {
            entries: d
                .entries
                .into_iter()
                .map(|(label, p)| EntryJson { label, p: p.to_string() })
                .collect(),
            residual: d.residual.to_string(),
        }
    }
}

impl TryFrom<DistributionJson> for ExactDistribution {
    type Error = Error;

    fn try_from(j: DistributionJson) -> Result<Self> {
        let parse = |s: &str| {
            s.parse::<BigRational>()
                .map_err(|e| Error::Parse(format!("probability {s:?}: {e}")))
        };
        let mut entries = IndexMap::new();
        for e in j.entries {
            entries.insert(e.label, parse(&e.p)?);
        }
        Ok(ExactDistribution {
            entries,
            residual: parse(&j.residual)?,
        })
    }
}

impl ExactDistribution {
    pub fn get(&self, label: &IrrepLabel) -> BigRational {
        if label == &IrrepLabel::Other {
            return self.residual.clone();
        }
        self.entries.get(label).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn total(&self) -> BigRational {
        self.entries.values().fold(self.residual.clone(), |acc, p| acc + p)
    }

    pub fn is_normalized(&self) -> bool {
        self.total().is_one()
            && !self.residual.is_negative()
            && self.entries.values().all(|p| !p.is_negative() && p <= &BigRational::one())
    }

    /// Labels with positive mass, the residual last as [`IrrepLabel::Other`].
    pub fn support(&self) -> Vec<(IrrepLabel, f64)> {
        let mut out: Vec<(IrrepLabel, f64)> = self
            .entries
            .iter()
            .filter(|(_, p)| p.is_positive())
            .map(|(l, p)| (l.clone(), p.to_f64().unwrap_or(0.0)))
            .collect();
        if self.residual.is_positive() {
            out.push((IrrepLabel::Other, self.residual.to_f64().unwrap_or(0.0)));
        }
        out
    }
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod rational_string {
    use num_rational::BigRational;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(|e| D::Error::custom(format!("rational {s:?}: {e}")))
    }
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn single(label: &IrrepLabel) -> Result<&Partition> {
    match label {
        IrrepLabel::Single(p) => Ok(p),
        other => Err(Error::Domain(format!("expected a partition label, got {other}"))),
    }
}

/// Multiplicity of the `H`-irrep `beta` in the `G`-irrep `alpha` restricted to `H`.
pub fn restriction_multiplicity_for(
    g: &GroupSpec,
    h: &GroupSpec,
    alpha: &IrrepLabel,
    beta: &IrrepLabel,
) -> Result<u64> {
    g.check_label(alpha)?;
    h.check_label(beta)?;
    if g == h {
        return Ok((alpha == beta) as u64);
    }
    match (&g.kind, &h.kind) {
        (GroupKind::Symmetric { n }, GroupKind::Symmetric { n: m }) if m < n => {
            // S_m × S_1 × ... × S_1, then drop the S_1 factors' trivial labels
            let mut blocks = vec![*m];
            let mut labels = vec![single(beta)?.clone()];
            blocks.extend(std::iter::repeat_n(1, n - m));
            labels.extend(std::iter::repeat_n(Partition::row(1), n - m));
            if *m == 0 {
                blocks.remove(0);
                labels.remove(0);
            }
            restriction_multiplicity(
                single(alpha)?,
                &YoungSubgroupSpec::new(Composition::new(blocks)?),
                &labels,
            )
        }
        (GroupKind::Symmetric { n }, GroupKind::Young { .. } | GroupKind::Product { .. })
            if h.degree() == *n =>
        {
            let IrrepLabel::Tuple(parts) = beta else {
                unreachable!("checked label")
            };
            let blocks = h.blocks().expect("product of symmetric groups");
            let (blocks, parts): (Vec<usize>, Vec<Partition>) = blocks
                .into_iter()
                .zip(parts.iter().cloned())
                .filter(|(b, _)| *b > 0)
                .unzip();
            if blocks.is_empty() {
                return Ok(1);
            }
            restriction_multiplicity(
                single(alpha)?,
                &YoungSubgroupSpec::new(Composition::new(blocks)?),
                &parts,
            )
        }
        (GroupKind::Symmetric { n }, GroupKind::Wreath { c, d }) if c * d == *n => {
            let IrrepLabel::Wreath { inner, outer } = beta else {
                unreachable!("checked label")
            };
            plethysm(single(alpha)?, inner, outer)
        }
        (GroupKind::DirectSquare { n }, GroupKind::Symmetric { n: m }) if n == m => {
            let IrrepLabel::Tuple(parts) = alpha else {
                unreachable!("checked label")
            };
            kronecker(&parts[0], &parts[1], single(beta)?)
        }
        _ => Err(unsupported(g, h)),
    }
}

/// Outcome distribution of phase estimation for `alpha` over `H`:
/// `p(β) = m(β, α↓H) · d_β / d_α`.
pub fn restriction_distribution(
    g: &GroupSpec,
    h: &GroupSpec,
    alpha: &IrrepLabel,
) -> Result<ExactDistribution> {
    let d_alpha = g.label_dim(alpha)?;
    let mut entries = IndexMap::new();
    for beta in h.labels()? {
        let m = restriction_multiplicity_for(g, h, alpha, &beta)?;
        let p = ratio(h.label_dim(&beta)? * m, d_alpha.clone());
        entries.insert(beta, p);
    }
    finish(entries, matches!(h.kind, GroupKind::Wreath { .. }))
}

/// Outcome distribution of the induction algorithm for `beta`:
/// `p(α) = |H| d_α / (|G| d_β) · m(β, α↓H)`.
pub fn induction_distribution(
    h: &GroupSpec,
    beta: &IrrepLabel,
    g: &GroupSpec,
) -> Result<ExactDistribution> {
    let d_beta = h.label_dim(beta)?;
    let mut entries = IndexMap::new();
    for alpha in g.labels()? {
        let m = restriction_multiplicity_for(g, h, &alpha, beta)?;
        let p = ratio(
            &h.order * g.label_dim(&alpha)? * m,
            &g.order * &d_beta,
        );
        entries.insert(alpha, p);
    }
    finish(entries, false)
}

/// Weak Fourier sampling of the coset state of `H`:
/// `p(α) = m(1, α↓H) · d_α |H| / |G|`, with the multiplicity of the trivial
/// irrep taken as the average of `χ^α` over the elements of `H`.
pub fn hsp_distribution(g: &GroupSpec, h: &GroupSpec) -> Result<ExactDistribution> {
    let blocks = g.blocks().ok_or_else(|| unsupported(g, h))?;
    let elements = embedding(g, h)?;
    let mut cache = MnCache::new();
    let mut entries = IndexMap::new();
    for alpha in g.labels()? {
        let parts: Vec<Partition> = match &alpha {
            IrrepLabel::Single(p) => vec![p.clone()],
            IrrepLabel::Tuple(ps) => ps.clone(),
            _ => unreachable!("products of symmetric groups have partition labels"),
        };
        let mut sum = BigInt::zero();
        for x in &elements {
            let mut chi = BigInt::one();
            let mut offset = 0;
            for (p, &b) in parts.iter().zip(&blocks) {
                let piece = x.restrict(offset, b).ok_or_else(|| unsupported(g, h))?;
                chi *= cache.character(p, &piece.cycle_type())?;
                offset += b;
            }
            sum += chi;
        }
        let mult = BigRational::new(sum, BigInt::from(elements.len()));
        if !mult.is_integer() {
            return Err(Error::Numerical(format!(
                "trivial multiplicity {mult} in {alpha} is not an integer"
            )));
        }
        let p = mult * ratio(g.label_dim(&alpha)? * &h.order, g.order.clone());
        entries.insert(alpha, p);
    }
    finish(entries, false)
}

fn finish(entries: IndexMap<IrrepLabel, BigRational>, residual_allowed: bool) -> Result<ExactDistribution> {
    let sum = entries.values().fold(BigRational::zero(), |acc, p| acc + p);
    let residual = BigRational::one() - sum;
    if residual.is_negative() || (!residual_allowed && !residual.is_zero()) {
        return Err(Error::Numerical(format!(
            "distribution leaves residual mass {residual}"
        )));
    }
    Ok(ExactDistribution { entries, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{dim_irrep, partitions_of};
    use crate::wreath::wreath_irrep_dim;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn young(s: &str) -> GroupSpec {
        GroupSpec::young(s.parse().unwrap())
    }

    #[test]
    fn restriction_examples() {
        let d = restriction_distribution(&GroupSpec::symmetric(3), &young("2,1"), &IrrepLabel::Single(p("2,1"))).unwrap();
        assert_eq!(d.get(&IrrepLabel::Tuple(vec![p("2"), p("1")])), q(1, 2));
        let d = restriction_distribution(&GroupSpec::symmetric(5), &GroupSpec::product(2, 3), &IrrepLabel::Single(p("5"))).unwrap();
        assert_eq!(d.get(&IrrepLabel::Tuple(vec![p("2"), p("3")])), q(1, 1));
        let k = restriction_distribution(
            &GroupSpec::direct_square(3),
            &GroupSpec::symmetric(3),
            &IrrepLabel::Tuple(vec![p("2,1"), p("2,1")]),
        )
        .unwrap();
        assert_eq!(k.get(&IrrepLabel::Single(p("3"))), q(1, 4));
        assert_eq!(k.get(&IrrepLabel::Single(p("1,1,1"))), q(1, 4));
        assert_eq!(k.get(&IrrepLabel::Single(p("2,1"))), q(1, 2));
        assert!(restriction_distribution(&GroupSpec::symmetric(3), &GroupSpec::direct_square(1), &IrrepLabel::Single(p("3"))).is_err());
    }

    #[test]
    fn induction_and_hsp_examples() {
        let s3 = GroupSpec::symmetric(3);
        let s2 = GroupSpec::symmetric(2);
        let ind = induction_distribution(&s2, &s2.trivial_label(), &s3).unwrap();
        assert_eq!(ind.get(&IrrepLabel::Single(p("3"))), q(1, 3));
        assert_eq!(ind.get(&IrrepLabel::Single(p("2,1"))), q(2, 3));
        assert_eq!(ind.get(&IrrepLabel::Single(p("1,1,1"))), q(0, 1));
        assert_eq!(hsp_distribution(&s3, &s2).unwrap(), ind);
        let h = young("2,1");
        let ind = induction_distribution(&h, &h.trivial_label(), &s3).unwrap();
        assert_eq!(ind.get(&IrrepLabel::Single(p("2,1"))), q(2, 3));
        assert_eq!(hsp_distribution(&s3, &h).unwrap(), ind);
        let point = induction_distribution(&s3, &IrrepLabel::Single(p("2,1")), &s3).unwrap();
        assert_eq!(point.get(&IrrepLabel::Single(p("2,1"))), q(1, 1));
        let whole = hsp_distribution(&s3, &s3).unwrap();
        assert_eq!(whole.get(&IrrepLabel::Single(p("3"))), q(1, 1));
    }

    #[test]
    fn plancherel_from_trivial_subgroup() {
        for n in 1..=5 {
            let g = GroupSpec::symmetric(n);
            let d = hsp_distribution(&g, &GroupSpec::trivial(n).unwrap()).unwrap();
            for l in partitions_of(n).unwrap() {
                let dl = dim_irrep(&l);
                assert_eq!(d.get(&IrrepLabel::Single(l)), ratio(&dl * &dl, g.order.clone()));
            }
        }
    }

    #[test]
    fn wreath_residual() {
        let g = GroupSpec::symmetric(4);
        let h = GroupSpec::wreath(2, 2).unwrap();
        for nu in partitions_of(4).unwrap() {
            let d = restriction_distribution(&g, &h, &IrrepLabel::Single(nu.clone())).unwrap();
            assert!(d.is_normalized());
            let mut modeled = BigRational::zero();
            for l in partitions_of(2).unwrap() {
                for m in partitions_of(2).unwrap() {
                    let a = plethysm(&nu, &l, &m).unwrap();
                    modeled += q(a as i64 * wreath_irrep_dim(&l, &m) as i64, 1);
                }
            }
            let expected = BigRational::one() - modeled / BigRational::from(BigInt::from(dim_irrep(&nu)));
            assert_eq!(d.residual, expected);
        }
    }

    #[test]
    fn json_round_trip() {
        let d = hsp_distribution(&GroupSpec::symmetric(3), &GroupSpec::symmetric(2)).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert!(s.contains("\"1/3\""));
        assert_eq!(serde_json::from_str::<ExactDistribution>(&s).unwrap(), d);
    }
}
