//! Monte Carlo sampling of exact distributions and the shot-count bound for
//! recovering a multiplicity from its outcome frequency.
//!
//! Shots are split into batches of [`BATCH_SHOTS`]; batch `b` draws from
//! ChaCha8 seeded with the user seed on stream `b`. Counts therefore depend
//! only on the seed and the shot count, not on how batches are scheduled.

use indexmap::IndexMap;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::distributions::{rational_string, restriction_distribution, ExactDistribution};
use super::groups::{GroupSpec, IrrepLabel};
use crate::characters::{kronecker, DEFAULT_QUERY_CAP};
use crate::error::{check_limit, Error, Result};
use crate::partitions::Partition;

pub const BATCH_SHOTS: u64 = 1 << 16;
pub const MAX_SHOTS: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleReport {
    pub shots: u64,
    #[serde(with = "label_counts")]
    pub counts: IndexMap<IrrepLabel, u64>,
    pub seed: u64,
    pub estimate: Option<Estimate>,
    /// The `δ` used for `estimate`.
    pub confidence: Option<f64>,
}

/// Counts as a list of `{label, count}`, since labels are not JSON keys.
mod label_counts {
    use indexmap::IndexMap;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::qsim::groups::IrrepLabel;

    #[derive(Serialize, Deserialize)]
    struct Entry {
        label: IrrepLabel,
        count: u64,
    }

    pub fn serialize<S: Serializer>(m: &IndexMap<IrrepLabel, u64>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(m.iter().map(|(label, &count)| Entry {
            label: label.clone(),
            count,
        }))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<IndexMap<IrrepLabel, u64>, D::Error> {
        Ok(Vec::<Entry>::deserialize(d)?
            .into_iter()
            .map(|e| (e.label, e.count))
            .collect())
    }
}

/// Draws `shots` i.i.d. labels; every entry of `dist` gets a count (possibly
/// zero) and positive residual mass is counted under [`IrrepLabel::Other`].
pub fn sample(dist: &ExactDistribution, shots: u64, seed: u64) -> Result<SampleReport> {
    check_limit("shots", shots as u128, MAX_SHOTS as u128)?;
    let support = dist.support();
    let mut counts: IndexMap<IrrepLabel, u64> =
        dist.entries.keys().map(|l| (l.clone(), 0)).collect();
    if support.iter().any(|(l, _)| l == &IrrepLabel::Other) {
        counts.insert(IrrepLabel::Other, 0);
    }
    if shots > 0 {
        let weights = WeightedIndex::new(support.iter().map(|(_, p)| *p))
            .map_err(|e| Error::Numerical(format!("cannot sample: {e}")))?;
        let batches = shots.div_ceil(BATCH_SHOTS);
        let totals = (0..batches)
            .into_par_iter()
            .map(|b| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(b);
                let n = BATCH_SHOTS.min(shots - b * BATCH_SHOTS);
                let mut local = vec![0u64; support.len()];
                for _ in 0..n {
                    local[weights.sample(&mut rng)] += 1;
                }
                local
            })
            .reduce(
                || vec![0u64; support.len()],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
        for ((label, _), c) in support.iter().zip(totals) {
            counts[label] += c;
        }
    }
    Ok(SampleReport {
        shots,
        counts,
        seed,
        estimate: None,
        confidence: None,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub label: IrrepLabel,
    pub value: u64,
    pub count: u64,
    pub shots: u64,
    /// `ceil(2 (d_α/d_β)² ln(2/δ))`.
    pub required_shots: u64,
    pub delta: f64,
    /// `d_β / (2 d_α)`.
    pub half_width: f64,
    /// `d_α / d_β`, the linear sample-cost figure.
    pub linear_cost: f64,
}

/// Hoeffding shot count for estimating `p` to within `d_β/(2d_α)` with
/// failure probability at most `δ`.
pub fn required_shots(d_alpha: &BigUint, d_beta: &BigUint, delta: f64) -> Result<u64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain(format!("confidence δ = {delta} outside (0, 1)")));
    }
    let ratio = BigRational::new(BigInt::from(d_alpha.clone()), BigInt::from(d_beta.clone()))
        .to_f64()
        .ok_or_else(|| Error::Numerical("dimension ratio overflows".into()))?;
    let n = (2.0 * ratio * ratio * (2.0 / delta).ln()).ceil();
    if n > u64::MAX as f64 {
        return Err(Error::Numerical("required shots overflow u64".into()));
    }
    Ok(n as u64)
}

pub fn estimate_multiplicity(
    label: &IrrepLabel,
    count: u64,
    shots: u64,
    d_alpha: &BigUint,
    d_beta: &BigUint,
    delta: f64,
) -> Result<Estimate> {
    if label == &IrrepLabel::Other {
        return Err(Error::Domain("no multiplicity is defined for the residual label".into()));
    }
    if d_beta.is_zero() || count > shots {
        return Err(Error::Domain(format!("invalid counts {count}/{shots}")));
    }
    let required = required_shots(d_alpha, d_beta, delta)?;
    if shots < required {
        return Err(Error::UnderSampled { shots, required });
    }
    let scale = BigRational::new(BigInt::from(d_alpha.clone()), BigInt::from(d_beta.clone()));
    let value = (BigRational::new(BigInt::from(count), BigInt::from(shots)) * &scale).round();
    let linear_cost = scale.to_f64().unwrap_or(f64::INFINITY);
    Ok(Estimate {
        label: label.clone(),
        value: value.to_integer().to_u64().unwrap_or(u64::MAX),
        count,
        shots,
        required_shots: required,
        delta,
        half_width: 0.5 / linear_cost,
        linear_cost,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Restriction,
    Induction,
    Tie,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostComparison {
    /// `d_α / d_β`.
    #[serde(with = "rational_string")]
    pub restriction_cost: BigRational,
    /// `d_β |G| / (d_α |H|)`.
    #[serde(with = "rational_string")]
    pub induction_cost: BigRational,
    pub preferred: Algorithm,
}

/// Restriction is preferred when `(d_α/d_β)² < |G|/|H|`.
pub fn cost_comparison(
    g: &GroupSpec,
    h: &GroupSpec,
    alpha: &IrrepLabel,
    beta: &IrrepLabel,
) -> Result<CostComparison> {
    let da = BigInt::from(g.label_dim(alpha)?);
    let db = BigInt::from(h.label_dim(beta)?);
    let go = BigInt::from(g.order.clone());
    let ho = BigInt::from(h.order.clone());
    let restriction_cost = BigRational::new(da.clone(), db.clone());
    let induction_cost = BigRational::new(&db * &go, &da * &ho);
    let lhs = &restriction_cost * &restriction_cost;
    let rhs = BigRational::new(go, ho);
    let preferred = match lhs.cmp(&rhs) {
        std::cmp::Ordering::Less => Algorithm::Restriction,
        std::cmp::Ordering::Equal => Algorithm::Tie,
        std::cmp::Ordering::Greater => Algorithm::Induction,
    };
    Ok(CostComparison {
        restriction_cost,
        induction_cost,
        preferred,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub nu: Partition,
    pub kronecker: u64,
    pub tries: u64,
}

/// Samples `ν` from the Kronecker restriction distribution of `(λ, μ)` until
/// the character formula confirms `g_{λμν} > 0`.
pub fn search_nonzero_kronecker(
    lambda: &Partition,
    mu: &Partition,
    seed: u64,
    max_tries: u64,
) -> Result<SearchResult> {
    let n = lambda.n();
    if mu.n() != n {
        return Err(Error::Domain(format!("{lambda} and {mu} partition different sizes")));
    }
    check_limit("search size", n as u128, DEFAULT_QUERY_CAP as u128)?;
    let dist = restriction_distribution(
        &GroupSpec::direct_square(n),
        &GroupSpec::symmetric(n),
        &IrrepLabel::Tuple(vec![lambda.clone(), mu.clone()]),
    )?;
    let support = dist.support();
    let weights = WeightedIndex::new(support.iter().map(|(_, p)| *p))
        .map_err(|e| Error::Numerical(format!("cannot sample: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for tries in 1..=max_tries {
        let IrrepLabel::Single(nu) = &support[weights.sample(&mut rng)].0 else {
            unreachable!("symmetric group labels are partitions")
        };
        let g = kronecker(lambda, mu, nu)?;
        if g > 0 {
            return Ok(SearchResult {
                nu: nu.clone(),
                kronecker: g,
                tries,
            });
        }
    }
    Err(Error::Exhausted { tries: max_tries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::dim_irrep;
    use num_traits::One;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn report_json_round_trip() {
        let r = sample(&point_mass(), 10, 1).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains(r#"{"label":{"single":[2]},"count":10}"#), "{text}");
        assert_eq!(serde_json::from_str::<SampleReport>(&text).unwrap(), r);
    }

    fn point_mass() -> ExactDistribution {
        let mut entries = IndexMap::new();
        entries.insert(IrrepLabel::Single(p("2")), BigRational::one());
        entries.insert(IrrepLabel::Single(p("1,1")), BigRational::zero());
        ExactDistribution {
            entries,
            residual: BigRational::zero(),
        }
    }

    fn halves() -> ExactDistribution {
        let half = BigRational::new(1.into(), 2.into());
        let mut entries = IndexMap::new();
        entries.insert(IrrepLabel::Single(p("2")), half.clone());
        entries.insert(IrrepLabel::Single(p("1,1")), half);
        ExactDistribution {
            entries,
            residual: BigRational::zero(),
        }
    }

    #[test]
    fn sampling_examples() {
        let r = sample(&point_mass(), 1000, 3).unwrap();
        assert_eq!(r.counts[&IrrepLabel::Single(p("2"))], 1000);
        assert_eq!(r.counts[&IrrepLabel::Single(p("1,1"))], 0);

        let shots = 1_000_000;
        let r = sample(&halves(), shots, 11).unwrap();
        let sigma = (shots as f64 * 0.25).sqrt();
        for c in r.counts.values() {
            assert!((*c as f64 - shots as f64 / 2.0).abs() < 5.0 * sigma);
        }
        assert_eq!(r.counts.values().sum::<u64>(), shots);
        assert_eq!(sample(&halves(), 200_000, 5).unwrap(), sample(&halves(), 200_000, 5).unwrap());
        assert_ne!(sample(&halves(), 200_000, 5).unwrap(), sample(&halves(), 200_000, 6).unwrap());
    }

    #[test]
    fn sampling_is_independent_of_thread_count() {
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| sample(&halves(), 3 * BATCH_SHOTS + 17, 42).unwrap())
        };
        assert_eq!(run(1), run(8));
    }

    #[test]
    fn residual_is_sampled_as_other() {
        let g = GroupSpec::symmetric(4);
        let h = GroupSpec::wreath(2, 2).unwrap();
        let d = restriction_distribution(&g, &h, &IrrepLabel::Single(p("3,1"))).unwrap();
        assert!(d.residual > BigRational::zero());
        let r = sample(&d, 10_000, 1).unwrap();
        assert!(r.counts[&IrrepLabel::Other] > 0);
        assert!(estimate_multiplicity(&IrrepLabel::Other, 10, 10_000, &3u32.into(), &1u32.into(), 0.1).is_err());
    }

    #[test]
    fn estimator_examples() {
        let two: BigUint = 2u32.into();
        let one: BigUint = 1u32.into();
        let label = IrrepLabel::Single(p("2"));
        // p̂ exactly m·d_β/d_α
        assert_eq!(estimate_multiplicity(&label, 500, 1000, &two, &one, 0.01).unwrap().value, 1);
        assert_eq!(required_shots(&two, &one, 1e-3).unwrap(), (8.0 * 2000f64.ln()).ceil() as u64);
        assert!(matches!(
            estimate_multiplicity(&label, 5, 10, &two, &one, 1e-3),
            Err(Error::UnderSampled { shots: 10, .. })
        ));

        let g = GroupSpec::symmetric(3);
        let h = GroupSpec::young("2,1".parse().unwrap());
        let alpha = IrrepLabel::Single(p("2,1"));
        let d = restriction_distribution(&g, &h, &alpha).unwrap();
        let r = sample(&d, 10_000, 7).unwrap();
        let triv = h.trivial_label();
        let e = estimate_multiplicity(&triv, r.counts[&triv], r.shots, &dim_irrep(&p("2,1")), &one, 1e-3).unwrap();
        assert_eq!(e.value, 1);

        let g = GroupSpec::direct_square(3);
        let alpha = IrrepLabel::Tuple(vec![p("2,1"), p("2,1")]);
        let d = restriction_distribution(&g, &GroupSpec::symmetric(3), &alpha).unwrap();
        let r = sample(&d, 10_000, 7).unwrap();
        let target = IrrepLabel::Single(p("2,1"));
        let e = estimate_multiplicity(&target, r.counts[&target], r.shots, &4u32.into(), &two, 1e-3).unwrap();
        assert_eq!(e.value, 1);
    }

    #[test]
    fn cost_examples() {
        let s3 = GroupSpec::symmetric(3);
        let c = cost_comparison(&s3, &s3, &IrrepLabel::Single(p("2,1")), &IrrepLabel::Single(p("2,1"))).unwrap();
        assert_eq!(c.preferred, Algorithm::Tie);
        assert_eq!(c.restriction_cost, c.induction_cost);
        let s2 = GroupSpec::symmetric(2);
        let c = cost_comparison(&s3, &s2, &IrrepLabel::Single(p("2,1")), &s2.trivial_label()).unwrap();
        assert_eq!(c.restriction_cost, BigRational::from_integer(2.into()));
        assert_eq!(c.induction_cost, BigRational::new(3.into(), 2.into()));
        assert_eq!(c.preferred, Algorithm::Induction);
        let sq = GroupSpec::direct_square(3);
        let c = cost_comparison(&sq, &s3, &IrrepLabel::Tuple(vec![p("2,1"), p("2,1")]), &IrrepLabel::Single(p("2,1"))).unwrap();
        assert_eq!(c.restriction_cost, BigRational::from_integer(2.into()));
    }

    #[test]
    fn search_examples() {
        let r = search_nonzero_kronecker(&p("4"), &p("4"), 1, 10).unwrap();
        assert_eq!((r.nu, r.tries), (p("4"), 1));
        for seed in 0..10 {
            let r = search_nonzero_kronecker(&p("2,1"), &p("2,1"), seed, 10).unwrap();
            assert_eq!(r.kronecker, 1);
        }
        let r = search_nonzero_kronecker(&p("4"), &p("2,2"), 3, 10).unwrap();
        assert_eq!(r.nu, p("2,2"));
        assert_eq!(
            search_nonzero_kronecker(&p("3,1"), &p("2,1,1"), 9, 5).unwrap(),
            search_nonzero_kronecker(&p("3,1"), &p("2,1,1"), 9, 5).unwrap()
        );
        assert!(matches!(search_nonzero_kronecker(&p("2"), &p("2"), 0, 0), Err(Error::Exhausted { tries: 0 })));
    }
}
