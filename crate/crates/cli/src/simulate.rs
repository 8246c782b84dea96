use indexmap::IndexMap;
use num_bigint::BigUint;
use num_traits::Zero;
use repmult::qsim::{
    cost_comparison, estimate_multiplicity, hsp_distribution, induction_distribution,
    restriction_distribution, restriction_multiplicity_for, sample, CostComparison, ExactDistribution,
    GroupSpec, IrrepLabel, SampleReport,
};
use repmult::Partition;
use serde::{Deserialize, Serialize};

use crate::coefficients::Instance;
use crate::record::SCHEMA_VERSION;
use crate::{CliError, CliResult};

pub const DEFAULT_DELTA: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SimAlgorithm {
    Restriction,
    Induction,
    Hsp,
}

#[derive(Debug, Clone)]
pub enum Simulation {
    Coefficient(Instance),
    /// `r^λ ⊗ r^μ` restricted to the diagonal with no target `ν`.
    KroneckerPair { lambda: Partition, mu: Partition },
    Hsp { group: GroupSpec, subgroup: GroupSpec },
}

#[derive(Debug, Clone)]
pub struct SimulateOptions {
    pub algorithm: Option<SimAlgorithm>,
    pub shots: u64,
    pub seed: u64,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationRecord {
    pub schema: u32,
    pub problem: String,
    pub algorithm: SimAlgorithm,
    pub inputs: IndexMap<String, Vec<usize>>,
    pub group: GroupSpec,
    pub subgroup: GroupSpec,
    pub alpha: Option<IrrepLabel>,
    pub beta: Option<IrrepLabel>,
    /// Label whose frequency estimates the multiplicity.
    pub target: Option<IrrepLabel>,
    pub exact_multiplicity: Option<u64>,
    pub exact: ExactDistribution,
    pub report: SampleReport,
    pub cost: Option<CostComparison>,
    pub warnings: Vec<String>,
}

struct Setup {
    problem: String,
    inputs: IndexMap<String, Vec<usize>>,
    g: GroupSpec,
    h: GroupSpec,
    alpha: Option<IrrepLabel>,
    beta: Option<IrrepLabel>,
}

impl Simulation {
    fn setup(&self) -> CliResult<Setup> {
        Ok(match self {
            Simulation::Coefficient(inst) => {
                let (g, h, alpha, beta) = inst.groups()?;
                Setup {
                    problem: inst.problem().to_string(),
                    inputs: inst.inputs(),
                    g,
                    h,
                    alpha: Some(alpha),
                    beta: Some(beta),
                }
            }
            Simulation::KroneckerPair { lambda, mu } => {
                if lambda.n() != mu.n() {
                    return Err(CliError::Usage(format!("{lambda} and {mu} partition different sizes")));
                }
                Setup {
                    problem: "kronecker".into(),
                    inputs: [("lambda", lambda), ("mu", mu)]
                        .into_iter()
                        .map(|(k, p)| (k.to_string(), p.parts().to_vec()))
                        .collect(),
                    g: GroupSpec::direct_square(lambda.n()),
                    h: GroupSpec::symmetric(lambda.n()),
                    alpha: Some(IrrepLabel::Tuple(vec![lambda.clone(), mu.clone()])),
                    beta: None,
                }
            }
            Simulation::Hsp { group, subgroup } => Setup {
                problem: "hsp".into(),
                inputs: IndexMap::new(),
                g: group.clone(),
                h: subgroup.clone(),
                alpha: None,
                beta: Some(subgroup.trivial_label()),
            },
        })
    }

    fn default_algorithm(&self) -> SimAlgorithm {
        match self {
            Simulation::Hsp { .. } => SimAlgorithm::Hsp,
            _ => SimAlgorithm::Restriction,
        }
    }

    pub fn run(&self, opts: &SimulateOptions) -> CliResult<SimulationRecord> {
        let Setup {
            problem,
            inputs,
            g,
            h,
            alpha,
            beta,
        } = self.setup()?;
        let algorithm = opts.algorithm.unwrap_or_else(|| self.default_algorithm());
        let need = |l: &Option<IrrepLabel>, what: &str| {
            l.clone()
                .ok_or_else(|| CliError::Usage(format!("{algorithm:?} sampling needs {what}")))
        };

        // (distribution, target label, numerator and denominator of the
        // probability-to-multiplicity scale, exact multiplicity)
        let (exact, target, scale, multiplicity) = match algorithm {
            SimAlgorithm::Restriction => {
                let a = need(&alpha, "an irrep α of G")?;
                let dist = restriction_distribution(&g, &h, &a)?;
                match &beta {
                    Some(b) => {
                        let m = restriction_multiplicity_for(&g, &h, &a, b)?;
                        let scale = (g.label_dim(&a)?, h.label_dim(b)?);
                        (dist, Some(b.clone()), Some(scale), Some(m))
                    }
                    None => (dist, None, None, None),
                }
            }
            SimAlgorithm::Induction => {
                let b = need(&beta, "an irrep β of H")?;
                let dist = induction_distribution(&h, &b, &g)?;
                match &alpha {
                    Some(a) => {
                        let m = restriction_multiplicity_for(&g, &h, a, &b)?;
                        let scale = (
                            h.label_dim(&b)? * &g.order,
                            g.label_dim(a)? * &h.order,
                        );
                        (dist, Some(a.clone()), Some(scale), Some(m))
                    }
                    None => (dist, None, None, None),
                }
            }
            SimAlgorithm::Hsp => {
                let dist = hsp_distribution(&g, &h)?;
                // the target is the trivial-subgroup multiplicity of α, which
                // is the coefficient itself only for Kostka numbers
                match &alpha {
                    Some(a) => {
                        let m = restriction_multiplicity_for(&g, &h, a, &h.trivial_label())?;
                        let scale = (g.order.clone(), g.label_dim(a)? * &h.order);
                        (dist, Some(a.clone()), Some(scale), Some(m))
                    }
                    None => (dist, None, None, None),
                }
            }
        };

        let mut report = sample(&exact, opts.shots, opts.seed)?;
        let mut warnings = Vec::new();
        if let (Some(t), Some((num, den))) = (&target, &scale) {
            if opts.shots > 0 {
                let count = report.counts.get(t).copied().unwrap_or(0);
                match estimate(t, count, opts.shots, num, den, opts.delta) {
                    Ok(e) => {
                        report.estimate = Some(e);
                        report.confidence = Some(opts.delta);
                    }
                    Err(repmult::Error::UnderSampled { shots, required }) => warnings.push(format!(
                        "under-sampled: {shots} shots < {required} needed for confidence 1 - {}",
                        opts.delta
                    )),
                    Err(e) => return Err(e.into()),
                }
            }
        }
        let cost = match (&alpha, &beta) {
            (Some(a), Some(b)) => Some(cost_comparison(&g, &h, a, b)?),
            _ => None,
        };
        Ok(SimulationRecord {
            schema: SCHEMA_VERSION,
            problem,
            algorithm,
            inputs,
            group: g,
            subgroup: h,
            alpha,
            beta,
            target,
            exact_multiplicity: multiplicity,
            exact,
            report,
            cost,
            warnings,
        })
    }
}

fn estimate(
    label: &IrrepLabel,
    count: u64,
    shots: u64,
    num: &BigUint,
    den: &BigUint,
    delta: f64,
) -> repmult::Result<repmult::qsim::Estimate> {
    if den.is_zero() {
        return Err(repmult::Error::Domain("zero-dimensional label".into()));
    }
    estimate_multiplicity(label, count, shots, num, den, delta)
}
