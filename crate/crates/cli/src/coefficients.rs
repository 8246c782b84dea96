use std::time::Instant;

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use repmult::characters::{
    kronecker, lr_via_characters, restriction_multiplicity, CharacterTable, YoungSubgroupSpec,
};
use repmult::partitions::dim_irrep;
use repmult::qsim::{restriction_distribution, GroupSpec, IrrepLabel};
use repmult::tableaux::{kostka, lr_coefficient};
use repmult::wreath::{plethysm, plethysm_via_projector, wreath_irrep_dim};
use repmult::yor::{kostka_via_projector, kronecker_via_projector, lr_via_projector};
use repmult::{Composition, Partition};

use crate::record::{Problem, ResultRecord, SCHEMA_VERSION};
use crate::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Instance {
    Kostka { shape: Partition, content: Composition },
    Lr { nu: Partition, lambda: Partition, mu: Partition },
    Kronecker { lambda: Partition, mu: Partition, nu: Partition },
    Plethysm { nu: Partition, lambda: Partition, mu: Partition },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Tableaux,
    Characters,
    CharacterTable,
    YorProjector,
    Wreath,
    WreathProjector,
}

impl Backend {
    pub fn as_str(self) -> &'static str {
        match self {
            Backend::Tableaux => "tableaux",
            Backend::Characters => "characters",
            Backend::CharacterTable => "character_table",
            Backend::YorProjector => "yor_projector",
            Backend::Wreath => "wreath",
            Backend::WreathProjector => "wreath_projector",
        }
    }

    fn is_projector(self) -> bool {
        matches!(self, Backend::YorProjector | Backend::WreathProjector)
    }
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub timing: bool,
    /// Projector backends run only up to this `n`; they are dense and slow.
    pub projector_max_n: usize,
    pub distribution: bool,
    pub seed: Option<u64>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            timing: true,
            projector_max_n: 8,
            distribution: false,
            seed: None,
        }
    }
}

fn dim(p: &Partition) -> BigInt {
    BigInt::from(dim_irrep(p))
}

impl Instance {
    pub fn problem(&self) -> Problem {
        match self {
            Instance::Kostka { .. } => Problem::Kostka,
            Instance::Lr { .. } => Problem::Lr,
            Instance::Kronecker { .. } => Problem::Kronecker,
            Instance::Plethysm { .. } => Problem::Plethysm,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Instance::Kostka { shape, .. } => shape.n(),
            Instance::Lr { nu, .. } | Instance::Plethysm { nu, .. } => nu.n(),
            Instance::Kronecker { lambda, .. } => lambda.n(),
        }
    }

    pub fn inputs(&self) -> IndexMap<String, Vec<usize>> {
        let entries: Vec<(&str, &[usize])> = match self {
            Instance::Kostka { shape, content } => vec![("shape", shape.parts()), ("content", content.parts())],
            Instance::Lr { nu, lambda, mu } | Instance::Plethysm { nu, lambda, mu } => {
                vec![("nu", nu.parts()), ("lambda", lambda.parts()), ("mu", mu.parts())]
            }
            Instance::Kronecker { lambda, mu, nu } => {
                vec![("lambda", lambda.parts()), ("mu", mu.parts()), ("nu", nu.parts())]
            }
        };
        entries.into_iter().map(|(k, v)| (k.to_string(), v.to_vec())).collect()
    }

    /// Size compatibility per problem.
    pub fn validate(&self) -> CliResult<()> {
        let ok = match self {
            Instance::Kostka { shape, content } => shape.n() == content.n(),
            Instance::Lr { nu, lambda, mu } => nu.n() == lambda.n() + mu.n(),
            Instance::Kronecker { lambda, mu, nu } => lambda.n() == mu.n() && mu.n() == nu.n(),
            Instance::Plethysm { nu, lambda, mu } => {
                !lambda.is_empty() && !mu.is_empty() && nu.n() == lambda.n() * mu.n()
            }
        };
        if ok {
            Ok(())
        } else {
            Err(CliError::Usage(format!(
                "incompatible sizes for {}: {:?}",
                self.problem(),
                self.inputs()
            )))
        }
    }

    /// `(G, H, α, β)` of the restriction algorithm for this coefficient.
    pub fn groups(&self) -> CliResult<(GroupSpec, GroupSpec, IrrepLabel, IrrepLabel)> {
        self.validate()?;
        Ok(match self {
            Instance::Kostka { shape, content } => {
                let h = GroupSpec::young(content.clone());
                let beta = h.trivial_label();
                (GroupSpec::symmetric(shape.n()), h, IrrepLabel::Single(shape.clone()), beta)
            }
            Instance::Lr { nu, lambda, mu } => {
                if lambda.is_empty() || mu.is_empty() {
                    return Err(CliError::Usage("LR simulation needs two nonempty factors".into()));
                }
                (
                    GroupSpec::symmetric(nu.n()),
                    GroupSpec::product(lambda.n(), mu.n()),
                    IrrepLabel::Single(nu.clone()),
                    IrrepLabel::Tuple(vec![lambda.clone(), mu.clone()]),
                )
            }
            Instance::Kronecker { lambda, mu, nu } => (
                GroupSpec::direct_square(nu.n()),
                GroupSpec::symmetric(nu.n()),
                IrrepLabel::Tuple(vec![lambda.clone(), mu.clone()]),
                IrrepLabel::Single(nu.clone()),
            ),
            Instance::Plethysm { nu, lambda, mu } => (
                GroupSpec::symmetric(nu.n()),
                GroupSpec::wreath(lambda.n(), mu.n())?,
                IrrepLabel::Single(nu.clone()),
                IrrepLabel::Wreath {
                    inner: lambda.clone(),
                    outer: mu.clone(),
                },
            ),
        })
    }

    /// `d_α / d_β`, the restriction algorithm's sample-cost figure.
    pub fn sample_cost(&self) -> BigRational {
        let (num, den) = match self {
            Instance::Kostka { shape, .. } => (dim(shape), BigInt::from(1)),
            Instance::Lr { nu, lambda, mu } => (dim(nu), dim(lambda) * dim(mu)),
            Instance::Kronecker { lambda, mu, nu } => (dim(lambda) * dim(mu), dim(nu)),
            Instance::Plethysm { nu, lambda, mu } => (dim(nu), BigInt::from(wreath_irrep_dim(lambda, mu))),
        };
        BigRational::new(num, den)
    }

    pub fn backends(&self) -> &'static [Backend] {
        match self {
            Instance::Kostka { .. } | Instance::Lr { .. } => {
                &[Backend::Tableaux, Backend::Characters, Backend::YorProjector]
            }
            Instance::Kronecker { .. } => &[Backend::Characters, Backend::CharacterTable, Backend::YorProjector],
            Instance::Plethysm { .. } => &[Backend::Wreath, Backend::WreathProjector],
        }
    }

    /// `table` is reused by [`Backend::CharacterTable`] when it has the right `n`.
    pub fn evaluate(&self, backend: Backend, table: Option<&CharacterTable>) -> repmult::Result<u64> {
        use Backend as B;
        match (self, backend) {
            (Instance::Kostka { shape, content }, B::Tableaux) => kostka(shape, content),
            (Instance::Kostka { shape, content }, B::Characters) => {
                let trivial: Vec<Partition> = content.parts().iter().map(|&m| Partition::row(m)).collect();
                restriction_multiplicity(shape, &YoungSubgroupSpec::new(content.clone()), &trivial)
            }
            (Instance::Kostka { shape, content }, B::YorProjector) => kostka_via_projector(shape, content),
            (Instance::Lr { nu, lambda, mu }, B::Tableaux) => lr_coefficient(nu, lambda, mu),
            (Instance::Lr { nu, lambda, mu }, B::Characters) => lr_via_characters(nu, lambda, mu),
            (Instance::Lr { nu, lambda, mu }, B::YorProjector) => lr_via_projector(nu, lambda, mu),
            (Instance::Kronecker { lambda, mu, nu }, B::Characters) => kronecker(lambda, mu, nu),
            (Instance::Kronecker { lambda, mu, nu }, B::CharacterTable) => match table {
                Some(t) if t.n() == nu.n() => t.kronecker(lambda, mu, nu),
                _ => CharacterTable::build(nu.n())?.kronecker(lambda, mu, nu),
            },
            (Instance::Kronecker { lambda, mu, nu }, B::YorProjector) => kronecker_via_projector(lambda, mu, nu),
            (Instance::Plethysm { nu, lambda, mu }, B::Wreath) => plethysm(nu, lambda, mu),
            (Instance::Plethysm { nu, lambda, mu }, B::WreathProjector) => plethysm_via_projector(nu, lambda, mu),
            (i, b) => Err(repmult::Error::Unsupported(format!(
                "backend {} for {}",
                b.as_str(),
                i.problem()
            ))),
        }
    }

    /// Runs every applicable backend. Backends stopped by a resource cap are
    /// listed as skipped; fewer than two completed backends is an error.
    pub fn run(&self, opts: &RunOptions, table: Option<&CharacterTable>) -> CliResult<ResultRecord> {
        self.validate()?;
        let mut backends = IndexMap::new();
        let mut timing = IndexMap::new();
        let mut skipped = Vec::new();
        let mut cap_error = None;
        for &b in self.backends() {
            if b.is_projector() && self.n() > opts.projector_max_n {
                skipped.push(b.as_str().to_string());
                continue;
            }
            let start = Instant::now();
            match self.evaluate(b, table) {
                Ok(v) => {
                    let micros = start.elapsed().as_nanos().div_ceil(1000) as u64;
                    backends.insert(b.as_str().to_string(), v);
                    timing.insert(b.as_str().to_string(), micros);
                }
                Err(e @ repmult::Error::SizeLimit { .. }) => {
                    skipped.push(b.as_str().to_string());
                    cap_error.get_or_insert(e);
                }
                Err(e) => return Err(e.into()),
            }
        }
        if backends.len() < 2 {
            return Err(match cap_error {
                Some(e) => e.into(),
                None => CliError::Usage(format!("fewer than two backends apply to {:?}", self.inputs())),
            });
        }
        let first = *backends.values().next().expect("two backends ran");
        let consistent = backends.values().all(|&v| v == first);
        let distribution = if opts.distribution {
            let (g, h, alpha, _) = self.groups()?;
            Some(restriction_distribution(&g, &h, &alpha)?)
        } else {
            None
        };
        Ok(ResultRecord {
            schema: SCHEMA_VERSION,
            problem: self.problem(),
            inputs: self.inputs(),
            value: first,
            consistent,
            backends,
            skipped,
            sample_cost: self.sample_cost(),
            distribution,
            timing: opts.timing.then_some(timing),
            seed: opts.seed,
        })
    }
}
