use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use repmult::qsim::{search_nonzero_kronecker, GroupSpec, IrrepLabel};
use repmult::{Composition, Partition};
use serde::Serialize;

use repmult_cli::bench::{run_bench, write_csv, BenchOptions};
use repmult_cli::simulate::{SimAlgorithm, SimulateOptions, Simulation, DEFAULT_DELTA};
use repmult_cli::{
    with_workers, write_json, CliError, CliResult, Format, Instance, Problem, RunOptions, EXIT_OK,
    SCHEMA_VERSION,
};

#[derive(Debug, Parser)]
#[command(name = "repmult", version, about = "Symmetric-group multiplicities and their quantum sampling algorithms")]
struct Cli {
    /// Output format; bench defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Global seed; the flag wins over the environment.
    #[arg(long, global = true, env = "REPMULT_SEED")]
    seed: Option<u64>,

    /// Worker threads for parallel sections.
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Omit wall-clock timings so output is reproducible byte for byte.
    #[arg(long, global = true)]
    no_timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Kostka number K_{shape,content}.
    Kostka {
        #[arg(long, alias = "nu")]
        shape: Partition,
        #[arg(long, alias = "mu")]
        content: Composition,
        #[arg(long)]
        distribution: bool,
    },
    /// Littlewood-Richardson coefficient c^nu_{l,m}.
    Lr {
        #[arg(long)]
        nu: Partition,
        #[arg(long = "l", alias = "lambda")]
        lambda: Partition,
        #[arg(long = "m", alias = "mu")]
        mu: Partition,
        #[arg(long)]
        distribution: bool,
    },
    /// Kronecker coefficient g_{l,m,n}.
    Kronecker {
        #[arg(long = "l", alias = "lambda")]
        lambda: Partition,
        #[arg(long = "m", alias = "mu")]
        mu: Partition,
        #[arg(long = "n", alias = "nu")]
        nu: Partition,
        #[arg(long)]
        distribution: bool,
    },
    /// Plethysm coefficient: multiplicity of l wr m in nu restricted to S_c wr S_d.
    Plethysm {
        #[arg(long)]
        nu: Partition,
        #[arg(long = "l", alias = "lambda")]
        lambda: Partition,
        #[arg(long = "m", alias = "mu")]
        mu: Partition,
        #[arg(long)]
        distribution: bool,
    },
    /// Exact output distribution and Monte Carlo shots of a sampling algorithm.
    Simulate(SimulateArgs),
    /// Timings and sample costs over every instance up to --max-n.
    Bench {
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = Problem::ALL.to_vec())]
        problems: Vec<Problem>,
        /// Write to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample nu from the Kronecker distribution until g_{l,m,nu} > 0.
    Search {
        #[arg(long = "l", alias = "lambda")]
        lambda: Partition,
        #[arg(long = "m", alias = "mu")]
        mu: Partition,
        #[arg(long, default_value_t = 1000)]
        max_tries: u64,
    },
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long, global = true, default_value_t = 0)]
    shots: u64,
    /// Defaults to restriction, or hsp for the hsp problem.
    #[arg(long, global = true, value_enum)]
    algorithm: Option<SimAlgorithm>,
    /// Failure probability for the Hoeffding shot count.
    #[arg(long, global = true, default_value_t = DEFAULT_DELTA)]
    delta: f64,
    #[command(subcommand)]
    problem: SimProblem,
}

#[derive(Debug, Subcommand)]
enum SimProblem {
    Kostka {
        #[arg(long, alias = "shape")]
        nu: Partition,
        #[arg(long, alias = "content")]
        mu: Composition,
    },
    Lr {
        #[arg(long)]
        nu: Partition,
        #[arg(long = "l", alias = "lambda")]
        lambda: Partition,
        #[arg(long = "m", alias = "mu")]
        mu: Partition,
    },
    /// Without --n only the exact distribution over nu is meaningful.
    Kronecker {
        #[arg(long = "l", alias = "lambda")]
        lambda: Partition,
        #[arg(long = "m", alias = "mu")]
        mu: Partition,
        #[arg(long = "n", alias = "nu")]
        nu: Option<Partition>,
    },
    Plethysm {
        #[arg(long)]
        nu: Partition,
        #[arg(long = "l", alias = "lambda")]
        lambda: Partition,
        #[arg(long = "m", alias = "mu")]
        mu: Partition,
    },
    /// Weak Fourier sampling of the coset state of a subgroup of S_n.
    Hsp {
        #[arg(long)]
        n: usize,
        /// e.g. young:2,1 or wreath:2,2
        #[arg(long)]
        subgroup: GroupSpec,
        /// Ambient group; defaults to symmetric:N.
        #[arg(long)]
        group: Option<GroupSpec>,
    },
}

#[derive(Serialize)]
struct SearchRecord {
    schema: u32,
    problem: &'static str,
    lambda: Partition,
    mu: Partition,
    seed: u64,
    found: bool,
    nu: Option<Partition>,
    kronecker: Option<u64>,
    tries: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let workers = cli.workers;
    match with_workers(workers, || execute(cli)).and_then(|r| r) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn coefficient_instance(cmd: &Command) -> Option<(Instance, bool)> {
    Some(match cmd {
        Command::Kostka { shape, content, distribution } => (
            Instance::Kostka {
                shape: shape.clone(),
                content: content.clone(),
            },
            *distribution,
        ),
        Command::Lr { nu, lambda, mu, distribution } => (
            Instance::Lr {
                nu: nu.clone(),
                lambda: lambda.clone(),
                mu: mu.clone(),
            },
            *distribution,
        ),
        Command::Kronecker { lambda, mu, nu, distribution } => (
            Instance::Kronecker {
                lambda: lambda.clone(),
                mu: mu.clone(),
                nu: nu.clone(),
            },
            *distribution,
        ),
        Command::Plethysm { nu, lambda, mu, distribution } => (
            Instance::Plethysm {
                nu: nu.clone(),
                lambda: lambda.clone(),
                mu: mu.clone(),
            },
            *distribution,
        ),
        _ => return None,
    })
}

fn execute(cli: Cli) -> CliResult<i32> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = dispatch(&cli, &mut out)?;
    out.flush()?;
    Ok(code)
}

fn dispatch(cli: &Cli, out: &mut impl Write) -> CliResult<i32> {
    let format = cli.format;
    if let Some((inst, distribution)) = coefficient_instance(&cli.command) {
        let opts = RunOptions {
            timing: !cli.no_timing,
            distribution,
            seed: cli.seed,
            ..RunOptions::default()
        };
        let record = inst.run(&opts, None)?;
        match format.unwrap_or_default() {
            Format::Json => write_json(out, &record)?,
            Format::Csv => write_csv(std::slice::from_ref(&record), &mut *out)?,
        }
        return check_consistent(std::slice::from_ref(&record), out);
    }
    match &cli.command {
        Command::Simulate(args) => simulate(cli, args, out),
        Command::Bench {
            max_n,
            min_n,
            problems,
            out: path,
        } => {
            let opts = BenchOptions {
                min_n: *min_n,
                max_n: *max_n,
                problems: problems.clone(),
                timing: !cli.no_timing,
                seed: cli.seed,
            };
            let records = run_bench(&opts)?;
            let mut sink: Box<dyn Write> = match path {
                Some(p) => Box::new(BufWriter::new(File::create(p)?)),
                None => Box::new(&mut *out),
            };
            match format.unwrap_or(Format::Csv) {
                Format::Csv => write_csv(&records, &mut sink)?,
                Format::Json => write_json(&mut sink, &records)?,
            }
            sink.flush()?;
            drop(sink);
            check_consistent(&records, out)
        }
        Command::Search { lambda, mu, max_tries } => {
            let seed = cli.seed.unwrap_or(0);
            let (found, nu, g, tries) = match search_nonzero_kronecker(lambda, mu, seed, *max_tries) {
                Ok(r) => (true, Some(r.nu), Some(r.kronecker), r.tries),
                Err(repmult::Error::Exhausted { tries }) => (false, None, None, tries),
                Err(e) => return Err(e.into()),
            };
            let record = SearchRecord {
                schema: SCHEMA_VERSION,
                problem: "search",
                lambda: lambda.clone(),
                mu: mu.clone(),
                seed,
                found,
                nu,
                kronecker: g,
                tries,
            };
            match format.unwrap_or_default() {
                Format::Json => write_json(out, &record)?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    w.write_record(["lambda", "mu", "seed", "found", "nu", "kronecker", "tries"])?;
                    w.write_record([
                        lambda.to_string(),
                        mu.to_string(),
                        seed.to_string(),
                        found.to_string(),
                        record.nu.as_ref().map(|p| p.to_string()).unwrap_or_default(),
                        g.map(|v| v.to_string()).unwrap_or_default(),
                        tries.to_string(),
                    ])?;
                    w.flush()?;
                }
            }
            Ok(EXIT_OK)
        }
        _ => unreachable!("coefficient commands handled above"),
    }
}

fn simulate(cli: &Cli, args: &SimulateArgs, out: &mut impl Write) -> CliResult<i32> {
    let sim = match &args.problem {
        SimProblem::Kostka { nu, mu } => Simulation::Coefficient(Instance::Kostka {
            shape: nu.clone(),
            content: mu.clone(),
        }),
        SimProblem::Lr { nu, lambda, mu } => Simulation::Coefficient(Instance::Lr {
            nu: nu.clone(),
            lambda: lambda.clone(),
            mu: mu.clone(),
        }),
        SimProblem::Kronecker { lambda, mu, nu: Some(nu) } => Simulation::Coefficient(Instance::Kronecker {
            lambda: lambda.clone(),
            mu: mu.clone(),
            nu: nu.clone(),
        }),
        SimProblem::Kronecker { lambda, mu, nu: None } => Simulation::KroneckerPair {
            lambda: lambda.clone(),
            mu: mu.clone(),
        },
        SimProblem::Plethysm { nu, lambda, mu } => Simulation::Coefficient(Instance::Plethysm {
            nu: nu.clone(),
            lambda: lambda.clone(),
            mu: mu.clone(),
        }),
        SimProblem::Hsp { n, subgroup, group } => {
            let group = group.clone().unwrap_or_else(|| GroupSpec::symmetric(*n));
            if group.degree() != *n {
                return Err(CliError::Usage(format!("{group} does not act on {n} points")));
            }
            Simulation::Hsp {
                group,
                subgroup: subgroup.clone(),
            }
        }
    };
    let opts = SimulateOptions {
        algorithm: args.algorithm,
        shots: args.shots,
        seed: cli.seed.unwrap_or(0),
        delta: args.delta,
    };
    let record = sim.run(&opts)?;
    for w in &record.warnings {
        eprintln!("warning: {w}");
    }
    match cli.format.unwrap_or_default() {
        Format::Json => write_json(out, &record)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["label", "probability", "count"])?;
            let mut rows: Vec<(IrrepLabel, String)> = record
                .exact
                .entries
                .iter()
                .map(|(l, p)| (l.clone(), p.to_string()))
                .collect();
            if record.exact.residual != num_rational::BigRational::from_integer(0.into()) {
                rows.push((IrrepLabel::Other, record.exact.residual.to_string()));
            }
            for (label, p) in rows {
                let count = record.report.counts.get(&label).copied().unwrap_or(0);
                w.write_record([label.to_string(), p, count.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

fn check_consistent(records: &[repmult_cli::ResultRecord], _out: &mut impl Write) -> CliResult<i32> {
    let bad: Vec<String> = records
        .iter()
        .filter(|r| !r.consistent)
        .map(|r| format!("{} {:?}: {:?}", r.problem, r.inputs, r.backends))
        .collect();
    if bad.is_empty() {
        Ok(EXIT_OK)
    } else {
        Err(CliError::Mismatch(bad.join("; ")))
    }
}
