use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use repmult::characters::CharacterTable;
use repmult::partitions::partitions_of;
use repmult::wreath::{wreath_order, DEFAULT_ORDER_CAP};
use repmult::Composition;

use crate::coefficients::{Instance, RunOptions};
use crate::record::{Problem, ResultRecord};
use crate::{CliError, CliResult};

pub const BENCH_MAX_N: usize = 10;
/// Projector backends are dense; the harness runs them on small `n` only.
pub const BENCH_PROJECTOR_MAX_N: usize = 6;

#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub min_n: usize,
    pub max_n: usize,
    pub problems: Vec<Problem>,
    pub timing: bool,
    pub seed: Option<u64>,
}

/// Deterministic instance list for one problem and size.
pub fn instances(problem: Problem, n: usize) -> CliResult<Vec<Instance>> {
    let ps = partitions_of(n)?;
    let mut out = Vec::new();
    match problem {
        Problem::Kostka => {
            for shape in &ps {
                for content in &ps {
                    out.push(Instance::Kostka {
                        shape: shape.clone(),
                        content: Composition::from(content),
                    });
                }
            }
        }
        Problem::Lr => {
            // pairs not contained in ν are zero by shape alone
            for nu in &ps {
                for a in 1..n {
                    for lambda in partitions_of(a)?.iter().filter(|l| nu.contains(l)) {
                        for mu in partitions_of(n - a)?.iter().filter(|m| nu.contains(m)) {
                            out.push(Instance::Lr {
                                nu: nu.clone(),
                                lambda: lambda.clone(),
                                mu: mu.clone(),
                            });
                        }
                    }
                }
            }
        }
        Problem::Kronecker => {
            for lambda in &ps {
                for mu in &ps {
                    for nu in &ps {
                        out.push(Instance::Kronecker {
                            lambda: lambda.clone(),
                            mu: mu.clone(),
                            nu: nu.clone(),
                        });
                    }
                }
            }
        }
        // the wreath projector is the only second backend, so plethysm rows
        // stop where it does
        Problem::Plethysm if n > BENCH_PROJECTOR_MAX_N => {}
        Problem::Plethysm => {
            for c in 2..n {
                if n % c != 0 || n / c < 2 || wreath_order(c, n / c) > DEFAULT_ORDER_CAP {
                    continue;
                }
                let d = n / c;
                for lambda in partitions_of(c)? {
                    for mu in partitions_of(d)? {
                        for nu in &ps {
                            out.push(Instance::Plethysm {
                                nu: nu.clone(),
                                lambda: lambda.clone(),
                                mu: mu.clone(),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Runs all instances in parallel; records come back in enumeration order.
pub fn run_bench(opts: &BenchOptions) -> CliResult<Vec<ResultRecord>> {
    if opts.max_n > BENCH_MAX_N {
        return Err(CliError::Usage(format!("--max-n is at most {BENCH_MAX_N}")));
    }
    if opts.min_n > opts.max_n {
        return Err(CliError::Usage("--min-n exceeds --max-n".into()));
    }
    let mut all = Vec::new();
    for &problem in &opts.problems {
        for n in opts.min_n..=opts.max_n {
            all.extend(instances(problem, n)?);
        }
    }
    let mut tables = BTreeMap::new();
    if opts.problems.contains(&Problem::Kronecker) {
        for n in opts.min_n..=opts.max_n {
            tables.insert(n, CharacterTable::build(n)?);
        }
    }
    let run = RunOptions {
        timing: opts.timing,
        projector_max_n: BENCH_PROJECTOR_MAX_N,
        distribution: false,
        seed: opts.seed,
    };
    all.par_iter()
        .map(|inst| inst.run(&run, tables.get(&inst.n())))
        .collect()
}

pub fn write_csv<W: Write>(records: &[ResultRecord], out: W) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r.csv_row())?;
    }
    w.flush()?;
    Ok(())
}
