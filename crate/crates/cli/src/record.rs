use std::fmt;

use indexmap::IndexMap;
use num_rational::BigRational;
use repmult::qsim::distributions::rational_string;
use repmult::qsim::ExactDistribution;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Problem {
    Kostka,
    Lr,
    Kronecker,
    Plethysm,
}

impl Problem {
    pub const ALL: [Problem; 4] = [Problem::Kostka, Problem::Lr, Problem::Kronecker, Problem::Plethysm];

    pub fn as_str(self) -> &'static str {
        match self {
            Problem::Kostka => "kostka",
            Problem::Lr => "lr",
            Problem::Kronecker => "kronecker",
            Problem::Plethysm => "plethysm",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One coefficient with the value reported by every backend that ran.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub schema: u32,
    pub problem: Problem,
    /// Input partitions by role, e.g. `nu`, `lambda`, `mu`.
    pub inputs: IndexMap<String, Vec<usize>>,
    pub value: u64,
    pub consistent: bool,
    pub backends: IndexMap<String, u64>,
    /// Backends that hit a resource cap and were not run to completion.
    #[serde(default)]
    pub skipped: Vec<String>,
    /// `d_α / d_β` for the restriction algorithm.
    #[serde(with = "rational_string")]
    pub sample_cost: BigRational,
    pub distribution: Option<ExactDistribution>,
    /// Wall-clock microseconds per backend, rounded up.
    pub timing: Option<IndexMap<String, u64>>,
    pub seed: Option<u64>,
}

impl ResultRecord {
    pub fn n(&self) -> usize {
        self.inputs.values().next().map_or(0, |p| p.iter().sum())
    }

    pub fn csv_row(&self) -> CsvRow {
        let join = |m: &IndexMap<String, u64>| {
            m.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
        };
        CsvRow {
            problem: self.problem,
            n: self.n(),
            inputs: self
                .inputs
                .iter()
                .map(|(k, v)| format!("{k}={}", format_parts(v)))
                .collect::<Vec<_>>()
                .join(" "),
            value: self.value,
            nonzero: self.value > 0,
            consistent: self.consistent,
            sample_cost: self.sample_cost.to_string(),
            backends: join(&self.backends),
            timing_us: self.timing.as_ref().map(join).unwrap_or_default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CsvRow {
    pub problem: Problem,
    pub n: usize,
    pub inputs: String,
    pub value: u64,
    pub nonzero: bool,
    pub consistent: bool,
    pub sample_cost: String,
    pub backends: String,
    pub timing_us: String,
}

pub fn format_parts(parts: &[usize]) -> String {
    let s: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
    format!("({})", s.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn problems_serialize_snake_case() {
        assert_eq!(serde_json::to_string(&Problem::Lr).unwrap(), "\"lr\"");
        for p in Problem::ALL {
            assert_eq!(serde_json::to_string(&p).unwrap(), format!("\"{p}\""));
        }
    }

    #[test]
    fn parts_format() {
        assert_eq!(format_parts(&[3, 1]), "(3,1)");
        assert_eq!(format_parts(&[]), "()");
    }
}
