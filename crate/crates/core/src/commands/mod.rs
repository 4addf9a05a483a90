//! The four subcommands behind the `edge-sampler` binary, as library calls.
//!
//! Each command returns an [`ExperimentReport`] (or table rows) and leaves
//! printing to the caller. Exit codes come from [`CommandError::exit_code`]
//! and [`ExperimentReport::passed`].

mod bench;
mod sample;
mod stats;
mod verify;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

pub use bench::{cmd_bench, sweep_points, write_bench_csv, BenchOptions, BenchRow, BaselineColumns};
pub use sample::{cmd_sample, SampleOptions};
pub use stats::{cmd_stats, parse_samples, stats_report, StatsOptions};
pub use verify::{cmd_verify, render_brackets, VerifyOptions};

use crate::graph::{generate, read_edge_list_file, GeneratorSpec, Graph, GraphError};
use crate::samplers::SampleError;
use crate::verify::{BracketSummary, ChiSquare, StatsError, VerifyError};
use crate::Vertex;

pub const SCHEMA_VERSION: u32 = 1;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 1;

/// Significance level of the uniformity verdicts.
pub const ALPHA: f64 = 0.001;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CommandError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error("line {line}: malformed sample line {content:?}")]
    MalformedSample { line: usize, content: String },
    #[error("line {line}: ({u}, {v}) is not an edge of the graph")]
    NonEdgeSample { line: usize, u: Vertex, v: Vertex },
    #[error("i/o error: {0}")]
    Io(String),
}

impl CommandError {
    /// `1` when verification itself could not certify the sampler, `2` for
    /// usage and input errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Verify(VerifyError::Precondition(_) | VerifyError::Enum(_)) => 1,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for CommandError {
    fn from(e: std::io::Error) -> Self {
        CommandError::Io(e.to_string())
    }
}

/// Where a command gets its graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSource {
    File(PathBuf),
    Generator(GeneratorSpec),
}

impl GraphSource {
    pub fn load(&self) -> Result<Graph, CommandError> {
        Ok(match self {
            GraphSource::File(path) => read_edge_list_file(path)?,
            GraphSource::Generator(spec) => generate(spec)?,
        })
    }
}

impl fmt::Display for GraphSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSource::File(path) => write!(f, "file:{}", path.display()),
            GraphSource::Generator(spec) => write!(f, "gen:{spec}"),
        }
    }
}

/// Parses the [`Display`](fmt::Display) form, `file:PATH` or `gen:SPEC`.
impl FromStr for GraphSource {
    type Err = CommandError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(path) = s.strip_prefix("file:") {
            Ok(GraphSource::File(PathBuf::from(path)))
        } else if let Some(spec) = s.strip_prefix("gen:") {
            Ok(GraphSource::Generator(spec.parse()?))
        } else {
            Err(CommandError::Usage(format!("graph source {s:?} is neither file:PATH nor gen:SPEC")))
        }
    }
}

/// Everything one run produced, as written to the JSON report.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub command: String,
    pub graph: GraphSummary,
    pub config: ConfigEcho,
    /// Whether the sampler configuration guarantees an exactly uniform
    /// output. Absent for `stats`, which runs no sampler.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<bool>,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<Vec<EdgeCount>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cost: Option<CostSummary>,
    pub verdicts: Verdicts,
    pub duration_secs: f64,
}

impl ExperimentReport {
    /// The verdict behind exit code `0`. Commands without a test pass.
    pub fn passed(&self) -> bool {
        let chi = self.verdicts.chi_square.as_ref().is_none_or(|c| c.passed);
        let brackets = self.verdicts.brackets.as_ref().is_none_or(|b| b.all_contain_target);
        chi && brackets
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphSummary {
    pub source: String,
    pub n: u64,
    pub m: u64,
    pub theta: u64,
}

/// The configuration a run used, enough to repeat it.
#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub mode: String,
    pub orientation: String,
    pub m_tilde: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples_file: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EdgeCount {
    pub u: Vertex,
    pub v: Vertex,
    pub count: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CostSummary {
    pub total_queries: u64,
    pub mean_queries: f64,
    pub mean_iterations: f64,
    pub mean_factory_flips: f64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Verdicts {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_square: Option<ChiSquareVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tv: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brackets: Option<BracketVerdict>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChiSquareVerdict {
    #[serde(flatten)]
    pub test: ChiSquare,
    pub alpha: f64,
    pub passed: bool,
}

impl ChiSquareVerdict {
    fn new(test: ChiSquare) -> Self {
        ChiSquareVerdict { test, alpha: ALPHA, passed: test.p_value >= ALPHA }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BracketVerdict {
    pub target: f64,
    pub max_width: f64,
    pub residual: f64,
    pub all_contain_target: bool,
    /// Keyed by `"u v"`.
    pub cells: std::collections::BTreeMap<String, BracketSummary>,
}

/// Chi-square and TV verdicts for per-cell counts, or a warning when there
/// are too few samples for the test.
fn uniformity_verdicts(counts: &[u64], warnings: &mut Vec<String>) -> Verdicts {
    let mut verdicts = Verdicts::default();
    match crate::verify::chi_square_uniform(counts) {
        Ok(test) => verdicts.chi_square = Some(ChiSquareVerdict::new(test)),
        Err(e) => warnings.push(format!("chi-square skipped: {e}")),
    }
    if let Ok(tv) = crate::verify::empirical_tv(counts, counts.len()) {
        verdicts.tv = Some(crate::verify::to_f64(&tv));
    }
    verdicts
}
