use std::collections::HashMap;
use std::io::Write;

use serde::Serialize;

use super::{CommandError, GraphSource};
use crate::graph::GeneratorSpec;
use crate::samplers::{Eps, BaselineSampler, ExactSampler, SamplerConfig};
use crate::verify::measure_with;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchOptions {
    pub points: Vec<GraphSource>,
    pub trials: u64,
    pub seed: u64,
    /// Also run the ε-approximate baseline at every point.
    pub eps: Option<Eps>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: u64,
    pub m: u64,
    pub theta: u64,
    pub mean_queries: f64,
    pub p99_queries: u64,
    pub mean_iterations: f64,
    /// `mean_queries / (n / √m)`.
    pub ratio: f64,
    pub baseline: Option<BaselineColumns>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BaselineColumns {
    pub theta: u64,
    pub mean_queries: f64,
    pub p99_queries: u64,
    /// Largest over smallest empirical directed-edge frequency; `None` if
    /// some edge was never drawn.
    pub freq_ratio: Option<f64>,
}

/// `clique_plus_isolated` points with `k = round(√(2n))`, so `m ≈ n`.
///
/// ```
/// use exact_edge::commands::sweep_points;
/// assert_eq!(sweep_points(&[1000])[0].to_string(), "clique_plus_isolated:45,1000");
/// ```
pub fn sweep_points(ns: &[u64]) -> Vec<GeneratorSpec> {
    ns.iter()
        .map(|&n| {
            let k = ((2.0 * n as f64).sqrt().round() as u64).min(n);
            GeneratorSpec::CliquePlusIsolated { k, n }
        })
        .collect()
}

/// Measures mean and tail query cost per returned edge at every point.
/// Each point uses a fresh stream from the same seed.
pub fn cmd_bench(opts: &BenchOptions) -> Result<Vec<BenchRow>, CommandError> {
    if opts.points.is_empty() {
        return Err(CommandError::Usage("bench needs at least one graph".into()));
    }
    if opts.trials == 0 {
        return Err(CommandError::Usage("--trials must be at least 1".into()));
    }
    let mut rows = Vec::with_capacity(opts.points.len());
    for source in &opts.points {
        let graph = source.load()?;
        let (n, m) = (graph.vertex_count() as u64, graph.edge_count() as u64);
        let sampler = ExactSampler::new(&graph, &SamplerConfig::default())?;
        let cost = measure_with(&graph, opts.trials, opts.seed, |o, b| sampler.sample(o, b))?;
        let baseline = match opts.eps {
            None => None,
            Some(eps) => {
                let baseline = BaselineSampler::new(&graph, eps)?;
                let mut freq: HashMap<(u32, u32), u64> = HashMap::new();
                let cost = measure_with(&graph, opts.trials, opts.seed, |o, b| {
                    let s = baseline.sample(o, b)?;
                    *freq.entry(s.edge).or_default() += 1;
                    Ok(s)
                })?;
                let freq_ratio = if freq.len() as u64 == 2 * m {
                    let max = *freq.values().max().expect("nonempty") as f64;
                    let min = *freq.values().min().expect("nonempty") as f64;
                    Some(max / min)
                } else {
                    None
                };
                Some(BaselineColumns {
                    theta: baseline.theta(),
                    mean_queries: cost.mean_queries,
                    p99_queries: cost.p99_queries,
                    freq_ratio,
                })
            }
        };
        rows.push(BenchRow {
            n,
            m,
            theta: sampler.theta(),
            mean_queries: cost.mean_queries,
            p99_queries: cost.p99_queries,
            mean_iterations: cost.mean_iterations,
            ratio: cost.mean_queries / (n as f64 / (m as f64).sqrt()),
            baseline,
        });
    }
    Ok(rows)
}

/// Writes rows as CSV with a header. Baseline columns appear when the
/// first row has them; a missing frequency ratio is written as `inf`.
pub fn write_bench_csv<W: Write>(rows: &[BenchRow], mut out: W) -> std::io::Result<()> {
    let with_baseline = rows.first().is_some_and(|r| r.baseline.is_some());
    write!(out, "n,m,theta,mean_queries,p99_queries,mean_iterations,ratio")?;
    if with_baseline {
        write!(out, ",baseline_theta,baseline_mean_queries,baseline_p99_queries,baseline_freq_ratio")?;
    }
    writeln!(out)?;
    for r in rows {
        write!(
            out,
            "{},{},{},{:.3},{},{:.3},{:.4}",
            r.n, r.m, r.theta, r.mean_queries, r.p99_queries, r.mean_iterations, r.ratio
        )?;
        if with_baseline {
            match &r.baseline {
                Some(e) => {
                    let ratio = e.freq_ratio.map_or("inf".to_string(), |x| format!("{x:.4}"));
                    write!(out, ",{},{:.3},{},{ratio}", e.theta, e.mean_queries, e.p99_queries)?;
                }
                None => write!(out, ",,,,")?,
            }
        }
        writeln!(out)?;
    }
    out.flush()
}
