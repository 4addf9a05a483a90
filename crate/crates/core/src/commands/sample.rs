use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use super::{
    uniformity_verdicts, CommandError, ConfigEcho, CostSummary, EdgeCount, ExperimentReport, GraphSource,
    GraphSummary, SCHEMA_VERSION,
};
use crate::coins::SeededBits;
use crate::graph::GraphOracle;
use crate::samplers::{Eps, BaselineSampler, ExactSampler, Orientation, Sample, SamplerConfig};
use crate::DirectedEdge;

type Draw = dyn FnMut(&mut GraphOracle<'_>, &mut SeededBits) -> Result<Sample, CommandError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleOptions {
    pub source: GraphSource,
    pub count: u64,
    pub seed: u64,
    pub orientation: Orientation,
    pub m_tilde: Option<u64>,
    /// Sample with the ε-approximate baseline instead.
    pub eps: Option<Eps>,
}

/// Draws `count` edges on one seeded stream and writes them as `u v`
/// lines. The report counts every cell of the chosen orientation.
pub fn cmd_sample<W: Write>(opts: &SampleOptions, edges: &mut W) -> Result<ExperimentReport, CommandError> {
    let started = Instant::now();
    if opts.count == 0 {
        return Err(CommandError::Usage("--count must be at least 1".into()));
    }
    let graph = opts.source.load()?;
    let m = graph.edge_count() as u64;
    let config = SamplerConfig { m_tilde: opts.m_tilde, orientation: opts.orientation, ..Default::default() };

    let mut draw: Box<Draw>;
    let (theta, exact, mut warnings, m_tilde);
    match opts.eps {
        None => {
            let sampler = ExactSampler::new(&graph, &config)?;
            theta = sampler.theta();
            exact = sampler.is_exact();
            warnings = sampler.warnings().to_vec();
            m_tilde = sampler.m_tilde();
            draw = Box::new(move |o, b| Ok(sampler.sample(o, b)?));
        }
        Some(eps) => {
            let sampler = BaselineSampler::new(&graph, eps)?;
            theta = sampler.theta();
            exact = false;
            warnings = vec![format!("baseline sampler with eps = {eps} is only approximately uniform")];
            m_tilde = m;
            let orientation = opts.orientation;
            draw = Box::new(move |o, b| {
                let mut s = sampler.sample(o, b)?;
                s.edge = orientation.apply(s.edge);
                Ok(s)
            });
        }
    }

    let cells: Vec<DirectedEdge> = match opts.orientation {
        Orientation::Directed => graph.directed_edges().collect(),
        Orientation::CanonicalUndirected => graph.undirected_edges().collect(),
    };
    let mut counts: BTreeMap<DirectedEdge, u64> = cells.iter().map(|&e| (e, 0)).collect();
    let mut oracle = GraphOracle::new(&graph);
    let mut bits = SeededBits::new(opts.seed);
    let (mut iterations, mut flips) = (0u64, 0u64);
    for _ in 0..opts.count {
        let s = draw(&mut oracle, &mut bits)?;
        writeln!(edges, "{} {}", s.edge.0, s.edge.1)?;
        *counts.get_mut(&s.edge).expect("sampled edge is a cell") += 1;
        iterations += s.iterations;
        flips += s.factory_flips;
    }
    edges.flush()?;

    let per_cell: Vec<u64> = counts.values().copied().collect();
    let verdicts = uniformity_verdicts(&per_cell, &mut warnings);
    let total_queries = oracle.counters().total();
    let c = opts.count as f64;
    Ok(ExperimentReport {
        schema_version: SCHEMA_VERSION,
        command: "sample".into(),
        graph: GraphSummary { source: opts.source.to_string(), n: graph.vertex_count() as u64, m, theta },
        config: ConfigEcho {
            mode: if opts.eps.is_some() { "baseline" } else { "exact" }.into(),
            orientation: opts.orientation.to_string(),
            m_tilde,
            seed: Some(opts.seed),
            count: Some(opts.count),
            depth: None,
            eps: opts.eps.map(|e| e.to_string()),
            samples_file: None,
        },
        exact: Some(exact),
        warnings,
        counts: Some(counts.into_iter().map(|((u, v), count)| EdgeCount { u, v, count }).collect()),
        cost: Some(CostSummary {
            total_queries,
            mean_queries: total_queries as f64 / c,
            mean_iterations: iterations as f64 / c,
            mean_factory_flips: flips as f64 / c,
        }),
        verdicts,
        duration_secs: started.elapsed().as_secs_f64(),
    })
}
