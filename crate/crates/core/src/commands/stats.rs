use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use super::{
    uniformity_verdicts, CommandError, ConfigEcho, EdgeCount, ExperimentReport, GraphSource, GraphSummary,
    SCHEMA_VERSION,
};
use crate::graph::Graph;
use crate::samplers::{theta, Orientation};
use crate::DirectedEdge;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatsOptions {
    pub samples: PathBuf,
    pub source: GraphSource,
    pub orientation: Orientation,
}

/// Reads `u v` lines, skipping blank lines and `#` comments. Every pair
/// must be an edge of `graph`.
pub fn parse_samples(text: &str, graph: &Graph) -> Result<Vec<DirectedEdge>, CommandError> {
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = || CommandError::MalformedSample { line: i + 1, content: raw.to_string() };
        let mut parts = line.split_whitespace();
        let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(malformed());
        };
        let u: u32 = a.parse().map_err(|_| malformed())?;
        let v: u32 = b.parse().map_err(|_| malformed())?;
        let n = graph.vertex_count() as u64;
        if u as u64 >= n || v as u64 >= n || !graph.has_edge(u, v) {
            return Err(CommandError::NonEdgeSample { line: i + 1, u, v });
        }
        edges.push((u, v));
    }
    Ok(edges)
}

/// Chi-square and TV of `samples` against uniform over the cells of
/// `orientation`. Under the canonical orientation both directions of an
/// edge count toward the same cell.
pub fn stats_report(
    samples: &[DirectedEdge],
    graph: &Graph,
    orientation: Orientation,
) -> Result<(Vec<EdgeCount>, super::Verdicts, Vec<String>), CommandError> {
    let cells: Vec<DirectedEdge> = match orientation {
        Orientation::Directed => graph.directed_edges().collect(),
        Orientation::CanonicalUndirected => graph.undirected_edges().collect(),
    };
    let mut counts: BTreeMap<DirectedEdge, u64> = cells.iter().map(|&e| (e, 0)).collect();
    for &e in samples {
        *counts.get_mut(&orientation.apply(e)).expect("validated edge") += 1;
    }
    let per_cell: Vec<u64> = counts.values().copied().collect();
    crate::verify::chi_square_uniform(&per_cell)?;
    let mut warnings = Vec::new();
    let verdicts = uniformity_verdicts(&per_cell, &mut warnings);
    let counts = counts.into_iter().map(|((u, v), count)| EdgeCount { u, v, count }).collect();
    Ok((counts, verdicts, warnings))
}

/// Goodness of fit of a sample file against the uniform edge distribution.
pub fn cmd_stats(opts: &StatsOptions) -> Result<ExperimentReport, CommandError> {
    let started = Instant::now();
    let graph = opts.source.load()?;
    let text = std::fs::read_to_string(&opts.samples)?;
    let samples = parse_samples(&text, &graph)?;
    let (counts, verdicts, warnings) = stats_report(&samples, &graph, opts.orientation)?;
    let m = graph.edge_count() as u64;
    Ok(ExperimentReport {
        schema_version: SCHEMA_VERSION,
        command: "stats".into(),
        graph: GraphSummary { source: opts.source.to_string(), n: graph.vertex_count() as u64, m, theta: theta(m) },
        config: ConfigEcho {
            mode: "file".into(),
            orientation: opts.orientation.to_string(),
            m_tilde: m,
            seed: None,
            count: Some(samples.len() as u64),
            depth: None,
            eps: None,
            samples_file: Some(opts.samples.display().to_string()),
        },
        exact: None,
        warnings,
        counts: Some(counts),
        cost: None,
        verdicts,
        duration_secs: started.elapsed().as_secs_f64(),
    })
}
