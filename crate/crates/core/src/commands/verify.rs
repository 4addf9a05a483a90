use std::fmt::Write as _;
use std::time::Instant;

use super::{BracketVerdict, CommandError, ConfigEcho, ExperimentReport, GraphSource, GraphSummary, Verdicts, SCHEMA_VERSION};
use crate::samplers::{Eps, ExactSampler, Orientation, SamplerConfig};
use crate::verify::{baseline_distribution, exact_sampler_distribution, to_f64, FactoryDepths, SamplerBounds};

/// Largest graph the enumeration is meant for.
const SUGGESTED_MAX_N: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    pub source: GraphSource,
    /// Branch budget for one sampler iteration.
    pub depth: usize,
    pub m_tilde: Option<u64>,
    pub orientation: Orientation,
    /// Verify the ε-approximate baseline instead.
    pub eps: Option<Eps>,
    pub factory: FactoryDepths,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            source: GraphSource::Generator(crate::graph::GeneratorSpec::Complete { n: 3 }),
            depth: 64,
            m_tilde: None,
            orientation: Orientation::Directed,
            eps: None,
            factory: FactoryDepths::default(),
        }
    }
}

/// Enumerates the sampler's output distribution and brackets every cell
/// against the uniform probability.
pub fn cmd_verify(opts: &VerifyOptions) -> Result<ExperimentReport, CommandError> {
    let started = Instant::now();
    let graph = opts.source.load()?;
    let mut warnings = Vec::new();
    if graph.vertex_count() > SUGGESTED_MAX_N {
        warnings.push(format!(
            "n = {} exceeds {SUGGESTED_MAX_N}; enumeration may be slow",
            graph.vertex_count()
        ));
    }
    let config = SamplerConfig { m_tilde: opts.m_tilde, orientation: opts.orientation, ..Default::default() };
    let (bounds, theta, exact, m_tilde, orientation) = match opts.eps {
        None => {
            let sampler = ExactSampler::new(&graph, &config)?;
            warnings.extend_from_slice(sampler.warnings());
            let bounds = exact_sampler_distribution(&graph, &config, opts.depth, &opts.factory)?;
            (bounds, sampler.theta(), sampler.is_exact(), sampler.m_tilde(), opts.orientation)
        }
        Some(eps) => {
            let sampler = crate::samplers::BaselineSampler::new(&graph, eps)?;
            let bounds = baseline_distribution(&graph, eps, opts.depth)?;
            let m = graph.edge_count() as u64;
            (bounds, sampler.theta(), false, m, Orientation::Directed)
        }
    };
    Ok(ExperimentReport {
        schema_version: SCHEMA_VERSION,
        command: "verify".into(),
        graph: GraphSummary {
            source: opts.source.to_string(),
            n: graph.vertex_count() as u64,
            m: graph.edge_count() as u64,
            theta,
        },
        config: ConfigEcho {
            mode: if opts.eps.is_some() { "baseline" } else { "exact" }.into(),
            orientation: orientation.to_string(),
            m_tilde,
            seed: None,
            count: None,
            depth: Some(opts.depth),
            eps: opts.eps.map(|e| e.to_string()),
            samples_file: None,
        },
        exact: Some(exact),
        warnings,
        counts: None,
        cost: None,
        verdicts: Verdicts { brackets: Some(bracket_verdict(&bounds)), ..Default::default() },
        duration_secs: started.elapsed().as_secs_f64(),
    })
}

fn bracket_verdict(bounds: &SamplerBounds) -> BracketVerdict {
    BracketVerdict {
        target: to_f64(&bounds.target),
        max_width: to_f64(&bounds.max_width()),
        residual: to_f64(bounds.residual()),
        all_contain_target: bounds.all_contain_target(),
        cells: bounds.summaries(),
    }
}

/// The per-cell bracket table printed by `verify`.
pub fn render_brackets(report: &ExperimentReport) -> String {
    let mut out = String::new();
    let Some(b) = &report.verdicts.brackets else { return out };
    let _ = writeln!(out, "{:>12} {:>22} {:>22} {:>22}  ok", "edge", "lo", "hi", "target");
    for (edge, s) in &b.cells {
        let mark = if s.contains_target { "yes" } else { "NO" };
        let _ = writeln!(out, "{edge:>12} {:>22.15e} {:>22.15e} {:>22.15e}  {mark}", s.lo, s.hi, s.target);
    }
    let verdict = if b.all_contain_target { "PASS" } else { "FAIL" };
    let _ = writeln!(
        out,
        "{verdict}: {} cells, max width {:.3e}, residual {:.3e}, exact configuration: {}",
        b.cells.len(),
        b.max_width,
        b.residual,
        report.exact.unwrap_or(false)
    );
    out
}
