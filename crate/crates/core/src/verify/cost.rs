use serde::Serialize;

use crate::coins::SeededBits;
use crate::graph::{Graph, GraphOracle};
use crate::samplers::{ExactSampler, Sample, SampleError, SamplerConfig};

/// Query cost per returned edge over a batch of trials.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CostReport {
    pub trials: u64,
    pub mean_queries: f64,
    pub median_queries: u64,
    pub p99_queries: u64,
    pub mean_iterations: f64,
    pub mean_factory_flips: f64,
}

/// Runs `trials` draws of the exact sampler on one seeded stream and
/// summarizes total queries per returned edge.
pub fn measure_query_cost(
    graph: &Graph,
    config: &SamplerConfig,
    trials: u64,
    seed: u64,
) -> Result<CostReport, SampleError> {
    let sampler = ExactSampler::new(graph, config)?;
    measure_with(graph, trials, seed, |oracle, bits| sampler.sample(oracle, bits))
}

/// As [`measure_query_cost`] for any sampling procedure.
pub fn measure_with<F>(graph: &Graph, trials: u64, seed: u64, mut draw: F) -> Result<CostReport, SampleError>
where
    F: FnMut(&mut GraphOracle<'_>, &mut SeededBits) -> Result<Sample, SampleError>,
{
    if trials == 0 {
        return Err(SampleError::InvalidConfig("trials must be at least 1".into()));
    }
    let mut oracle = GraphOracle::new(graph);
    let mut bits = SeededBits::new(seed);
    let mut queries = Vec::with_capacity(trials as usize);
    let (mut iterations, mut flips) = (0u64, 0u64);
    for _ in 0..trials {
        let before = oracle.counters();
        let sample = draw(&mut oracle, &mut bits)?;
        queries.push(oracle.counters().since(&before).total());
        iterations += sample.iterations;
        flips += sample.factory_flips;
    }
    let t = trials as f64;
    let mean_queries = queries.iter().sum::<u64>() as f64 / t;
    queries.sort_unstable();
    let rank = |q: f64| queries[((q * t).ceil() as usize).clamp(1, queries.len()) - 1];
    Ok(CostReport {
        trials,
        mean_queries,
        median_queries: rank(0.5),
        p99_queries: rank(0.99),
        mean_iterations: iterations as f64 / t,
        mean_factory_flips: flips as f64 / t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorSpec};

    #[test]
    fn zero_trials_is_an_error() {
        let g = generate(&GeneratorSpec::Complete { n: 3 }).unwrap();
        assert!(measure_query_cost(&g, &SamplerConfig::default(), 0, 1).is_err());
    }

    #[test]
    fn triangle_mean_iterations() {
        // Per-iteration success 6/45, so 7.5 iterations on average.
        let g = generate(&GeneratorSpec::Complete { n: 3 }).unwrap();
        let r = measure_query_cost(&g, &SamplerConfig::default(), 10_000, 3).unwrap();
        assert!((r.mean_iterations - 7.5).abs() < 0.75, "{}", r.mean_iterations);
        assert!(r.median_queries <= r.p99_queries);
        assert_eq!(r.mean_factory_flips, 0.0);
    }
}
