use serde::{Deserialize, Serialize};

use super::{theta, AttemptOutcome, SampleError, SamplerConfig};
use crate::coins::{reciprocal_factory, BitSource, Exhausted, PCoin};
use crate::graph::{Graph, GraphOracle};
use crate::{DirectedEdge, Vertex};

/// One returned edge with its cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sample {
    pub edge: DirectedEdge,
    /// Attempts made, including the successful one.
    pub iterations: u64,
    /// p-coin flips spent inside the factory.
    pub factory_flips: u64,
}

/// Heavy vertices `v` (under `theta`) whose light fraction `d_l(v)/d(v)` is
/// below `2/3`. Empty whenever `theta >= ⌈√(6m)⌉`.
pub fn heavy_bias_violations(graph: &Graph, theta: u64) -> Vec<Vertex> {
    (0..graph.vertex_count() as Vertex)
        .filter(|&v| {
            let d = graph.degree(v) as u64;
            d > theta && 3 * (graph.light_degree(v, theta) as u64) < 2 * d
        })
        .collect()
}

/// The exact sampler: repeat an attempt until it returns an edge, accepting
/// heavy edges with probability `1/(2p)` through the reciprocal factory.
/// Every directed edge then leaves an iteration with probability exactly
/// `1/(3nθ)`.
#[derive(Debug, Clone)]
pub struct ExactSampler {
    n: u64,
    m: u64,
    m_tilde: u64,
    theta: u64,
    config: SamplerConfig,
    warnings: Vec<String>,
}

impl ExactSampler {
    /// Reads `n` and `m` from the graph; all later access goes through an
    /// oracle.
    pub fn new(graph: &Graph, config: &SamplerConfig) -> Result<Self, SampleError> {
        let n = graph.vertex_count() as u64;
        let m = graph.edge_count() as u64;
        if m == 0 {
            return Err(SampleError::EmptyGraph);
        }
        let m_tilde = config.m_tilde.unwrap_or(m);
        if m_tilde == 0 {
            return Err(SampleError::InvalidConfig("m_tilde must be at least 1".into()));
        }
        if config.max_attempts == Some(0) {
            return Err(SampleError::InvalidConfig("max_attempts must be at least 1".into()));
        }
        let theta = theta(m_tilde);
        let mut warnings = Vec::new();
        if m_tilde < m {
            warnings.push(format!(
                "m_tilde = {m_tilde} is below m = {m}; output is not guaranteed uniform"
            ));
        } else {
            debug_assert!(
                heavy_bias_violations(graph, theta).is_empty(),
                "heavy vertex with light fraction below 2/3"
            );
        }
        Ok(ExactSampler {
            n,
            m,
            m_tilde,
            theta,
            config: *config,
            warnings,
        })
    }

    pub fn theta(&self) -> u64 {
        self.theta
    }

    pub fn m_tilde(&self) -> u64 {
        self.m_tilde
    }

    pub fn config(&self) -> &SamplerConfig {
        &self.config
    }

    /// Whether the uniformity guarantee applies (`m_tilde >= m`).
    pub fn is_exact(&self) -> bool {
        self.m_tilde >= self.m
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// One attempt. `j` is drawn only once `u` is known to be a light vertex
    /// of positive degree, since the attempt fails regardless of `j`
    /// otherwise.
    pub fn attempt<S: BitSource + ?Sized>(
        &self,
        oracle: &mut GraphOracle<'_>,
        src: &mut S,
    ) -> Result<AttemptOutcome, Exhausted> {
        Ok(self.attempt_with_degree(oracle, src)?.0)
    }

    /// The attempt together with `d(v)` for a heavy outcome, so the
    /// acceptance step does not query it again.
    fn attempt_with_degree<S: BitSource + ?Sized>(
        &self,
        oracle: &mut GraphOracle<'_>,
        src: &mut S,
    ) -> Result<(AttemptOutcome, u64), Exhausted> {
        let fail = (AttemptOutcome::Fail, 0);
        let u = oracle.vertex(src.uniform_below(self.n)?).expect("index below n");
        let du = oracle.degree(u).expect("vertex label in range");
        if du == 0 || du > self.theta {
            return Ok(fail);
        }
        let j = src.uniform_below(self.theta)?;
        if j >= du {
            return Ok(fail);
        }
        let v = oracle.neighbor(u, j).expect("index below degree");
        if src.ratio(1, 3)? {
            return Ok((AttemptOutcome::Light(u, v), 0));
        }
        let dv = oracle.degree(v).expect("vertex label in range");
        if dv <= self.theta {
            return Ok(fail);
        }
        let k = src.uniform_below(dv)?;
        let w = oracle.neighbor(v, k).expect("index below degree");
        Ok((AttemptOutcome::Heavy(v, w), dv))
    }

    /// One loop iteration with a caller-supplied acceptance step for heavy
    /// edges, called as `accept(oracle, v, d(v), src)`. The sampler itself
    /// passes the reciprocal factory over the p-coin of `v`.
    pub fn iteration<S, A>(
        &self,
        oracle: &mut GraphOracle<'_>,
        src: &mut S,
        mut accept: A,
    ) -> Result<Option<DirectedEdge>, Exhausted>
    where
        S: BitSource + ?Sized,
        A: FnMut(&mut GraphOracle<'_>, Vertex, u64, &mut S) -> Result<bool, Exhausted>,
    {
        match self.attempt_with_degree(oracle, src)? {
            (AttemptOutcome::Fail, _) => Ok(None),
            (AttemptOutcome::Light(u, v), _) => Ok(Some((u, v))),
            (AttemptOutcome::Heavy(v, w), dv) => {
                Ok(accept(oracle, v, dv, src)?.then_some((v, w)))
            }
        }
    }

    /// Accepts a heavy edge out of `v` with probability `1/(2p)`, returning
    /// the decision and the p-coin flips spent.
    pub fn accept_heavy<S: BitSource + ?Sized>(
        &self,
        oracle: &mut GraphOracle<'_>,
        v: Vertex,
        dv: u64,
        src: &mut S,
    ) -> Result<(bool, u64), Exhausted> {
        let mut coin = PCoin::with_degree(oracle, v, dv, self.theta).expect("v is heavy");
        let accepted = reciprocal_factory(&mut coin, src)?;
        Ok((accepted, coin.flips()))
    }

    /// Draws one edge, oriented per the configuration.
    pub fn sample<S: BitSource + ?Sized>(
        &self,
        oracle: &mut GraphOracle<'_>,
        src: &mut S,
    ) -> Result<Sample, SampleError> {
        let mut factory_flips = 0;
        let mut iterations = 0;
        loop {
            if let Some(cap) = self.config.max_attempts {
                if iterations >= cap {
                    return Err(SampleError::AttemptsExhausted(cap));
                }
            }
            iterations += 1;
            let step = self.iteration(oracle, src, |o, v, dv, s| {
                let (accepted, flips) = self.accept_heavy(o, v, dv, s)?;
                factory_flips += flips;
                Ok(accepted)
            })?;
            if let Some(edge) = step {
                return Ok(Sample {
                    edge: self.config.orientation.apply(edge),
                    iterations,
                    factory_flips,
                });
            }
        }
    }
}
