//! Exact distributions of the coins and samplers, computed by enumeration.
//!
//! The factory is verified in layers. The ruin walk is solved as a chain at
//! a rational `q`, giving a bracket on `x`. The race is solved as a chain
//! over a coin known to lie in that bracket, giving a bracket on `2q`. The
//! reciprocal factory is enumerated over a coin in the `2q` bracket. A
//! sampler iteration enumerates the attempt with the reciprocal bracket of
//! each heavy vertex in place of the factory, at that vertex's exact p-coin
//! bias.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::bounds::{Bracket, BracketSummary, DistributionBounds};
use super::chain::{enumerate_chain, Arithmetic, ChainBudget};
use super::enumerate::{enumerate_outcomes, BracketCoin, Resolution};
use super::VerifyError;
use crate::coins::{geometric_all_heads, race_round, Coin, PCoin, RationalCoin, RuinWalk};
use crate::graph::{Graph, GraphOracle};
use crate::samplers::{AttemptOutcome, BaselineSampler, Eps, ExactSampler, Orientation, SamplerConfig};
use crate::{DirectedEdge, Vertex};

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Budgets for the three factory layers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FactoryDepths {
    /// Breadth-first distance to which ruin-walk states are expanded.
    pub walk_distance: usize,
    /// Branch budget for the reciprocal factory tree.
    pub factory_depth: usize,
    /// Brackets are widened to multiples of `2^-round_bits` between layers.
    pub round_bits: u32,
}

impl Default for FactoryDepths {
    fn default() -> Self {
        FactoryDepths { walk_distance: 4000, factory_depth: 60, round_bits: 96 }
    }
}

/// Per-layer brackets of the factory at one bias `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoryBounds {
    pub p: BigRational,
    /// Bracket on `q/(1-q)` from the ruin walk.
    pub x: Bracket,
    /// Bracket on `2q` from the race.
    pub two_q: Bracket,
    /// Bracket on `1/(2p)` from the reciprocal factory.
    pub reciprocal: Bracket,
}

/// Exact heads probability of the p-coin of `v`.
pub fn p_coin_bias(graph: &Graph, v: Vertex, theta: u64) -> Result<BigRational, VerifyError> {
    if graph.degree(v) as u64 <= theta {
        return Err(VerifyError::Precondition(format!("vertex {v} is not heavy")));
    }
    let d = enumerate_outcomes(Resolution::ExactDraws, 4, |src| {
        let mut oracle = GraphOracle::new(graph);
        PCoin::new(&mut oracle, v, theta).expect("heavy").flip(src)
    })?;
    debug_assert!(d.residual().is_zero());
    Ok(d.lower(&true))
}

/// Bracket on `Bern(q/(1-q))` from the ruin walk with a `num/den` coin.
pub fn ruin_bounds(q_num: u64, q_den: u64, walk_distance: usize) -> Result<Bracket, VerifyError> {
    let budget = ChainBudget {
        step_depth: usize::MAX,
        max_distance: walk_distance,
        arithmetic: Arithmetic::RoundDown,
    };
    let d = enumerate_chain(RuinWalk::START, Resolution::ExactDraws, &budget, |s, src| {
        s.step(&mut RationalCoin::new(q_num, q_den), src)
    })?;
    Ok(Bracket::new(d.lower(&true), BigRational::one() - d.lower(&false)))
}

/// Bracket on the race output over a coin with bias in `x`.
pub fn race_bounds(x: &Bracket) -> Result<Bracket, VerifyError> {
    let budget = ChainBudget { step_depth: 4, max_distance: 0, arithmetic: Arithmetic::Exact };
    let d = enumerate_chain((), Resolution::ExactDraws, &budget, |_, src| {
        race_round(&mut BracketCoin(x.clone()), src)
    })?;
    Ok(Bracket::new(d.lower(&true), BigRational::one() - d.lower(&false)))
}

/// Bracket on the geometric all-heads test over a coin with bias in
/// `two_q`.
pub fn reciprocal_bounds(two_q: &Bracket, depth: usize) -> Result<Bracket, VerifyError> {
    let d = enumerate_outcomes(Resolution::ExactDraws, depth, |src| {
        geometric_all_heads(&mut BracketCoin(two_q.clone()), src)
    })?;
    Ok(Bracket::new(d.lower(&true), BigRational::one() - d.lower(&false)))
}

/// All three layers at `p = num/den`, which must lie in `[2/3, 1]`.
pub fn factory_bounds(p_num: u64, p_den: u64, depths: &FactoryDepths) -> Result<FactoryBounds, VerifyError> {
    if p_den == 0 || p_num > p_den || 3 * p_num < 2 * p_den {
        return Err(VerifyError::Precondition(format!("p = {p_num}/{p_den} outside [2/3, 1]")));
    }
    let x = ruin_bounds(p_den - p_num, p_den, depths.walk_distance)?.round_outward(depths.round_bits);
    let two_q = race_bounds(&x)?.round_outward(depths.round_bits);
    let reciprocal = reciprocal_bounds(&two_q, depths.factory_depth)?.round_outward(depths.round_bits);
    Ok(FactoryBounds { p: ratio(p_num, p_den), x, two_q, reciprocal })
}

/// Closed-form attempt masses: `1/(3nθ)` for every light directed edge and
/// `(2/3)·(d_l(v)/d(v))·(1/(nθ))` for every heavy one.
pub fn closed_form_attempt_masses(graph: &Graph, theta: u64) -> BTreeMap<AttemptOutcome, BigRational> {
    let n = graph.vertex_count() as u64;
    let light = ratio(1, 3 * n * theta);
    graph
        .directed_edges()
        .map(|(u, v)| {
            let d = graph.degree(u) as u64;
            if d <= theta {
                (AttemptOutcome::Light(u, v), light.clone())
            } else {
                let dl = graph.light_degree(u, theta) as u64;
                (AttemptOutcome::Heavy(u, v), ratio(2 * dl, 3 * d * n * theta))
            }
        })
        .collect()
}

/// Enumerated distribution of one attempt.
pub fn attempt_distribution(
    graph: &Graph,
    config: &SamplerConfig,
    mode: Resolution,
    depth: usize,
) -> Result<DistributionBounds<AttemptOutcome>, VerifyError> {
    let sampler = ExactSampler::new(graph, config)?;
    Ok(enumerate_outcomes(mode, depth, |src| {
        sampler.attempt(&mut GraphOracle::new(graph), src)
    })?)
}

/// Per-iteration and normalized output distribution of a sampler.
#[derive(Debug, Clone)]
pub struct SamplerBounds {
    /// Outcome of one iteration; `None` is a failed iteration.
    pub per_iteration: DistributionBounds<Option<DirectedEdge>>,
    /// Probability that an iteration returns some edge.
    pub success: Bracket,
    /// Output distribution conditioned on success, for every cell.
    pub normalized: BTreeMap<DirectedEdge, Bracket>,
    /// The uniform probability per cell.
    pub target: BigRational,
    /// Factory brackets used for heavy vertices, if any.
    pub heavy: BTreeMap<Vertex, FactoryBounds>,
}

impl SamplerBounds {
    fn from_iteration(
        per_iteration: DistributionBounds<Option<DirectedEdge>>,
        cells: Vec<DirectedEdge>,
        heavy: BTreeMap<Vertex, FactoryBounds>,
    ) -> Self {
        let residual = per_iteration.residual().clone();
        let success_lo = per_iteration
            .outcomes()
            .filter(|(e, _)| e.is_some())
            .fold(BigRational::zero(), |acc, (_, p)| acc + p);
        let denom_hi = &success_lo + &residual;
        let normalized = cells
            .iter()
            .map(|&e| {
                let lo = per_iteration.lower(&Some(e));
                let b = if success_lo.is_zero() {
                    Bracket::new(BigRational::zero(), BigRational::one())
                } else {
                    Bracket::new(&lo / &denom_hi, (&lo + &residual) / &denom_hi)
                };
                (e, b)
            })
            .collect();
        SamplerBounds {
            success: Bracket::new(success_lo, denom_hi),
            target: ratio(1, cells.len() as u64),
            per_iteration,
            normalized,
            heavy,
        }
    }

    /// Every normalized bracket contains the uniform probability.
    pub fn all_contain_target(&self) -> bool {
        self.normalized.values().all(|b| b.contains(&self.target))
    }

    /// Largest normalized bracket width.
    pub fn max_width(&self) -> BigRational {
        self.normalized
            .values()
            .map(Bracket::width)
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn residual(&self) -> &BigRational {
        self.per_iteration.residual()
    }

    /// Bracket on `max_e P(e) / min_e P(e)` over the normalized cells.
    pub fn max_min_ratio(&self) -> Bracket {
        let max_lo = self.normalized.values().map(|b| b.lo.clone()).max().unwrap();
        let max_hi = self.normalized.values().map(|b| b.hi.clone()).max().unwrap();
        let min_lo = self.normalized.values().map(|b| b.lo.clone()).min().unwrap();
        let min_hi = self.normalized.values().map(|b| b.hi.clone()).min().unwrap();
        let lo = (&max_lo / &min_hi).max(BigRational::one());
        let hi = if min_lo.is_zero() {
            // Unbounded; report a sentinel far above any real ratio.
            BigRational::from_integer(BigInt::from(u64::MAX))
        } else {
            &max_hi / &min_lo
        };
        Bracket::new(lo, hi)
    }

    /// Per-cell float summaries for reports.
    pub fn summaries(&self) -> BTreeMap<String, BracketSummary> {
        self.normalized
            .iter()
            .map(|(&(u, v), b)| (format!("{u} {v}"), BracketSummary::new(b, &self.target)))
            .collect()
    }
}

fn cells(graph: &Graph, orientation: Orientation) -> Vec<DirectedEdge> {
    match orientation {
        Orientation::Directed => graph.directed_edges().collect(),
        Orientation::CanonicalUndirected => graph.undirected_edges().collect(),
    }
}

/// Output distribution of the exact sampler. Heavy vertices must have
/// light fraction at least `2/3` under the configured threshold.
pub fn exact_sampler_distribution(
    graph: &Graph,
    config: &SamplerConfig,
    depth: usize,
    factory: &FactoryDepths,
) -> Result<SamplerBounds, VerifyError> {
    let sampler = ExactSampler::new(graph, config)?;
    let theta = sampler.theta();
    let mut by_bias: BTreeMap<(u64, u64), FactoryBounds> = BTreeMap::new();
    let mut heavy = BTreeMap::new();
    for v in 0..graph.vertex_count() as Vertex {
        let d = graph.degree(v) as u64;
        if d <= theta {
            continue;
        }
        let p = p_coin_bias(graph, v, theta)?;
        debug_assert_eq!(p, ratio(graph.light_degree(v, theta) as u64, d));
        let key = (
            u64::try_from(p.numer()).expect("small numerator"),
            u64::try_from(p.denom()).expect("small denominator"),
        );
        let bounds = match by_bias.entry(key) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => e.insert(factory_bounds(key.0, key.1, factory)?),
        };
        heavy.insert(v, bounds.clone());
    }
    let orientation = config.orientation;
    let per_iteration = enumerate_outcomes(Resolution::ExactDraws, depth, |src| {
        let mut oracle = GraphOracle::new(graph);
        let edge = sampler.iteration(&mut oracle, src, |_, v, _, s| s.bracket(&heavy[&v].reciprocal))?;
        Ok(edge.map(|e| orientation.apply(e)))
    })?;
    Ok(SamplerBounds::from_iteration(per_iteration, cells(graph, orientation), heavy))
}

/// Output distribution of the ε-approximate baseline.
pub fn baseline_distribution(graph: &Graph, eps: Eps, depth: usize) -> Result<SamplerBounds, VerifyError> {
    let sampler = BaselineSampler::new(graph, eps)?;
    let per_iteration = enumerate_outcomes(Resolution::ExactDraws, depth, |src| {
        sampler.iteration(&mut GraphOracle::new(graph), src)
    })?;
    Ok(SamplerBounds::from_iteration(
        per_iteration,
        cells(graph, Orientation::Directed),
        BTreeMap::new(),
    ))
}
