//! The enumeration oracle, exact distributions of every coin and sampler,
//! statistical tests and query-cost measurement.

mod bounds;
mod chain;
mod cost;
mod enumerate;
mod oracles;
mod stats;

pub use bounds::{Bracket, BracketSummary, DistributionBounds};
pub(crate) use bounds::to_f64;
pub use chain::{enumerate_chain, Arithmetic, ChainBudget, FIXED_BITS};
pub use cost::{measure_query_cost, measure_with, CostReport};
pub use enumerate::{enumerate_outcomes, BracketCoin, EnumError, EnumSource, Resolution};
pub use oracles::{
    attempt_distribution, exact_sampler_distribution, baseline_distribution, factory_bounds,
    closed_form_attempt_masses, p_coin_bias, race_bounds, reciprocal_bounds, ruin_bounds, FactoryBounds,
    FactoryDepths, SamplerBounds,
};
pub use stats::{chi_square_uniform, empirical_tv, ChiSquare, StatsError};

use crate::samplers::SampleError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error("precondition violated: {0}")]
    Precondition(String),
}
