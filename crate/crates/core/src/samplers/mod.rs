//! The single attempt, the exact rejection loop and the ε-approximate
//! baseline.

mod baseline;
mod exact;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use baseline::{theta_eps, BaselineSampler, Eps};
pub use exact::{heavy_bias_violations, ExactSampler, Sample};

use crate::coins::Exhausted;
use crate::graph::GraphOracle;
use crate::{DirectedEdge, Vertex};

/// `⌈√(6·m_tilde)⌉` in integer arithmetic.
pub fn theta(m_tilde: u64) -> u64 {
    assert!(m_tilde >= 1, "theta of m_tilde = 0");
    let six_m = m_tilde.checked_mul(6).expect("m_tilde too large");
    ceil_sqrt(six_m.into()) as u64
}

/// Smallest `t` with `t² >= x`.
pub(crate) fn ceil_sqrt(x: u128) -> u128 {
    let r = x.isqrt();
    if r * r == x {
        r
    } else {
        r + 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Class {
    Light,
    Heavy,
}

/// Light iff `d(v) <= theta`; one degree query.
pub fn classify(oracle: &mut GraphOracle<'_>, v: Vertex, theta: u64) -> Class {
    if oracle.degree(v).expect("vertex label in range") <= theta {
        Class::Light
    } else {
        Class::Heavy
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// Uniform over the `2m` ordered pairs.
    #[default]
    Directed,
    /// The pair sorted as `(min, max)`, uniform over the `m` edges.
    CanonicalUndirected,
}

impl Orientation {
    pub fn apply(self, (u, v): DirectedEdge) -> DirectedEdge {
        match self {
            Orientation::Directed => (u, v),
            Orientation::CanonicalUndirected => (u.min(v), u.max(v)),
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Directed => "directed",
            Orientation::CanonicalUndirected => "canonical-undirected",
        })
    }
}

impl FromStr for Orientation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "directed" => Ok(Orientation::Directed),
            "canonical-undirected" | "undirected" => Ok(Orientation::CanonicalUndirected),
            _ => Err(format!("unknown orientation {s:?} (directed | canonical-undirected)")),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerConfig {
    /// Edge-count bound used for `theta`; `None` means the exact `m`.
    pub m_tilde: Option<u64>,
    /// Give up after this many iterations; `None` loops until success.
    pub max_attempts: Option<u64>,
    pub orientation: Orientation,
}

/// Result of one attempt.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AttemptOutcome {
    Fail,
    /// `(u, v)` with `u` light.
    Light(Vertex, Vertex),
    /// `(v, w)` with `v` heavy.
    Heavy(Vertex, Vertex),
}

impl AttemptOutcome {
    pub fn edge(self) -> Option<DirectedEdge> {
        match self {
            AttemptOutcome::Fail => None,
            AttemptOutcome::Light(u, v) | AttemptOutcome::Heavy(u, v) => Some((u, v)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SampleError {
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("no edge returned within {0} attempts")]
    AttemptsExhausted(u64),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Exhausted(#[from] Exhausted),
}
