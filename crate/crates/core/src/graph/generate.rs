use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use super::{Graph, GraphError};
use crate::coins::{BitSource, SeededBits};
use crate::Vertex;

/// A graph family with its parameters.
///
/// Parsed from `family:param,param`, e.g. `clique_plus_isolated:5,25` or
/// `gnm:100,300,7`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorSpec {
    /// A clique on vertices `0..k` plus `n - k` isolated vertices.
    CliquePlusIsolated { k: u64, n: u64 },
    /// `m` distinct edges drawn uniformly without replacement.
    Gnm { n: u64, m: u64, seed: u64 },
    /// Center `0`, leaves `1..=leaves`.
    Star { leaves: u64 },
    /// Adjacent centers `0` and `1`, each with its own leaves.
    DoubleStar { leaves_per_center: u64 },
    Path { n: u64 },
    Complete { n: u64 },
}

impl GeneratorSpec {
    pub fn family(&self) -> &'static str {
        match self {
            GeneratorSpec::CliquePlusIsolated { .. } => "clique_plus_isolated",
            GeneratorSpec::Gnm { .. } => "gnm",
            GeneratorSpec::Star { .. } => "star",
            GeneratorSpec::DoubleStar { .. } => "double_star",
            GeneratorSpec::Path { .. } => "path",
            GeneratorSpec::Complete { .. } => "complete",
        }
    }

    fn params(&self) -> Vec<u64> {
        match *self {
            GeneratorSpec::CliquePlusIsolated { k, n } => vec![k, n],
            GeneratorSpec::Gnm { n, m, seed } => vec![n, m, seed],
            GeneratorSpec::Star { leaves } => vec![leaves],
            GeneratorSpec::DoubleStar { leaves_per_center } => vec![leaves_per_center],
            GeneratorSpec::Path { n } | GeneratorSpec::Complete { n } => vec![n],
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params().iter().map(u64::to_string).collect();
        write!(f, "{}:{}", self.family(), params.join(","))
    }
}

impl FromStr for GeneratorSpec {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: &str| GraphError::InfeasibleSpec(format!("{s:?}: {msg}"));
        let (family, rest) = s.split_once(':').ok_or_else(|| bad("expected family:params"))?;
        let params: Vec<u64> = rest
            .split(',')
            .map(|p| p.trim().parse::<u64>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad("parameters must be nonnegative integers"))?;
        let arity = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(bad(&format!("{family} takes {k} parameter(s)")))
            }
        };
        let spec = match family.trim() {
            "clique_plus_isolated" => {
                arity(2)?;
                GeneratorSpec::CliquePlusIsolated { k: params[0], n: params[1] }
            }
            "gnm" => {
                arity(3)?;
                GeneratorSpec::Gnm { n: params[0], m: params[1], seed: params[2] }
            }
            "star" => {
                arity(1)?;
                GeneratorSpec::Star { leaves: params[0] }
            }
            "double_star" => {
                arity(1)?;
                GeneratorSpec::DoubleStar { leaves_per_center: params[0] }
            }
            "path" => {
                arity(1)?;
                GeneratorSpec::Path { n: params[0] }
            }
            "complete" => {
                arity(1)?;
                GeneratorSpec::Complete { n: params[0] }
            }
            other => return Err(bad(&format!("unknown family {other:?}"))),
        };
        Ok(spec)
    }
}

fn infeasible(spec: &GeneratorSpec, msg: &str) -> GraphError {
    GraphError::InfeasibleSpec(format!("{spec}: {msg}"))
}

fn check_n(spec: &GeneratorSpec, n: u64) -> Result<usize, GraphError> {
    if n == 0 {
        return Err(infeasible(spec, "n must be positive"));
    }
    if n > u64::from(Vertex::MAX) {
        return Err(infeasible(spec, "n exceeds label range"));
    }
    Ok(n as usize)
}

fn clique_edges(k: u64) -> impl Iterator<Item = (Vertex, Vertex)> {
    (0..k).flat_map(move |u| (u + 1..k).map(move |v| (u as Vertex, v as Vertex)))
}

/// Builds the graph described by `spec`. Deterministic; `gnm` depends only
/// on its seed.
pub fn generate(spec: &GeneratorSpec) -> Result<Graph, GraphError> {
    match *spec {
        GeneratorSpec::CliquePlusIsolated { k, n } => {
            let n = check_n(spec, n)?;
            if k == 0 || k > n as u64 {
                return Err(infeasible(spec, "need 1 <= k <= n"));
            }
            Graph::from_edges(n, clique_edges(k))
        }
        GeneratorSpec::Complete { n } => {
            let nn = check_n(spec, n)?;
            Graph::from_edges(nn, clique_edges(n))
        }
        GeneratorSpec::Star { leaves } => {
            if leaves == 0 {
                return Err(infeasible(spec, "leaves must be positive"));
            }
            let n = check_n(spec, leaves + 1)?;
            Graph::from_edges(n, (1..=leaves as Vertex).map(|l| (0, l)))
        }
        GeneratorSpec::DoubleStar { leaves_per_center: l } => {
            if l == 0 {
                return Err(infeasible(spec, "leaves_per_center must be positive"));
            }
            let n = check_n(spec, 2 * l + 2)?;
            let l = l as Vertex;
            let edges = std::iter::once((0, 1))
                .chain((2..2 + l).map(|x| (0, x)))
                .chain((2 + l..2 + 2 * l).map(|x| (1, x)));
            Graph::from_edges(n, edges)
        }
        GeneratorSpec::Path { n } => {
            let nn = check_n(spec, n)?;
            Graph::from_edges(nn, (1..n as Vertex).map(|v| (v - 1, v)))
        }
        GeneratorSpec::Gnm { n, m, seed } => {
            let nn = check_n(spec, n)?;
            let max = n * (n - 1) / 2;
            if m > max {
                return Err(infeasible(spec, "m exceeds n(n-1)/2"));
            }
            Graph::from_edges(nn, gnm_edges(n, m, max, seed))
        }
    }
}

/// Draws `m` distinct pairs. Rejection on pair collisions when the graph is
/// sparse; for dense requests, draws the complement instead.
fn gnm_edges(n: u64, m: u64, max: u64, seed: u64) -> Vec<(Vertex, Vertex)> {
    let mut bits = SeededBits::new(seed);
    let target = if 2 * m <= max { m } else { max - m };
    let mut chosen: HashSet<(Vertex, Vertex)> = HashSet::with_capacity(target as usize);
    while (chosen.len() as u64) < target {
        let u = bits.uniform_below(n).expect("seeded source never runs out") as Vertex;
        let v = bits.uniform_below(n).expect("seeded source never runs out") as Vertex;
        if u != v {
            chosen.insert((u.min(v), u.max(v)));
        }
    }
    let mut edges: Vec<_> = if target == m {
        chosen.into_iter().collect()
    } else {
        clique_edges(n).filter(|e| !chosen.contains(e)).collect()
    };
    edges.sort_unstable();
    edges
}
