//! Exactly uniform edge sampling in the adjacency-list query model.
//!
//! The sampler sees a graph only through three queries (the `i`-th vertex,
//! the degree of a vertex, the `j`-th neighbor of a vertex) and, given an
//! upper bound on the edge count that is within a constant factor of the
//! truth, returns every directed edge with probability exactly `1/(2m)` in
//! an expected `O(n/√m)` queries.
//!
//! The crate is split along the same lines as the algorithm:
//!
//! - [`graph`]: the immutable graph, the counted query oracle, generators and
//!   the edge-list text format.
//! - [`coins`]: every source of randomness. Fair bits, exact uniform integers
//!   and rational coins, the graph-backed p-coin and the Bernoulli factory
//!   that turns p-coin flips into an exact `Bern(1/(2p))` trial.
//! - [`samplers`]: the single attempt, the exact rejection loop and the
//!   ε-approximate baseline.
//! - [`verify`]: an enumeration oracle that walks the randomness tree of any
//!   of the above with exact rational weights, plus the statistical tests
//!   and query-cost measurement used for large runs.
//! - [`commands`]: the four subcommands behind the `edge-sampler` binary.
//!
//! ```
//! use exact_edge::coins::SeededBits;
//! use exact_edge::graph::{generate, GeneratorSpec, GraphOracle};
//! use exact_edge::samplers::{ExactSampler, SamplerConfig};
//!
//! let graph = generate(&GeneratorSpec::Star { leaves: 8 }).unwrap();
//! let sampler = ExactSampler::new(&graph, &SamplerConfig::default()).unwrap();
//! let mut oracle = GraphOracle::new(&graph);
//! let mut bits = SeededBits::new(7);
//! let sample = sampler.sample(&mut oracle, &mut bits).unwrap();
//! assert!(graph.has_edge(sample.edge.0, sample.edge.1));
//! ```

pub mod coins;
pub mod commands;
pub mod graph;
pub mod samplers;
pub mod verify;

/// A vertex label in `0..n`.
pub type Vertex = u32;

/// An ordered pair `(origin, target)`; every undirected edge contributes two.
pub type DirectedEdge = (Vertex, Vertex);
