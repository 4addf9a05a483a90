//! Draw a few edges from a generated graph and show what they cost.
//!
//! cargo run --example sample_edges -- double_star:13 10

use exact_edge::coins::SeededBits;
use exact_edge::graph::{generate, GeneratorSpec, GraphOracle};
use exact_edge::samplers::{ExactSampler, SamplerConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let spec: GeneratorSpec = args.next().as_deref().unwrap_or("double_star:13").parse().expect("generator spec");
    let count: u64 = args.next().map_or(10, |c| c.parse().expect("count"));

    let graph = generate(&spec).expect("feasible spec");
    let sampler = ExactSampler::new(&graph, &SamplerConfig::default()).expect("graph has edges");
    let mut oracle = GraphOracle::new(&graph);
    let mut bits = SeededBits::new(42);

    println!("{spec}: n = {}, m = {}, theta = {}", graph.vertex_count(), graph.edge_count(), sampler.theta());
    for _ in 0..count {
        let before = oracle.counters();
        let s = sampler.sample(&mut oracle, &mut bits).expect("sample");
        let q = oracle.counters().since(&before);
        println!(
            "{:>4} {:<4} iterations {:>3}  queries {:>4}  p-coin flips {}",
            s.edge.0,
            s.edge.1,
            s.iterations,
            q.total(),
            s.factory_flips
        );
    }
    let c = oracle.counters();
    println!(
        "total: {} vertex, {} degree, {} neighbor queries",
        c.vertex_queries, c.degree_queries, c.neighbor_queries
    );
}
