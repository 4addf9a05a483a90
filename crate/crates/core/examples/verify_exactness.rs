//! Enumerate the sampler's randomness and bracket every directed edge's
//! output probability.
//!
//! cargo run --release --example verify_exactness -- star:8

use exact_edge::graph::{generate, GeneratorSpec};
use exact_edge::samplers::{theta, SamplerConfig};
use exact_edge::verify::{exact_sampler_distribution, FactoryDepths};
use num_traits::ToPrimitive;

fn main() {
    let spec: GeneratorSpec = std::env::args()
        .nth(1)
        .as_deref()
        .unwrap_or("double_star:13")
        .parse()
        .expect("generator spec");
    let graph = generate(&spec).expect("feasible spec");
    let bounds = exact_sampler_distribution(&graph, &SamplerConfig::default(), 64, &FactoryDepths::default())
        .expect("enumeration");

    println!("{spec}: theta = {}, target 1/{}", theta(graph.edge_count() as u64), 2 * graph.edge_count());
    for (v, f) in &bounds.heavy {
        println!("heavy vertex {v}: p = {}, 1/(2p) in {}", f.p, f.reciprocal);
    }
    for ((u, v), b) in bounds.normalized.iter().take(12) {
        println!("{u:>3} -> {v:<3} {b}");
    }
    if bounds.normalized.len() > 12 {
        println!("... {} more", bounds.normalized.len() - 12);
    }
    println!(
        "all contain target: {}, max width {:.3e}, iteration success in {}",
        bounds.all_contain_target(),
        bounds.max_width().to_f64().unwrap(),
        bounds.success
    );
}
