//! Write a random graph as an edge list, read it back and sample from it.

use exact_edge::coins::SeededBits;
use exact_edge::graph::{generate, load_edge_list, write_edge_list, GeneratorSpec, GraphOracle};
use exact_edge::samplers::{ExactSampler, Orientation, SamplerConfig};

fn main() {
    let graph = generate(&GeneratorSpec::Gnm { n: 12, m: 20, seed: 3 }).unwrap();
    let mut text = Vec::new();
    write_edge_list(&graph, &mut text).unwrap();
    let text = String::from_utf8(text).unwrap();
    print!("{}", text.lines().take(6).map(|l| format!("{l}\n")).collect::<String>());
    println!("...");

    let back = load_edge_list(&text).unwrap();
    assert_eq!(back, graph);

    let cfg = SamplerConfig { orientation: Orientation::CanonicalUndirected, ..Default::default() };
    let sampler = ExactSampler::new(&back, &cfg).unwrap();
    let mut oracle = GraphOracle::new(&back);
    let mut bits = SeededBits::new(1);
    let edges: Vec<String> = (0..8)
        .map(|_| {
            let (u, v) = sampler.sample(&mut oracle, &mut bits).unwrap().edge;
            format!("{u}-{v}")
        })
        .collect();
    println!("sampled {}", edges.join(" "));
}
