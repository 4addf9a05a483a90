//! Chi-square and total variation of a large run against uniform.
//!
//! cargo run --release --example uniformity_test -- 1000000

use exact_edge::coins::SeededBits;
use exact_edge::graph::{generate, GraphOracle};
use exact_edge::samplers::{ExactSampler, SamplerConfig};
use exact_edge::verify::{chi_square_uniform, empirical_tv};
use num_traits::ToPrimitive;
use std::collections::BTreeMap;

fn main() {
    let samples: u64 = std::env::args().nth(1).map_or(200_000, |s| s.parse().expect("count"));
    let graph = generate(&"clique_plus_isolated:5,25".parse().unwrap()).unwrap();
    let sampler = ExactSampler::new(&graph, &SamplerConfig::default()).unwrap();
    let mut counts: BTreeMap<_, u64> = graph.directed_edges().map(|e| (e, 0)).collect();
    let mut oracle = GraphOracle::new(&graph);
    for seed in 1..=5 {
        counts.values_mut().for_each(|c| *c = 0);
        let mut bits = SeededBits::new(seed);
        for _ in 0..samples {
            *counts.get_mut(&sampler.sample(&mut oracle, &mut bits).unwrap().edge).unwrap() += 1;
        }
        let cells: Vec<u64> = counts.values().copied().collect();
        let chi = chi_square_uniform(&cells).unwrap();
        let tv = empirical_tv(&cells, cells.len()).unwrap();
        println!(
            "seed {seed}: chi-square {:.2} with {} degrees of freedom, p = {:.4}, TV {:.5}",
            chi.statistic,
            chi.cells - 1,
            chi.p_value,
            tv.to_f64().unwrap()
        );
    }
}
