//! The ε-approximate baseline against the exact sampler, by enumeration.
//! The baseline is only biased when a heavy vertex has heavy neighbors.

use exact_edge::graph::generate;
use exact_edge::samplers::{Eps, SamplerConfig};
use exact_edge::verify::{baseline_distribution, exact_sampler_distribution, FactoryDepths};

fn main() {
    let eps = Eps::new(1, 2).unwrap();
    for spec in ["star:30", "double_star:13", "double_star:40"] {
        let graph = generate(&spec.parse().unwrap()).unwrap();
        let baseline = baseline_distribution(&graph, eps, 64).unwrap();
        let exact = exact_sampler_distribution(&graph, &SamplerConfig::default(), 64, &FactoryDepths::default())
            .unwrap();
        println!("{spec}");
        println!("  baseline max/min {}", baseline.max_min_ratio());
        println!("  exact    max/min {}", exact.max_min_ratio());
    }
}
