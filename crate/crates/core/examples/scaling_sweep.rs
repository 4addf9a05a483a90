//! Mean queries per sample against n/√m on the clique-plus-isolated family.
//!
//! cargo run --release --example scaling_sweep -- 1000,10000,100000

use exact_edge::commands::{cmd_bench, sweep_points, write_bench_csv, BenchOptions, GraphSource};

fn main() {
    let ns: Vec<u64> = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "1000,10000,100000".into())
        .split(',')
        .map(|n| n.parse().expect("integer n"))
        .collect();
    let points = sweep_points(&ns).into_iter().map(GraphSource::Generator).collect();
    let rows = cmd_bench(&BenchOptions { points, trials: 1000, seed: 1, eps: None }).expect("bench");
    write_bench_csv(&rows, std::io::stdout().lock()).unwrap();
}
