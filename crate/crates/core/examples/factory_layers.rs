//! The reciprocal factory at a few biases: enumerated brackets for each
//! layer and the empirical p-coin cost.
//!
//! cargo run --release --example factory_layers

use exact_edge::coins::{reciprocal_factory, Counted, RationalCoin, SeededBits};
use exact_edge::verify::{factory_bounds, FactoryDepths};

fn main() {
    let depths = FactoryDepths::default();
    for (num, den) in [(2, 3), (3, 4), (13, 14), (1, 1)] {
        let b = factory_bounds(num, den, &depths).expect("p in [2/3, 1]");
        println!("p = {num}/{den}");
        println!("  x = q/(1-q)  {}", b.x);
        println!("  2q           {}", b.two_q);
        println!("  1/(2p)       {}", b.reciprocal);

        let mut bits = SeededBits::new(9);
        let mut coin = Counted::new(RationalCoin::new(num, den));
        let trials = 100_000;
        let heads = (0..trials).filter(|_| reciprocal_factory(&mut coin, &mut bits).unwrap()).count();
        println!(
            "  empirical    {:.4} over {trials}, {:.2} p-coin flips each",
            heads as f64 / trials as f64,
            coin.flips as f64 / trials as f64
        );
    }
}
