//! The enumeration oracle on its own: exact masses of small randomized
//! procedures and absorption probabilities of a Markov chain.

use exact_edge::coins::{bern_rational, uniform_int, BitSource, Step};
use exact_edge::verify::{enumerate_chain, enumerate_outcomes, Arithmetic, ChainBudget, Resolution};

fn main() {
    // Uniform on 0..5 from fair bits, cut off after 20 bits.
    let d = enumerate_outcomes(Resolution::FairBits, 20, |s| uniform_int(s, 5)).unwrap();
    for (v, p) in d.outcomes() {
        println!("uniform_int(5) = {v}: at least {p}");
    }
    println!("unresolved after 20 bits: {}", d.residual());

    // Two coins: 1/3 then 2/7.
    let d = enumerate_outcomes(Resolution::ExactDraws, 4, |s| Ok((bern_rational(s, 1, 3)?, s.ratio(2, 7)?))).unwrap();
    for (v, p) in d.outcomes() {
        println!("{v:?}: {p}");
    }

    // Gambler's ruin on 0..=4 from 1 with a 2/5 chance of moving up.
    let budget = ChainBudget { step_depth: 2, max_distance: 10, arithmetic: Arithmetic::Exact };
    let d = enumerate_chain(1u32, Resolution::ExactDraws, &budget, |&i, s| {
        Ok(match (s.ratio(2, 5)?, i) {
            (true, 3) => Step::Done("top"),
            (true, _) => Step::Continue(i + 1),
            (false, 1) => Step::Done("bottom"),
            (false, _) => Step::Continue(i - 1),
        })
    })
    .unwrap();
    for (v, p) in d.outcomes() {
        println!("ruin walk ends at {v}: {p}");
    }
}
