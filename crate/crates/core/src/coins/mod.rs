//! Fair bits, exact rational coins, the graph-backed p-coin and the
//! reciprocal Bernoulli factory.
//!
//! Every coin is a [`Coin`] over some [`BitSource`], so the same code runs
//! on seeded bits in production and on the enumerating source in
//! [`crate::verify`].

mod basic;
mod factory;
mod source;

pub use basic::{Counted, Halved, Inverted, NotHeavy, PCoin, RationalCoin};
pub use factory::{
    double_coin, geometric_all_heads, race, race_round, reciprocal_factory, ruin_walk, Doubled,
    RuinCoin, RuinWalk, MAX_STAGE,
};
pub use source::{fast_dice_roller, BitSource, Exhausted, SeededBits};

/// One step of a Markov procedure: move to a new state or stop with a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step<S, T> {
    Continue(S),
    Done(T),
}

/// A Bernoulli trial of fixed (possibly unknown) bias.
pub trait Coin<S: BitSource + ?Sized> {
    fn flip(&mut self, src: &mut S) -> Result<bool, Exhausted>;
}

impl<S: BitSource + ?Sized, C: Coin<S> + ?Sized> Coin<S> for &mut C {
    fn flip(&mut self, src: &mut S) -> Result<bool, Exhausted> {
        (**self).flip(src)
    }
}

/// Uniform on `0..b`.
pub fn uniform_int<S: BitSource + ?Sized>(src: &mut S, b: u64) -> Result<u64, Exhausted> {
    src.uniform_below(b)
}

/// `true` with probability `a/b`, as `uniform_int(b) < a`.
pub fn bern_rational<S: BitSource + ?Sized>(src: &mut S, a: u64, b: u64) -> Result<bool, Exhausted> {
    src.ratio(a, b)
}

/// Number of tails (`0` bits) before the first head.
pub fn geometric_half<S: BitSource + ?Sized>(src: &mut S) -> Result<u64, Exhausted> {
    let mut k = 0;
    while !src.next_bit()? {
        k += 1;
    }
    Ok(k)
}
