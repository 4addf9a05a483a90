//! Exact `Bern(2q)` from a `q`-coin (`q <= 1/3`) and the reciprocal
//! factory `Bern(1/(2p))` from a `p`-coin (`p >= 2/3`).
//!
//! With `x = q/(1-q)` we have `2q = 2x/(1+x)`. [`race`] realizes that ratio
//! from `Bern(x)` trials, and [`ruin_walk`] realizes `Bern(x)` from `q`-coin
//! flips: a walk that steps down on heads and up on tails is ruined from
//! level `i` with probability `x^i`. To stop the upward escape, the walk runs
//! in stages. In stage `j` it occupies levels `1..=K_j`, and a tail moves up
//! only with probability `a_j` (so ruin from `i` has probability
//! `(x/a_j)^i`). At level `K_j` it must pass `K_j` independent
//! `Bern(a_{j+1}/a_j)` tests to continue in stage `j + 1` at the same level;
//! a failed test ends the walk with `false`. The tests make the per-stage
//! ruin laws agree at the boundary, so the walk returns `true` with
//! probability exactly `x`.
//!
//! Schedule: `a_j = (5·2^(j-1) + 4) / (9·2^(j-1))`, `K_j = 3·2^j`.

use super::{geometric_half, BitSource, Coin, Exhausted, Inverted, Step};

/// The last stage whose test parameters fit in `u64`. Reaching it needs
/// the walk to pass `MAX_STAGE - 1` boundary tests in a row, which happens
/// with probability far below `1e-60`.
pub const MAX_STAGE: u32 = 58;

/// State of the staged ruin walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RuinWalk {
    pub stage: u32,
    pub level: u64,
}

impl Default for RuinWalk {
    fn default() -> Self {
        RuinWalk::START
    }
}

impl RuinWalk {
    pub const START: RuinWalk = RuinWalk { stage: 1, level: 1 };

    /// Top level `K_j` of stage `j`.
    pub fn cap(stage: u32) -> u64 {
        3 << stage
    }

    /// Up-move probability `a_j` after a tail, as `(num, den)`.
    pub fn up_ratio(stage: u32) -> (u64, u64) {
        let h = 1u64 << (stage - 1);
        (5 * h + 4, 9 * h)
    }

    /// Boundary test `a_{j+1}/a_j` at the top of stage `j`, as `(num, den)`.
    pub fn pass_ratio(stage: u32) -> (u64, u64) {
        let h = 1u64 << stage;
        (5 * h + 4, 5 * h + 8)
    }

    /// One move. A move at the top level runs the whole boundary test.
    pub fn step<S, C>(self, coin: &mut C, src: &mut S) -> Result<Step<RuinWalk, bool>, Exhausted>
    where
        S: BitSource + ?Sized,
        C: Coin<S> + ?Sized,
    {
        let RuinWalk { stage, level } = self;
        let cap = Self::cap(stage);
        if level == cap {
            let (num, den) = Self::pass_ratio(stage);
            for _ in 0..cap {
                if !src.ratio(num, den)? {
                    return Ok(Step::Done(false));
                }
            }
            assert!(stage < MAX_STAGE, "ruin walk passed stage {MAX_STAGE}");
            return Ok(Step::Continue(RuinWalk { stage: stage + 1, level }));
        }
        if coin.flip(src)? {
            if level == 1 {
                return Ok(Step::Done(true));
            }
            return Ok(Step::Continue(RuinWalk { stage, level: level - 1 }));
        }
        let up = if stage == 1 {
            true
        } else {
            let (num, den) = Self::up_ratio(stage);
            src.ratio(num, den)?
        };
        let level = if up { level + 1 } else { level };
        Ok(Step::Continue(RuinWalk { stage, level }))
    }
}

/// `Bern(q/(1-q))` from a `q`-coin with `q <= 1/3`.
pub fn ruin_walk<S, C>(coin: &mut C, src: &mut S) -> Result<bool, Exhausted>
where
    S: BitSource + ?Sized,
    C: Coin<S> + ?Sized,
{
    let mut state = RuinWalk::START;
    loop {
        match state.step(coin, src)? {
            Step::Continue(next) => state = next,
            Step::Done(out) => return Ok(out),
        }
    }
}

/// The walk as a coin of bias `q/(1-q)`.
#[derive(Debug, Clone)]
pub struct RuinCoin<C>(pub C);

impl<S: BitSource + ?Sized, C: Coin<S>> Coin<S> for RuinCoin<C> {
    fn flip(&mut self, src: &mut S) -> Result<bool, Exhausted> {
        ruin_walk(&mut self.0, src)
    }
}

/// One round of the race between `Bern(2/3)·Bern(x)` and
/// `Bern(1/3)·(1 - Bern(x))`.
pub fn race_round<S, X>(x_coin: &mut X, src: &mut S) -> Result<Step<(), bool>, Exhausted>
where
    S: BitSource + ?Sized,
    X: Coin<S> + ?Sized,
{
    let side = src.ratio(2, 3)?;
    let x = x_coin.flip(src)?;
    Ok(match (side, x) {
        (true, true) => Step::Done(true),
        (false, false) => Step::Done(false),
        _ => Step::Continue(()),
    })
}

/// `Bern(2x/(1+x))` from a coin of bias `x`.
pub fn race<S, X>(x_coin: &mut X, src: &mut S) -> Result<bool, Exhausted>
where
    S: BitSource + ?Sized,
    X: Coin<S> + ?Sized,
{
    loop {
        if let Step::Done(out) = race_round(x_coin, src)? {
            return Ok(out);
        }
    }
}

/// `Bern(2q)` from a `q`-coin. Only defined for `q <= 1/3`.
pub fn double_coin<S, C>(coin: &mut C, src: &mut S) -> Result<bool, Exhausted>
where
    S: BitSource + ?Sized,
    C: Coin<S> + ?Sized,
{
    race(&mut RuinCoin(coin), src)
}

/// [`double_coin`] as a coin of bias `2q`.
#[derive(Debug, Clone)]
pub struct Doubled<C>(pub C);

impl<S: BitSource + ?Sized, C: Coin<S>> Coin<S> for Doubled<C> {
    fn flip(&mut self, src: &mut S) -> Result<bool, Exhausted> {
        double_coin(&mut self.0, src)
    }
}

/// Draws `K = geometric_half` and returns whether `K` flips of `coin` all
/// come up heads. For a coin of bias `r < 1` this has probability
/// `1/(2 - r)`.
pub fn geometric_all_heads<S, C>(coin: &mut C, src: &mut S) -> Result<bool, Exhausted>
where
    S: BitSource + ?Sized,
    C: Coin<S> + ?Sized,
{
    let k = geometric_half(src)?;
    for _ in 0..k {
        if !coin.flip(src)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Bern(1/(2p))` from a `p`-coin with `p >= 2/3`.
pub fn reciprocal_factory<S, C>(p_coin: &mut C, src: &mut S) -> Result<bool, Exhausted>
where
    S: BitSource + ?Sized,
    C: Coin<S> + ?Sized,
{
    geometric_all_heads(&mut Doubled(Inverted(p_coin)), src)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coins::{Counted, RationalCoin, SeededBits};

    #[test]
    fn schedule_values() {
        assert_eq!(RuinWalk::up_ratio(1), (9, 9));
        assert_eq!(RuinWalk::up_ratio(2), (14, 18));
        assert_eq!(RuinWalk::pass_ratio(1), (14, 18));
        assert_eq!(RuinWalk::pass_ratio(2), (24, 28));
        assert_eq!((RuinWalk::cap(1), RuinWalk::cap(2), RuinWalk::cap(3)), (6, 12, 24));
        // a_{j+1}/a_j reproduces the pass ratio.
        for j in 1..MAX_STAGE {
            let (n1, d1) = RuinWalk::up_ratio(j);
            let (n2, d2) = RuinWalk::up_ratio(j + 1);
            let (pn, pd) = RuinWalk::pass_ratio(j);
            let big = |x: u64| num_bigint::BigUint::from(x);
            assert_eq!(big(n2) * big(d1) * big(pd), big(pn) * big(d2) * big(n1));
        }
    }

    #[test]
    fn zero_coin_never_reaches_ruin() {
        let mut bits = SeededBits::new(5);
        let mut zero = RationalCoin::new(0, 1);
        for _ in 0..1000 {
            assert!(!ruin_walk(&mut zero, &mut bits).unwrap());
            assert!(!double_coin(&mut zero, &mut bits).unwrap());
        }
    }

    #[test]
    fn certain_coin_gives_half() {
        let mut bits = SeededBits::new(6);
        let mut one = RationalCoin::new(1, 1);
        let hits = (0..20_000)
            .filter(|_| reciprocal_factory(&mut one, &mut bits).unwrap())
            .count();
        assert!((hits as f64 / 20_000.0 - 0.5).abs() < 0.02, "{hits}");
    }

    #[test]
    fn reciprocal_counts_flips_through_the_coin() {
        let mut bits = SeededBits::new(8);
        let mut coin = Counted::new(RationalCoin::new(2, 3));
        for _ in 0..1000 {
            reciprocal_factory(&mut coin, &mut bits).unwrap();
        }
        assert!(coin.flips > 0);
    }
}
