use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::bounds::{Bracket, DistributionBounds};
use crate::coins::{fast_dice_roller, BitSource, Coin, Exhausted};

/// How the enumerating source treats uniform and rational draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resolution {
    /// Expand them into fair bits through the same rejection procedure the
    /// seeded source runs. This is the tree the production code walks.
    FairBits,
    /// Branch on them directly with exact weights `1/b` and `a/b`. Their
    /// bit-level exactness is checked separately, and the trees of whole
    /// samplers stay small.
    ExactDraws,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum EnumError {
    #[error("no path resolved within the depth budget")]
    BudgetTooSmall,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Bit,
    Uniform(u64),
    Ratio(u64, u64),
    Bracket,
}

/// Weight of one branch: `2^-halves · factor`.
#[derive(Debug, Clone)]
enum Weight {
    Half,
    Factor(BigRational),
}

/// Value `UNKNOWN` marks the unresolved branch of a bracket.
const UNKNOWN: u64 = u64::MAX;

#[derive(Debug, Clone)]
struct Frame {
    kind: Kind,
    options: Vec<(u64, Weight)>,
    choice: usize,
    /// Weight of the path through this frame's current choice.
    halves: usize,
    factor: Option<BigRational>,
}

impl Frame {
    fn new(kind: Kind, options: Vec<(u64, Weight)>, parent: Option<&Frame>, floor: Option<u64>) -> Frame {
        let mut frame = Frame { kind, options, choice: 0, halves: 0, factor: None };
        frame.reweigh(parent, floor);
        frame
    }

    /// With `floor`, factors are rounded down to multiples of `2^-floor`.
    fn reweigh(&mut self, parent: Option<&Frame>, floor: Option<u64>) {
        let (halves, factor) = match parent {
            Some(p) => (p.halves, p.factor.as_ref()),
            None => (0, None),
        };
        match &self.options[self.choice].1 {
            Weight::Half => {
                self.halves = halves + 1;
                self.factor = factor.cloned();
            }
            Weight::Factor(f) => {
                self.halves = halves;
                let product = match factor {
                    None => f.clone(),
                    Some(acc) => acc * f,
                };
                self.factor = Some(match floor {
                    None => product,
                    Some(bits) => floor_dyadic(&product, bits),
                });
            }
        }
    }
}

fn floor_dyadic(x: &BigRational, bits: u64) -> BigRational {
    let num = (x.numer() << bits) / x.denom();
    BigRational::new(num, BigInt::one() << bits)
}

/// A [`BitSource`] that replays one path of the randomness tree per run.
///
/// Branch points are fair bits and, in [`Resolution::ExactDraws`], whole
/// uniform and rational draws. [`EnumSource::bracket`] adds a three-way
/// branch for coins whose bias is only known to lie in an interval.
/// Zero-weight branches are never taken. A run that needs more than `depth`
/// branch points is cut off and its mass counted as residual.
#[derive(Debug)]
pub struct EnumSource {
    mode: Resolution,
    depth: usize,
    floor: Option<u64>,
    frames: Vec<Frame>,
    pos: usize,
}

impl EnumSource {
    fn new(mode: Resolution, depth: usize, floor: Option<u64>) -> Self {
        EnumSource { mode, depth, floor, frames: Vec::new(), pos: 0 }
    }

    pub fn mode(&self) -> Resolution {
        self.mode
    }

    fn branch(&mut self, kind: Kind, options: impl FnOnce() -> Vec<(u64, Weight)>) -> Result<u64, Exhausted> {
        if self.pos < self.frames.len() {
            let frame = &self.frames[self.pos];
            debug_assert_eq!(frame.kind, kind, "procedure is not deterministic");
            self.pos += 1;
            let value = frame.options[frame.choice].0;
            return if value == UNKNOWN { Err(Exhausted) } else { Ok(value) };
        }
        if self.pos >= self.depth {
            return Err(Exhausted);
        }
        let options = options();
        debug_assert!(!options.is_empty());
        let value = options[0].0;
        let frame = Frame::new(kind, options, self.frames.last(), self.floor);
        self.frames.push(frame);
        self.pos += 1;
        if value == UNKNOWN {
            Err(Exhausted)
        } else {
            Ok(value)
        }
    }

    /// A coin known only to have bias in `[lo, hi]`: heads with weight
    /// `lo`, tails with weight `1 - hi`, and the remaining `hi - lo` cut
    /// off as residual.
    pub fn bracket(&mut self, b: &Bracket) -> Result<bool, Exhausted> {
        let value = self.branch(Kind::Bracket, || {
            let mut options = Vec::with_capacity(3);
            if b.lo > BigRational::zero() {
                options.push((1, Weight::Factor(b.lo.clone())));
            }
            if b.hi < BigRational::one() {
                options.push((0, Weight::Factor(BigRational::one() - &b.hi)));
            }
            if b.hi > b.lo {
                options.push((UNKNOWN, Weight::Factor(b.width())));
            }
            options
        })?;
        Ok(value == 1)
    }

    /// Advances to the next unexplored path; `false` when the tree is done.
    fn advance(&mut self) -> bool {
        while let Some(mut frame) = self.frames.pop() {
            if frame.choice + 1 < frame.options.len() {
                frame.choice += 1;
                frame.reweigh(self.frames.last(), self.floor);
                self.frames.push(frame);
                self.pos = 0;
                return true;
            }
        }
        false
    }

    /// `(halves, factor)` of the current path.
    fn path_weight(&self) -> (usize, Option<BigRational>) {
        match self.frames.last() {
            Some(f) => (f.halves, f.factor.clone()),
            None => (0, None),
        }
    }
}

impl BitSource for EnumSource {
    fn next_bit(&mut self) -> Result<bool, Exhausted> {
        let value = self.branch(Kind::Bit, || vec![(0, Weight::Half), (1, Weight::Half)])?;
        Ok(value == 1)
    }

    fn uniform_below(&mut self, b: u64) -> Result<u64, Exhausted> {
        match self.mode {
            Resolution::FairBits => fast_dice_roller(self, b),
            Resolution::ExactDraws => {
                assert!(b >= 1, "uniform_below(0)");
                if b == 1 {
                    return Ok(0);
                }
                self.branch(Kind::Uniform(b), || {
                    let w = BigRational::new(BigInt::one(), BigInt::from(b));
                    (0..b).map(|i| (i, Weight::Factor(w.clone()))).collect()
                })
            }
        }
    }

    fn ratio(&mut self, num: u64, den: u64) -> Result<bool, Exhausted> {
        assert!(den >= 1 && num <= den, "ratio {num}/{den} out of range");
        if num == 0 {
            return Ok(false);
        }
        if num == den {
            return Ok(true);
        }
        match self.mode {
            Resolution::FairBits => Ok(fast_dice_roller(self, den)? < num),
            Resolution::ExactDraws => {
                let value = self.branch(Kind::Ratio(num, den), || {
                    let yes = BigRational::new(num.into(), den.into());
                    let no = BigRational::one() - &yes;
                    vec![(1, Weight::Factor(yes)), (0, Weight::Factor(no))]
                })?;
                Ok(value == 1)
            }
        }
    }
}

/// A stub coin for enumeration whose bias is known to lie in a bracket.
#[derive(Debug, Clone)]
pub struct BracketCoin(pub Bracket);

impl Coin<EnumSource> for BracketCoin {
    fn flip(&mut self, src: &mut EnumSource) -> Result<bool, Exhausted> {
        src.bracket(&self.0)
    }
}

/// Sums leaf weights of the form `2^-k · factor` without normalizing
/// a rational per leaf.
#[derive(Debug, Default)]
struct Accumulator {
    dyadic: Vec<u64>,
    rational: Option<BigRational>,
}

impl Accumulator {
    fn add(&mut self, halves: usize, factor: Option<BigRational>) {
        match factor {
            None => {
                if self.dyadic.len() <= halves {
                    self.dyadic.resize(halves + 1, 0);
                }
                self.dyadic[halves] += 1;
            }
            Some(f) => {
                let w = f / BigRational::from_integer(BigInt::one() << halves);
                self.rational = Some(match self.rational.take() {
                    None => w,
                    Some(acc) => acc + w,
                });
            }
        }
    }

    fn total(self) -> BigRational {
        let top = self.dyadic.len().saturating_sub(1);
        let mut num = BigUint::zero();
        for (k, &count) in self.dyadic.iter().enumerate() {
            num += BigUint::from(count) << (top - k);
        }
        let dyadic = BigRational::new(BigInt::from(num), BigInt::one() << top);
        dyadic + self.rational.unwrap_or_else(BigRational::zero)
    }
}

/// Runs `procedure` on every path of its randomness tree up to `depth`
/// branch points and returns exact per-outcome masses. Resolved masses plus
/// the residual sum to exactly one.
pub fn enumerate_outcomes<T, F>(
    mode: Resolution,
    depth: usize,
    procedure: F,
) -> Result<DistributionBounds<T>, EnumError>
where
    T: Ord + Clone,
    F: FnMut(&mut EnumSource) -> Result<T, Exhausted>,
{
    let bounds = enumerate_lenient(mode, depth, None, procedure);
    if bounds.outcomes().next().is_none() {
        return Err(EnumError::BudgetTooSmall);
    }
    Ok(bounds)
}

/// As [`enumerate_outcomes`], but an all-residual result is not an error.
/// With `floor`, path weights are rounded down to multiples of `2^-floor`
/// and the rounding loss is added to the residual.
pub(crate) fn enumerate_lenient<T, F>(
    mode: Resolution,
    depth: usize,
    floor: Option<u64>,
    mut procedure: F,
) -> DistributionBounds<T>
where
    T: Ord + Clone,
    F: FnMut(&mut EnumSource) -> Result<T, Exhausted>,
{
    let mut src = EnumSource::new(mode, depth, floor);
    let mut acc: BTreeMap<T, Accumulator> = BTreeMap::new();
    let mut residual = Accumulator::default();
    loop {
        let result = procedure(&mut src);
        assert_eq!(src.pos, src.frames.len(), "procedure is not deterministic");
        let (halves, factor) = src.path_weight();
        match result {
            Ok(t) => acc.entry(t).or_default().add(halves, factor),
            Err(Exhausted) => residual.add(halves, factor),
        }
        if !src.advance() {
            break;
        }
    }
    let lower: BTreeMap<T, BigRational> = acc
        .into_iter()
        .map(|(t, a)| (t, a.total()))
        .filter(|(_, p)| !p.is_zero())
        .collect();
    let resolved = lower.values().fold(BigRational::zero(), |s, p| s + p);
    if floor.is_some() {
        return DistributionBounds::new(lower, BigRational::one() - resolved);
    }
    let residual = residual.total();
    debug_assert_eq!(
        resolved + &residual,
        BigRational::one(),
        "enumeration lost mass"
    );
    DistributionBounds::new(lower, residual)
}
