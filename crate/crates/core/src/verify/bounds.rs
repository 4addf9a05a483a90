use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

/// A closed interval `[lo, hi]` of probabilities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bracket {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Bracket {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "empty bracket");
        Bracket { lo, hi }
    }

    pub fn exact(p: BigRational) -> Self {
        Bracket { lo: p.clone(), hi: p }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, p: &BigRational) -> bool {
        &self.lo <= p && p <= &self.hi
    }

    /// Widens to the nearest multiples of `2^-bits`, clamped to `[0, 1]`.
    /// Keeps later arithmetic on small numbers at a cost of at most
    /// `2^(1-bits)` in width.
    pub fn round_outward(&self, bits: u32) -> Bracket {
        let scale = BigRational::from_integer(BigInt::one() << bits);
        let lo = ((&self.lo * &scale).floor() / &scale).max(BigRational::zero());
        let hi = ((&self.hi * &scale).ceil() / &scale).min(BigRational::one());
        Bracket { lo, hi }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.lo), to_f64(&self.hi))
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_f64();
        write!(f, "[{lo:.12}, {hi:.12}]")
    }
}

pub(crate) fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact lower bounds per outcome plus the mass left unresolved. Each
/// outcome's true probability lies in `[lower, lower + residual]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionBounds<T: Ord> {
    lower: BTreeMap<T, BigRational>,
    residual: BigRational,
}

impl<T: Ord + Clone> DistributionBounds<T> {
    pub fn new(lower: BTreeMap<T, BigRational>, residual: BigRational) -> Self {
        assert!(residual >= BigRational::zero(), "negative residual");
        DistributionBounds { lower, residual }
    }

    pub fn lower(&self, t: &T) -> BigRational {
        self.lower.get(t).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn upper(&self, t: &T) -> BigRational {
        self.lower(t) + &self.residual
    }

    pub fn bracket(&self, t: &T) -> Bracket {
        Bracket::new(self.lower(t), self.upper(t))
    }

    pub fn residual(&self) -> &BigRational {
        &self.residual
    }

    /// Outcomes with positive resolved mass, in order.
    pub fn outcomes(&self) -> impl Iterator<Item = (&T, &BigRational)> {
        self.lower.iter()
    }

    pub fn resolved_mass(&self) -> BigRational {
        self.lower.values().fold(BigRational::zero(), |acc, x| acc + x)
    }

    /// Merges outcomes under `f`, summing their lower bounds.
    pub fn map_outcomes<U: Ord + Clone>(&self, mut f: impl FnMut(&T) -> U) -> DistributionBounds<U> {
        let mut lower: BTreeMap<U, BigRational> = BTreeMap::new();
        for (t, p) in &self.lower {
            *lower.entry(f(t)).or_insert_with(BigRational::zero) += p;
        }
        DistributionBounds { lower, residual: self.residual.clone() }
    }
}

/// Float summary of one bracket for reports.
#[derive(Debug, Clone, Serialize)]
pub struct BracketSummary {
    pub lo: f64,
    pub hi: f64,
    pub target: f64,
    pub contains_target: bool,
}

impl BracketSummary {
    pub fn new(bracket: &Bracket, target: &BigRational) -> Self {
        let (lo, hi) = bracket.to_f64();
        BracketSummary {
            lo,
            hi,
            target: to_f64(target),
            contains_target: bracket.contains(target),
        }
    }
}
