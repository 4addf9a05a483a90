use super::{BitSource, Coin, Exhausted};
use crate::graph::GraphOracle;
use crate::Vertex;

/// `true` with probability `num/den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalCoin {
    pub num: u64,
    pub den: u64,
}

impl RationalCoin {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den >= 1 && num <= den, "bias {num}/{den} out of range");
        RationalCoin { num, den }
    }
}

impl<S: BitSource + ?Sized> Coin<S> for RationalCoin {
    fn flip(&mut self, src: &mut S) -> Result<bool, Exhausted> {
        src.ratio(self.num, self.den)
    }
}

/// Bias `1 - p` from a coin of bias `p`.
#[derive(Debug, Clone)]
pub struct Inverted<C>(pub C);

impl<S: BitSource + ?Sized, C: Coin<S>> Coin<S> for Inverted<C> {
    fn flip(&mut self, src: &mut S) -> Result<bool, Exhausted> {
        Ok(!self.0.flip(src)?)
    }
}

/// Bias `p/2`: one flip of the inner coin and one fair bit, always both.
#[derive(Debug, Clone)]
pub struct Halved<C>(pub C);

impl<S: BitSource + ?Sized, C: Coin<S>> Coin<S> for Halved<C> {
    fn flip(&mut self, src: &mut S) -> Result<bool, Exhausted> {
        let heads = self.0.flip(src)?;
        let bit = src.next_bit()?;
        Ok(heads && bit)
    }
}

/// Counts flips of the inner coin.
#[derive(Debug, Clone)]
pub struct Counted<C> {
    pub inner: C,
    pub flips: u64,
}

impl<C> Counted<C> {
    pub fn new(inner: C) -> Self {
        Counted { inner, flips: 0 }
    }
}

impl<S: BitSource + ?Sized, C: Coin<S>> Coin<S> for Counted<C> {
    fn flip(&mut self, src: &mut S) -> Result<bool, Exhausted> {
        self.flips += 1;
        self.inner.flip(src)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("vertex {vertex} has degree {degree} <= theta = {theta}")]
pub struct NotHeavy {
    pub vertex: Vertex,
    pub degree: u64,
    pub theta: u64,
}

/// Heads iff a uniformly random neighbor of the heavy vertex `v` is light,
/// i.e. with probability `d_l(v)/d(v)`. Each flip costs one neighbor query
/// and one degree query.
#[derive(Debug)]
pub struct PCoin<'a, 'g> {
    oracle: &'a mut GraphOracle<'g>,
    vertex: Vertex,
    degree: u64,
    theta: u64,
    flips: u64,
}

impl<'a, 'g> PCoin<'a, 'g> {
    /// Reads `d(v)` with one degree query.
    pub fn new(oracle: &'a mut GraphOracle<'g>, v: Vertex, theta: u64) -> Result<Self, NotHeavy> {
        let degree = oracle.degree(v).expect("vertex label in range");
        Self::with_degree(oracle, v, degree, theta)
    }

    /// For callers that already hold `d(v)`.
    pub fn with_degree(
        oracle: &'a mut GraphOracle<'g>,
        v: Vertex,
        degree: u64,
        theta: u64,
    ) -> Result<Self, NotHeavy> {
        if degree <= theta {
            return Err(NotHeavy { vertex: v, degree, theta });
        }
        Ok(PCoin { oracle, vertex: v, degree, theta, flips: 0 })
    }

    pub fn flips(&self) -> u64 {
        self.flips
    }
}

impl<S: BitSource + ?Sized> Coin<S> for PCoin<'_, '_> {
    fn flip(&mut self, src: &mut S) -> Result<bool, Exhausted> {
        let j = src.uniform_below(self.degree)?;
        self.flips += 1;
        let w = self.oracle.neighbor(self.vertex, j).expect("index below degree");
        let dw = self.oracle.degree(w).expect("neighbor label in range");
        Ok(dw <= self.theta)
    }
}
