use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{ceil_sqrt, SampleError, Sample};
use crate::coins::{BitSource, Exhausted};
use crate::graph::{Graph, GraphOracle};
use crate::DirectedEdge;

/// A rational accuracy parameter `num/den` in `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eps {
    pub num: u64,
    pub den: u64,
}

impl Eps {
    pub fn new(num: u64, den: u64) -> Result<Self, SampleError> {
        if num == 0 || num >= den {
            return Err(SampleError::InvalidConfig(format!("eps = {num}/{den} not in (0, 1)")));
        }
        Ok(Eps { num, den })
    }
}

impl fmt::Display for Eps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Accepts `a/b` or a decimal such as `0.05`, read exactly.
impl FromStr for Eps {
    type Err = SampleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SampleError::InvalidConfig(format!("cannot parse eps {s:?}"));
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            let num = a.trim().parse().map_err(|_| bad())?;
            let den = b.trim().parse().map_err(|_| bad())?;
            return Eps::new(num, den);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 18 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let den = 10u64.pow(frac.len() as u32);
        let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let num = int.checked_mul(den).and_then(|x| x.checked_add(frac)).ok_or_else(bad)?;
        let g = num_integer::gcd(num, den).max(1);
        Eps::new(num / g, den / g)
    }
}

/// `⌈√(2m/ε)⌉` in integer arithmetic.
pub fn theta_eps(m: u64, eps: Eps) -> u64 {
    let x = 2 * m as u128 * eps.den as u128;
    let ceil = x.div_ceil(eps.num as u128);
    ceil_sqrt(ceil) as u64
}

/// The ε-approximate baseline. Each iteration picks one of two routes with
/// a fair bit. The light route returns a light edge `(u, v)` with
/// probability `1/(nθ_ε)`. The heavy route walks one step further from a
/// light vertex into a heavy `v` and returns a uniform edge `(v, w)`, which
/// gives `d_l(v)/(d(v)·nθ_ε)`. Heavy edges are therefore under-sampled by
/// the factor `d_l(v)/d(v) >= 1 - ε`.
#[derive(Debug, Clone)]
pub struct BaselineSampler {
    n: u64,
    theta: u64,
    eps: Eps,
}

impl BaselineSampler {
    pub fn new(graph: &Graph, eps: Eps) -> Result<Self, SampleError> {
        let m = graph.edge_count() as u64;
        if m == 0 {
            return Err(SampleError::EmptyGraph);
        }
        Ok(BaselineSampler {
            n: graph.vertex_count() as u64,
            theta: theta_eps(m, eps),
            eps,
        })
    }

    pub fn theta(&self) -> u64 {
        self.theta
    }

    pub fn eps(&self) -> Eps {
        self.eps
    }

    pub fn iteration<S: BitSource + ?Sized>(
        &self,
        oracle: &mut GraphOracle<'_>,
        src: &mut S,
    ) -> Result<Option<DirectedEdge>, Exhausted> {
        let light_route = src.next_bit()?;
        let u = oracle.vertex(src.uniform_below(self.n)?).expect("index below n");
        let du = oracle.degree(u).expect("vertex label in range");
        if du == 0 || du > self.theta {
            return Ok(None);
        }
        let j = src.uniform_below(self.theta)?;
        if j >= du {
            return Ok(None);
        }
        let v = oracle.neighbor(u, j).expect("index below degree");
        if light_route {
            return Ok(Some((u, v)));
        }
        let dv = oracle.degree(v).expect("vertex label in range");
        if dv <= self.theta {
            return Ok(None);
        }
        let k = src.uniform_below(dv)?;
        Ok(Some((v, oracle.neighbor(v, k).expect("index below degree"))))
    }

    pub fn sample<S: BitSource + ?Sized>(
        &self,
        oracle: &mut GraphOracle<'_>,
        src: &mut S,
    ) -> Result<Sample, SampleError> {
        let mut iterations = 0;
        loop {
            iterations += 1;
            if let Some(edge) = self.iteration(oracle, src)? {
                return Ok(Sample { edge, iterations, factory_flips: 0 });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coins::SeededBits;
    use crate::graph::{generate, GeneratorSpec};

    #[test]
    fn eps_parsing() {
        assert_eq!("1/2".parse::<Eps>().unwrap(), Eps { num: 1, den: 2 });
        assert_eq!("0.5".parse::<Eps>().unwrap(), Eps { num: 1, den: 2 });
        assert_eq!(".05".parse::<Eps>().unwrap(), Eps { num: 1, den: 20 });
        for bad in ["1", "1.0", "0", "0/3", "3/2", "x", "0.5.1", "-0.5"] {
            assert!(bad.parse::<Eps>().is_err(), "{bad}");
        }
    }

    #[test]
    fn theta_eps_values() {
        let half = Eps::new(1, 2).unwrap();
        // ⌈√120⌉ = 11, ⌈√12⌉ = 4
        assert_eq!(theta_eps(30, half), 11);
        assert_eq!(theta_eps(3, half), 4);
        // 2·8/0.5 = 32 -> 6
        assert_eq!(theta_eps(8, half), 6);
    }

    #[test]
    fn returns_edges() {
        let g = generate(&GeneratorSpec::Star { leaves: 30 }).unwrap();
        let s = BaselineSampler::new(&g, Eps::new(1, 2).unwrap()).unwrap();
        let mut o = GraphOracle::new(&g);
        let mut bits = SeededBits::new(1);
        for _ in 0..200 {
            let e = s.sample(&mut o, &mut bits).unwrap().edge;
            assert!(g.has_edge(e.0, e.1));
        }
    }
}
