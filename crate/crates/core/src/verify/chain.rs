use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::bounds::DistributionBounds;
use super::enumerate::{enumerate_lenient, EnumError, EnumSource, Resolution};
use crate::coins::{Exhausted, Step};

/// Arithmetic for the absorption solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arithmetic {
    /// Exact rationals. Sizes grow with the number of states.
    Exact,
    /// Fixed point with `FIXED_BITS` fractional bits, every operation
    /// rounded down. Absorption values are nondecreasing in every
    /// transition and absorption probability, so the result is still a
    /// lower bound; the rounding loss lands in the residual.
    RoundDown,
}

/// Fractional bits of [`Arithmetic::RoundDown`].
pub const FIXED_BITS: u64 = 256;

/// Limits for [`enumerate_chain`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainBudget {
    /// Branch points allowed within one step.
    pub step_depth: usize,
    /// States further than this many steps from the start are not expanded.
    pub max_distance: usize,
    pub arithmetic: Arithmetic,
}

/// Exact absorption probabilities of a Markov procedure.
///
/// `step` performs one transition from a state; its own randomness tree is
/// enumerated. States are discovered breadth first from `start`, and those
/// more than `max_distance` transitions away are left unexpanded. The
/// linear system over the expanded states is then solved by elimination.
/// Mass that reaches an unexpanded state, or that a step leaves unresolved,
/// ends up in the residual.
pub fn enumerate_chain<S, T, F>(
    start: S,
    mode: Resolution,
    budget: &ChainBudget,
    mut step: F,
) -> Result<DistributionBounds<T>, EnumError>
where
    S: Ord + Clone,
    T: Ord + Clone,
    F: FnMut(&S, &mut EnumSource) -> Result<Step<S, T>, Exhausted>,
{
    let mut index: BTreeMap<S, usize> = BTreeMap::new();
    let mut states: Vec<S> = Vec::new();
    let mut outcome_index: BTreeMap<T, usize> = BTreeMap::new();
    let mut rows: Vec<Option<Row<BigRational>>> = Vec::new();
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();

    index.insert(start.clone(), 0);
    states.push(start);
    queue.push_back((0, 0));
    while let Some((i, dist)) = queue.pop_front() {
        if dist > budget.max_distance {
            continue;
        }
        let state = states[i].clone();
        let floor = match budget.arithmetic {
            Arithmetic::Exact => None,
            Arithmetic::RoundDown => Some(FIXED_BITS),
        };
        let bounds = enumerate_lenient(mode, budget.step_depth, floor, |src| step(&state, src));
        let mut row = Row::default();
        for (next, p) in bounds.outcomes() {
            match next {
                Step::Continue(s) => {
                    let j = match index.get(s) {
                        Some(&j) => j,
                        None => {
                            let j = states.len();
                            index.insert(s.clone(), j);
                            states.push(s.clone());
                            queue.push_back((j, dist + 1));
                            j
                        }
                    };
                    add(&mut row.coeffs, j, p.clone());
                }
                Step::Done(t) => {
                    let n = outcome_index.len();
                    let k = *outcome_index.entry(t.clone()).or_insert(n);
                    add(&mut row.rhs, k, p.clone());
                }
            }
        }
        if rows.len() <= i {
            rows.resize_with(i + 1, || None);
        }
        rows[i] = Some(row);
    }

    let values: BTreeMap<usize, BigRational> = match budget.arithmetic {
        Arithmetic::Exact => solve_start(rows),
        Arithmetic::RoundDown => {
            let fixed = rows
                .into_iter()
                .map(|r| r.map(|r| r.map(|x| Fixed::floor(&x))))
                .collect();
            solve_start(fixed).into_iter().map(|(k, v)| (k, v.to_rational())).collect()
        }
    };
    let mut lower = BTreeMap::new();
    let mut total = BigRational::zero();
    for (t, k) in outcome_index {
        if let Some(v) = values.get(&k) {
            if !Zero::is_zero(v) {
                total += v;
                lower.insert(t, v.clone());
            }
        }
    }
    if lower.is_empty() {
        return Err(EnumError::BudgetTooSmall);
    }
    Ok(DistributionBounds::new(lower, BigRational::one() - total))
}

fn add<V: Scalar>(map: &mut BTreeMap<usize, V>, k: usize, v: V) {
    match map.get_mut(&k) {
        Some(x) => *x = x.plus(&v),
        None => {
            map.insert(k, v);
        }
    }
}

/// The operations the elimination needs, all on values in `[0, 1]`.
trait Scalar: Clone {
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    /// `self / (1 - c)` for `c < 1`.
    fn div_one_minus(&self, c: &Self) -> Self;
    fn is_one(&self) -> bool;
}

impl Scalar for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn div_one_minus(&self, c: &Self) -> Self {
        self / (BigRational::one() - c)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

/// `value / 2^FIXED_BITS`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Fixed(BigUint);

impl Fixed {
    fn floor(x: &BigRational) -> Fixed {
        let scaled = (x * BigRational::from_integer(BigInt::one() << FIXED_BITS)).floor();
        Fixed(scaled.to_integer().to_biguint().expect("nonnegative"))
    }

    fn to_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(self.0.clone()), BigInt::one() << FIXED_BITS)
    }

    fn one() -> BigUint {
        BigUint::one() << FIXED_BITS
    }
}

impl Scalar for Fixed {
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        Fixed(&self.0 + &other.0)
    }
    fn times(&self, other: &Self) -> Self {
        Fixed((&self.0 * &other.0) >> FIXED_BITS)
    }
    fn div_one_minus(&self, c: &Self) -> Self {
        Fixed((&self.0 << FIXED_BITS) / (Fixed::one() - &c.0))
    }
    fn is_one(&self) -> bool {
        self.0 == Fixed::one()
    }
}

#[derive(Debug, Clone)]
struct Row<V> {
    /// Transition probabilities to other states, including a self-loop.
    coeffs: BTreeMap<usize, V>,
    /// Direct absorption probability per outcome.
    rhs: BTreeMap<usize, V>,
}

impl<V> Default for Row<V> {
    fn default() -> Self {
        Row { coeffs: BTreeMap::new(), rhs: BTreeMap::new() }
    }
}

impl<V> Row<V> {
    fn map<W>(self, f: impl Fn(V) -> W) -> Row<W> {
        Row {
            coeffs: self.coeffs.into_iter().map(|(k, v)| (k, f(v))).collect(),
            rhs: self.rhs.into_iter().map(|(k, v)| (k, f(v))).collect(),
        }
    }
}

/// Solves `v = P v + b` at state 0 by eliminating states from the highest
/// index down. Unexpanded states (`None`) have value zero.
fn solve_start<V: Scalar>(rows: Vec<Option<Row<V>>>) -> BTreeMap<usize, V> {
    let n = rows.len();
    let expanded: Vec<bool> = rows.iter().map(Option::is_some).collect();
    let mut rows: Vec<Row<V>> = rows.into_iter().map(Option::unwrap_or_default).collect();
    for row in rows.iter_mut() {
        row.coeffs.retain(|&j, _| j < n && expanded[j]);
    }
    let mut refs: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (i, row) in rows.iter().enumerate() {
        for &j in row.coeffs.keys() {
            if j != i {
                refs[j].insert(i);
            }
        }
    }
    for k in (0..n).rev() {
        let mut row = std::mem::take(&mut rows[k]);
        normalize(&mut row, k);
        if k == 0 {
            debug_assert!(row.coeffs.is_empty());
            return row.rhs;
        }
        for r in std::mem::take(&mut refs[k]) {
            if r >= k {
                continue;
            }
            let Some(c) = rows[r].coeffs.remove(&k) else { continue };
            for (&s, a) in &row.coeffs {
                add(&mut rows[r].coeffs, s, c.times(a));
                if s != r {
                    refs[s].insert(r);
                }
            }
            for (&t, b) in &row.rhs {
                add(&mut rows[r].rhs, t, c.times(b));
            }
        }
    }
    BTreeMap::new()
}

/// Removes the self-loop of row `k` by dividing through by `1 - c_kk`. A
/// state that loops to itself with probability one never absorbs.
fn normalize<V: Scalar>(row: &mut Row<V>, k: usize) {
    let Some(c) = row.coeffs.remove(&k) else { return };
    if c.is_zero() {
        return;
    }
    if c.is_one() {
        row.coeffs.clear();
        row.rhs.clear();
        return;
    }
    for v in row.coeffs.values_mut() {
        *v = v.div_one_minus(&c);
    }
    for v in row.rhs.values_mut() {
        *v = v.div_one_minus(&c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coins::BitSource;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn budget(step_depth: usize, max_distance: usize, arithmetic: Arithmetic) -> ChainBudget {
        ChainBudget { step_depth, max_distance, arithmetic }
    }

    #[test]
    fn self_loop_until_heads() {
        // Flip a 1/3 coin until heads; always ends true.
        let d = enumerate_chain((), Resolution::ExactDraws, &budget(4, 0, Arithmetic::Exact), |_, s| {
            Ok(if s.ratio(1, 3)? { Step::Done(true) } else { Step::Continue(()) })
        })
        .unwrap();
        assert_eq!(d.lower(&true), r(1, 1));
        assert!(Zero::is_zero(d.residual()));
    }

    #[test]
    fn gamblers_ruin_on_a_segment() {
        // Fair walk on 0..=4 from 1: reach 4 with probability 1/4.
        let d = enumerate_chain(1u32, Resolution::FairBits, &budget(2, 100, Arithmetic::Exact), |&i, s| {
            let j = if s.next_bit()? { i + 1 } else { i - 1 };
            Ok(match j {
                0 => Step::Done(false),
                4 => Step::Done(true),
                _ => Step::Continue(j),
            })
        })
        .unwrap();
        assert_eq!(d.lower(&true), r(1, 4));
        assert_eq!(d.lower(&false), r(3, 4));
    }

    #[test]
    fn unexpanded_states_feed_the_residual() {
        // Unbounded upward walk with up-probability 2/3: ruin from 1 has
        // probability 1/2; the rest escapes and stays residual.
        let d = enumerate_chain(1u32, Resolution::ExactDraws, &budget(2, 60, Arithmetic::Exact), |&i, s| {
            Ok(if s.ratio(2, 3)? {
                Step::Continue(i + 1)
            } else if i == 1 {
                Step::Done(())
            } else {
                Step::Continue(i - 1)
            })
        })
        .unwrap();
        let lo = d.lower(&());
        assert!(lo <= r(1, 2) && lo > r(49, 100));
        assert_eq!(lo + d.residual(), r(1, 1));
    }

    #[test]
    fn deeper_chains_never_widen() {
        let run = |dist| {
            enumerate_chain(1u32, Resolution::ExactDraws, &budget(2, dist, Arithmetic::Exact), |&i, s| {
                Ok(if s.ratio(2, 3)? {
                    Step::Continue(i + 1)
                } else if i == 1 {
                    Step::Done(())
                } else {
                    Step::Continue(i - 1)
                })
            })
            .unwrap()
        };
        let (a, b) = (run(10), run(20));
        assert!(a.lower(&()) <= b.lower(&()));
        assert!(a.residual() >= b.residual());
    }

    #[test]
    fn round_down_is_a_lower_bound() {
        let walk = |arithmetic| {
            enumerate_chain(1u32, Resolution::ExactDraws, &budget(2, 40, arithmetic), |&i, s| {
                Ok(match (s.ratio(3, 5)?, i) {
                    (true, 30) => Step::Done(true),
                    (true, _) => Step::Continue(i + 1),
                    (false, 1) => Step::Done(false),
                    (false, _) => Step::Continue(i - 1),
                })
            })
            .unwrap()
        };
        let exact = walk(Arithmetic::Exact);
        let fixed = walk(Arithmetic::RoundDown);
        for t in [true, false] {
            assert!(fixed.lower(&t) <= exact.lower(&t));
            assert!(exact.lower(&t) - fixed.lower(&t) < r(1, 1 << 40));
        }
        assert!(Zero::is_zero(exact.residual()));
    }
}
