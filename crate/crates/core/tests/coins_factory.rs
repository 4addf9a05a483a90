use exact_edge::coins::{
    bern_rational, double_coin, geometric_half, reciprocal_factory, uniform_int, Coin, Counted, Halved,
    RationalCoin, SeededBits,
};
use exact_edge::graph::{generate, GeneratorSpec};
use exact_edge::verify::{
    enumerate_outcomes, factory_bounds, p_coin_bias, race_bounds, ruin_bounds, Bracket, FactoryDepths, Resolution,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;

fn r(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn f(x: &BigRational) -> f64 {
    x.to_f64().unwrap()
}

/// `b` contains `target` and is at most `tol` wide.
fn within(b: &Bracket, target: &BigRational, tol: f64) -> bool {
    b.contains(target) && f(&b.width()) <= tol
}

#[test]
fn uniform_int_fair_bit_exactness_up_to_64() {
    for b in 1..=64u64 {
        let d = enumerate_outcomes(Resolution::FairBits, 40, |s| uniform_int(s, b)).unwrap();
        let target = r(1, b);
        for v in 0..b {
            assert!(d.bracket(&v).contains(&target), "b={b} v={v}");
        }
        assert!(f(d.residual()) <= 1e-10, "b={b} residual {}", f(d.residual()));
        assert_eq!(d.outcomes().count() as u64, b);
        let first = d.lower(&0);
        assert!(d.outcomes().all(|(_, p)| *p == first), "b={b} not symmetric");
    }
}

#[test]
fn one_third_coin_bracket() {
    let d = enumerate_outcomes(Resolution::FairBits, 40, |s| bern_rational(s, 1, 3)).unwrap();
    let radius = r(1, 1 << 39);
    let third = r(1, 3);
    assert!(d.lower(&true) >= &third - &radius);
    assert!(d.upper(&true) <= &third + &radius);
}

#[test]
fn geometric_half_masses() {
    let d = enumerate_outcomes(Resolution::FairBits, 30, geometric_half).unwrap();
    for k in 0..29u64 {
        assert_eq!(d.lower(&k), r(1, 1 << (k + 1)));
    }
    let mut bits = SeededBits::new(11);
    let n = 1_000_000;
    let mean = (0..n).map(|_| geometric_half(&mut bits).unwrap()).sum::<u64>() as f64 / n as f64;
    // Var K = 2, so the mean has standard deviation √2/1000.
    assert!((mean - 1.0).abs() < 3.0 * 2f64.sqrt() / 1000.0, "{mean}");
}

#[test]
fn halved_coin_is_exactly_half_the_bias() {
    let d = enumerate_outcomes(Resolution::ExactDraws, 4, |s| Halved(RationalCoin::new(2, 3)).flip(s)).unwrap();
    assert_eq!(d.lower(&true), r(1, 3));
    assert_eq!(*d.residual(), BigRational::from_integer(0.into()));
}

#[test]
fn p_coin_biases_match_light_neighbor_counts() {
    let star = generate(&GeneratorSpec::Star { leaves: 8 }).unwrap();
    assert_eq!(p_coin_bias(&star, 0, 7).unwrap(), BigRational::one());
    let ds = generate(&GeneratorSpec::DoubleStar { leaves_per_center: 13 }).unwrap();
    for c in [0, 1] {
        let light = ds.neighbors(c).iter().filter(|&&w| ds.degree(w) <= 13).count() as u64;
        assert_eq!(light, 13);
        assert_eq!(p_coin_bias(&ds, c, 13).unwrap(), r(light, 14));
    }
    assert!(p_coin_bias(&star, 3, 7).is_err());
}

#[test]
fn doubling_factory_examples() {
    for (q_num, q_den, two_q) in [(1, 4, r(1, 2)), (1, 3, r(2, 3))] {
        let x = ruin_bounds(q_num, q_den, 4000).unwrap();
        let x_exact = r(q_num, q_den - q_num);
        assert!(within(&x, &x_exact, 1e-8), "x = {x}");
        let doubled = race_bounds(&x).unwrap();
        assert!(within(&doubled, &two_q, 1e-6), "2q = {doubled}");
    }
}

#[test]
fn reciprocal_factory_examples() {
    let depths = FactoryDepths::default();
    for (p_num, p_den, target) in [(2, 3, r(3, 4)), (13, 14, r(7, 13)), (3, 4, r(2, 3)), (1, 1, r(1, 2))] {
        let b = factory_bounds(p_num, p_den, &depths).unwrap();
        assert!(within(&b.reciprocal, &target, 1e-6), "p={p_num}/{p_den}: {}", b.reciprocal);
    }
}

#[test]
fn factory_rejects_biases_below_two_thirds() {
    assert!(factory_bounds(1, 2, &FactoryDepths::default()).is_err());
    assert!(factory_bounds(0, 1, &FactoryDepths::default()).is_err());
}

#[test]
fn empirical_factory_frequencies() {
    let mut bits = SeededBits::new(21);
    let n = 200_000u64;
    let hits = (0..n)
        .filter(|_| reciprocal_factory(&mut RationalCoin::new(3, 4), &mut bits).unwrap())
        .count() as f64;
    let p = 2.0 / 3.0;
    let sd = (p * (1.0 - p) / n as f64).sqrt();
    assert!((hits / n as f64 - p).abs() < 4.0 * sd, "{}", hits / n as f64);

    let hits = (0..n)
        .filter(|_| double_coin(&mut RationalCoin::new(1, 5), &mut bits).unwrap())
        .count() as f64;
    let p = 0.4;
    let sd = (p * (1.0 - p) / n as f64).sqrt();
    assert!((hits / n as f64 - p).abs() < 4.0 * sd, "{}", hits / n as f64);
}

#[test]
fn mean_p_coin_flips_at_the_worst_bias() {
    let mut bits = SeededBits::new(5);
    let mut coin = Counted::new(RationalCoin::new(2, 3));
    let n = 100_000;
    for _ in 0..n {
        reciprocal_factory(&mut coin, &mut bits).unwrap();
    }
    let mean = coin.flips as f64 / n as f64;
    assert!(mean <= 20.0, "{mean}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rational_coins_are_exact(b in 1u64..5000, a_frac in 0.0f64..=1.0) {
        let a = ((b as f64) * a_frac) as u64;
        let d = enumerate_outcomes(Resolution::FairBits, 48, |s| bern_rational(s, a, b)).unwrap();
        prop_assert!(d.bracket(&true).contains(&r(a, b)) || a == 0);
        prop_assert!(f(d.residual()) < 1e-9);
    }

    #[test]
    fn race_is_exact_on_exact_inputs(num in 0u64..50, extra in 0u64..50) {
        let x = r(num, num + extra + 1);
        let b = race_bounds(&Bracket::exact(x.clone())).unwrap();
        let two_x = BigRational::from_integer(2.into()) * &x / (BigRational::one() + &x);
        prop_assert_eq!(b, Bracket::exact(two_x));
    }

    #[test]
    fn ruin_brackets_contain_the_odds(q_den in 3u64..40, q_frac in 0.0f64..=1.0) {
        let q_num = ((q_den as f64 / 3.0) * q_frac).floor() as u64;
        let b = ruin_bounds(q_num, q_den, 80).unwrap();
        prop_assert!(b.contains(&r(q_num, q_den - q_num)), "{}", b);
    }
}
