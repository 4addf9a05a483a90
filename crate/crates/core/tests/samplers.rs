use exact_edge::coins::SeededBits;
use exact_edge::graph::{generate, GeneratorSpec, Graph, GraphOracle};
use exact_edge::samplers::{
    classify, theta, theta_eps, AttemptOutcome, Class, Eps, BaselineSampler, ExactSampler, Orientation, SampleError,
    SamplerConfig,
};
use exact_edge::verify::{
    attempt_distribution, baseline_distribution, exact_sampler_distribution, closed_form_attempt_masses, FactoryDepths,
    Resolution,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

fn r(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn g(spec: &str) -> Graph {
    generate(&spec.parse().unwrap()).unwrap()
}

fn light_only(graph: &Graph) -> bool {
    let t = theta(graph.edge_count() as u64);
    (0..graph.vertex_count() as u32).all(|v| graph.degree(v) as u64 <= t)
}

fn arb_small_graph() -> impl Strategy<Value = Graph> {
    (2u64..9, 0.05f64..1.0, any::<u64>()).prop_map(|(n, frac, seed)| {
        let m = (((n * (n - 1) / 2) as f64 * frac).ceil() as u64).max(1);
        generate(&GeneratorSpec::Gnm { n, m, seed }).unwrap()
    })
}

#[test]
fn threshold_examples() {
    assert_eq!(theta(8), 7);
    assert_eq!(theta(27), 13);
    assert_eq!(theta(10), 8);
    assert_eq!(theta(3), 5);
    let eps = Eps::new(1, 2).unwrap();
    assert_eq!(theta_eps(30, eps), 11);
}

#[test]
fn classification_examples() {
    let star = g("star:8");
    let mut o = GraphOracle::new(&star);
    assert_eq!(classify(&mut o, 0, 7), Class::Heavy);
    assert_eq!(classify(&mut o, 1, 7), Class::Light);
    let c = g("clique_plus_isolated:5,25");
    let mut o = GraphOracle::new(&c);
    assert_eq!(classify(&mut o, 2, theta(10)), Class::Light);
    assert_eq!(o.counters().degree_queries, 1);
}

#[test]
fn attempt_masses_on_small_graphs() {
    let k3 = g("complete:3");
    let d = attempt_distribution(&k3, &SamplerConfig::default(), Resolution::ExactDraws, 64).unwrap();
    for e in k3.directed_edges() {
        assert_eq!(d.lower(&AttemptOutcome::Light(e.0, e.1)), r(1, 45));
    }
    let star = g("star:8");
    let d = attempt_distribution(&star, &SamplerConfig::default(), Resolution::ExactDraws, 64).unwrap();
    for leaf in 1..=8 {
        assert_eq!(d.lower(&AttemptOutcome::Light(leaf, 0)), r(1, 189));
        assert_eq!(d.lower(&AttemptOutcome::Heavy(0, leaf)), r(2, 189));
    }
    assert!(d.residual().is_zero());
}

#[test]
fn attempt_bit_level_agrees_with_exact_draws() {
    let k3 = g("complete:3");
    let cfg = SamplerConfig::default();
    let bits = attempt_distribution(&k3, &cfg, Resolution::FairBits, 40).unwrap();
    for (outcome, p) in closed_form_attempt_masses(&k3, theta(3)) {
        assert!(bits.bracket(&outcome).contains(&p));
    }
    assert!(bits.residual().to_f64().unwrap() < 1e-6);
}

#[test]
fn output_distributions_are_uniform() {
    let depths = FactoryDepths::default();
    let k3 = g("complete:3");
    let b = exact_sampler_distribution(&k3, &SamplerConfig::default(), 64, &depths).unwrap();
    assert!(b.max_width().is_zero());
    assert!(b.normalized.values().all(|x| x.lo == r(1, 6)));
    assert_eq!(b.success.lo, r(6, 45));

    let star = g("star:8");
    let b = exact_sampler_distribution(&star, &SamplerConfig::default(), 64, &depths).unwrap();
    assert_eq!(b.target, r(1, 16));
    assert!(b.all_contain_target());
    assert!(b.heavy[&0].reciprocal.contains(&r(1, 2)));
    let canonical = SamplerConfig { orientation: Orientation::CanonicalUndirected, ..Default::default() };
    let b = exact_sampler_distribution(&star, &canonical, 64, &depths).unwrap();
    assert_eq!((b.target.clone(), b.normalized.len()), (r(1, 8), 8));
    assert!(b.all_contain_target());

    let ds = g("double_star:13");
    let b = exact_sampler_distribution(&ds, &SamplerConfig::default(), 64, &depths).unwrap();
    assert_eq!(b.target, r(1, 54));
    assert!(b.all_contain_target());
    assert!(b.heavy[&0].reciprocal.contains(&r(7, 13)));
    assert!(b.max_width().to_f64().unwrap() < 1e-8);
}

#[test]
fn config_errors_and_warnings() {
    let star = g("star:8");
    let s = ExactSampler::new(&star, &SamplerConfig { m_tilde: Some(4), ..Default::default() }).unwrap();
    assert!(!s.is_exact());
    assert_eq!(s.warnings().len(), 1);
    assert_eq!(s.theta(), 5);
    assert!(matches!(
        ExactSampler::new(&star, &SamplerConfig { m_tilde: Some(0), ..Default::default() }),
        Err(SampleError::InvalidConfig(_))
    ));
    let empty = Graph::from_edges(4, std::iter::empty()).unwrap();
    assert!(matches!(ExactSampler::new(&empty, &SamplerConfig::default()), Err(SampleError::EmptyGraph)));
    assert!(matches!(BaselineSampler::new(&empty, Eps::new(1, 2).unwrap()), Err(SampleError::EmptyGraph)));
    assert!(Eps::new(0, 2).is_err() && Eps::new(2, 2).is_err());
    assert_eq!("0.25".parse::<Eps>().unwrap(), Eps::new(1, 4).unwrap());
}

#[test]
fn attempts_cap_is_enforced() {
    let k3 = g("complete:3");
    let s = ExactSampler::new(&k3, &SamplerConfig { max_attempts: Some(1), ..Default::default() }).unwrap();
    let mut o = GraphOracle::new(&k3);
    let mut bits = SeededBits::new(2);
    let failures = (0..200)
        .filter(|_| matches!(s.sample(&mut o, &mut bits), Err(SampleError::AttemptsExhausted(1))))
        .count();
    assert!(failures > 100);
}

#[test]
fn canonical_orientation_outputs_ordered_pairs() {
    let c = g("clique_plus_isolated:5,25");
    let cfg = SamplerConfig { orientation: Orientation::CanonicalUndirected, ..Default::default() };
    let s = ExactSampler::new(&c, &cfg).unwrap();
    let mut o = GraphOracle::new(&c);
    let mut bits = SeededBits::new(4);
    for _ in 0..2000 {
        let e = s.sample(&mut o, &mut bits).unwrap().edge;
        assert!(e.0 < e.1 && c.has_edge(e.0, e.1));
    }
}

#[test]
fn baseline_bias() {
    let half = Eps::new(1, 2).unwrap();
    let k3 = g("complete:3");
    let b = baseline_distribution(&k3, half, 64).unwrap();
    assert!(b.max_width().is_zero() && b.all_contain_target());

    // All of a star center's neighbors are light, so the baseline is exact.
    let star = g("star:20");
    let b = baseline_distribution(&star, half, 64).unwrap();
    assert_eq!(b.max_min_ratio(), exact_edge::verify::Bracket::exact(BigRational::one()));

    let ds = g("double_star:13");
    let b = baseline_distribution(&ds, half, 64).unwrap();
    let ratio = b.max_min_ratio();
    assert!(ratio.lo > BigRational::one());
    assert!(ratio.hi <= r(2, 1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn theta_is_the_ceiling_square_root(m in 1u64..1_000_000_000) {
        let t = theta(m) as u128;
        let six = 6 * m as u128;
        prop_assert!(t * t >= six && (t - 1) * (t - 1) < six);
    }

    #[test]
    fn attempt_masses_match_closed_form(graph in arb_small_graph()) {
        let t = theta(graph.edge_count() as u64);
        let d = attempt_distribution(&graph, &SamplerConfig::default(), Resolution::ExactDraws, 64).unwrap();
        let closed_form = closed_form_attempt_masses(&graph, t);
        prop_assert!(d.residual().is_zero());
        for (outcome, p) in &closed_form {
            prop_assert_eq!(&d.lower(outcome), p);
        }
        let edges: BigRational = closed_form.values().fold(BigRational::zero(), |a, p| a + p);
        prop_assert_eq!(d.lower(&AttemptOutcome::Fail), BigRational::one() - edges);
    }

    #[test]
    fn enumeration_conserves_mass(graph in arb_small_graph(), depth in 1usize..24) {
        let d = attempt_distribution(&graph, &SamplerConfig::default(), Resolution::FairBits, depth);
        if let Ok(d) = d {
            let total = d.resolved_mass() + d.residual();
            prop_assert_eq!(total, BigRational::one());
        }
    }

    #[test]
    fn light_graphs_sample_exactly_uniformly(graph in arb_small_graph()) {
        prop_assume!(light_only(&graph));
        let b = exact_sampler_distribution(&graph, &SamplerConfig::default(), 64, &FactoryDepths::default()).unwrap();
        prop_assert!(b.max_width().is_zero());
        prop_assert!(b.normalized.values().all(|x| x.lo == b.target));
    }
}
