mod common;

use common::workers;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use simplex_stats::mc::mc_hr_upper_prob;
use simplex_stats::orders::{hr_upper_prob, Comparator, OrderKind};
use simplex_stats::simplex::{SamplingMethod, SimplexSampler, SimplexVector};
use simplex_stats::{restrictiveness_constant, Seed};

fn sampler(n: usize, seed: u64) -> SimplexSampler {
    SimplexSampler::new(n, 1.0, SamplingMethod::Spacings, Seed(seed)).unwrap()
}

#[test]
fn implication_chain_and_reflexivity() {
    let cmp = Comparator::default();
    for n in 2..=8 {
        let mut s = sampler(n, n as u64);
        for _ in 0..20_000 {
            let (a, b) = (s.sample(), s.sample());
            let lr = cmp.leq_lr(&a, &b).unwrap();
            let hr = cmp.leq_hr(&a, &b).unwrap();
            let st = cmp.leq_st(&a, &b).unwrap();
            assert!(!lr || hr, "lr without hr: {a:?} {b:?}");
            assert!(!hr || st, "hr without st: {a:?} {b:?}");
            for order in OrderKind::ALL {
                assert!(cmp.leq(order, &a, &a).unwrap());
            }
        }
    }
}

#[test]
fn hr_checks_agree() {
    let cmp = Comparator::default();
    for n in 2..=8 {
        let mut s = sampler(n, 50 + n as u64);
        for _ in 0..20_000 {
            let (a, b) = (s.sample(), s.sample());
            let canonical = cmp.leq_hr(&a, &b).unwrap();
            assert_eq!(cmp.leq_hr_linear(&a, &b).unwrap(), canonical, "{a:?} {b:?}");
            assert_eq!(cmp.hr_reduce(&a, &b).unwrap(), canonical, "{a:?} {b:?}");
            assert_eq!(OrderKind::Hr.holds(a.coords(), b.coords()), canonical);
        }
    }
}

#[test]
fn hr_is_transitive_on_sampled_chains() {
    let cmp = Comparator::default();
    let mut s = sampler(3, 77);
    let mut chains = 0;
    for _ in 0..200_000 {
        let (a, b, c) = (s.sample(), s.sample(), s.sample());
        if cmp.leq_hr(&a, &b).unwrap() && cmp.leq_hr(&b, &c).unwrap() {
            chains += 1;
            assert!(cmp.leq_hr(&a, &c).unwrap(), "{a:?} {b:?} {c:?}");
        }
    }
    assert!(chains > 1_000, "only {chains} chains sampled");
}

#[test]
fn hr_upper_prob_matches_monte_carlo() {
    let cases: [&[f64]; 5] =
        [&[0.3, 0.7], &[1.0 / 3.0; 3], &[0.1, 0.2, 0.3, 0.4], &[0.5, 0.5, 0.0], &[0.25, 0.75, 0.0, 0.0]];
    for (k, theta) in cases.into_iter().enumerate() {
        let exact = hr_upper_prob(&SimplexVector::probability(theta.to_vec()).unwrap());
        let est = mc_hr_upper_prob(theta, 1.0, 1_000_000, Seed(90 + k as u64), workers()).unwrap();
        assert!(est.within(exact, 4.0), "{theta:?}: {} vs {exact}", est.estimate);
    }
    let third = hr_upper_prob(&SimplexVector::probability(vec![1.0 / 3.0; 3]).unwrap());
    assert!((third - 5.0 / 18.0).abs() < 1e-15);
}

#[test]
fn point_mass_on_first_coordinate_is_dominated_by_everything() {
    let theta = SimplexVector::new(vec![2.0, 0.0, 0.0, 0.0], 2.0).unwrap();
    assert_eq!(hr_upper_prob(&theta), 1.0);
    let mut s = SimplexSampler::new(4, 2.0, SamplingMethod::Exponential, Seed(4)).unwrap();
    for _ in 0..1000 {
        assert!(Comparator::default().leq_hr(&theta, &s.sample()).unwrap());
    }
}

#[test]
fn restrictiveness_constants_are_exact() {
    let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    assert_eq!(restrictiveness_constant(OrderKind::St, 3).unwrap(), r(1, 3));
    assert_eq!(restrictiveness_constant(OrderKind::Hr, 3).unwrap(), r(1, 4));
    assert_eq!(restrictiveness_constant(OrderKind::Lr, 3).unwrap(), r(1, 6));
    // 1/200! is far below the smallest double.
    let tiny = restrictiveness_constant(OrderKind::Lr, 200).unwrap();
    assert!(tiny.denom().bits() > 1200);
}

fn simplex_point(n: usize) -> impl Strategy<Value = SimplexVector> {
    prop::collection::vec(prop_oneof![Just(0.0), 0.0f64..1.0], n).prop_filter_map("zero mass", |v| {
        let s: f64 = v.iter().sum();
        (s > 0.0).then(|| SimplexVector::new(v.iter().map(|x| x / s).collect(), 1.0).unwrap())
    })
}

proptest! {
    #[test]
    fn linear_hr_agrees_with_zeros_planted(pair in (2usize..8).prop_flat_map(|n| (simplex_point(n), simplex_point(n)))) {
        let (a, b) = pair;
        let cmp = Comparator::default();
        prop_assert_eq!(cmp.leq_hr_linear(&a, &b).unwrap(), cmp.leq_hr(&a, &b).unwrap());
        prop_assert_eq!(cmp.hr_reduce(&a, &b).unwrap(), cmp.leq_hr(&a, &b).unwrap());
    }

    #[test]
    fn hr_upper_prob_is_a_probability(theta in (1usize..9).prop_flat_map(simplex_point)) {
        let p = hr_upper_prob(&theta);
        prop_assert!((0.0..=1.0).contains(&p));
    }
}
