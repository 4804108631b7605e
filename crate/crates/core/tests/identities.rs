mod common;

use common::integrate;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use simplex_stats::identities::{
    beta_diff, f_closed_forms_check, f_nt, f_nt_alternating, f_xynr, f_xynr_direct_exact, f_xynr_series,
    f_xynr_series_exact, harmonic, let_identity, rel_close,
};

#[test]
fn recursion_matches_alternating_sum() {
    for n in 1..=50 {
        for t in 0..=6 {
            assert_eq!(f_nt(n, t).unwrap(), f_nt_alternating(n, t).unwrap(), "n={n} t={t}");
        }
        assert!(f_closed_forms_check(n).unwrap());
    }
}

#[test]
fn first_values_are_harmonic_numbers() {
    for n in 1..=50 {
        assert_eq!(f_nt(n, 1).unwrap(), harmonic(n, 1).unwrap());
        let h = harmonic(n, 1).unwrap();
        let want = (&h * &h + harmonic(n, 2).unwrap()) / BigInt::from(2);
        assert_eq!(f_nt(n, 2).unwrap(), want);
    }
}

#[test]
fn f_is_positive_and_grows_with_n() {
    for t in 1..=6 {
        let mut prev = BigRational::zero();
        for n in 1..=40 {
            let f = f_nt(n, t).unwrap();
            assert!(f > BigRational::zero());
            assert!(f >= prev, "f({n},{t}) decreased");
            prev = f;
        }
    }
}

#[test]
fn binomial_identity_is_a_kronecker_delta() {
    for n in 1..=12 {
        for t in 1..=10 {
            for i in 0..=t {
                let want = if i == t { BigInt::one() } else { BigInt::zero() };
                assert_eq!(let_identity(n, t, i).unwrap(), want, "n={n} t={t} i={i}");
            }
        }
    }
}

#[test]
fn shifted_power_sum_two_routes() {
    let grid = [0.5, 1.0, 2.0, 3.0];
    for &x in &grid {
        for &y in &grid {
            for n in 1..=10 {
                for r in 0..=6 {
                    let direct = f_xynr(x, y, n, r).unwrap();
                    let series = f_xynr_series(x, y, n, r).unwrap();
                    assert!(rel_close(direct, series, 1e-9), "x={x} y={y} n={n} r={r}: {direct} vs {series}");
                }
            }
        }
    }
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let three = BigRational::from_integer(BigInt::from(3));
    for n in 1..=25 {
        for r in 0..=8 {
            assert_eq!(
                f_xynr_direct_exact(&half, &three, n, r).unwrap(),
                f_xynr_series_exact(&half, &three, n, r).unwrap()
            );
        }
    }
}

#[test]
fn beta_difference_matches_quadrature() {
    for (u, a, b) in [(1.0, 1.0, 2.0), (1.0, 1.0, 3.0), (2.0, 0.5, 2.0), (0.7, 1.5, 4.0)] {
        for p in 0..=6u32 {
            for q in 0..=6u32 {
                let closed = beta_diff(u, a, b, p, q).unwrap();
                let quad = integrate(|x| x.powi(p as i32) * (b * x - u).powi(q as i32), u / b, u / a, 1e-16);
                assert!(rel_close(closed, quad, 1e-10), "u={u} a={a} b={b} p={p} q={q}: {closed} vs {quad}");
            }
        }
    }
    assert!((beta_diff(1.0, 1.0, 2.0, 0, 0).unwrap() - 0.5).abs() < 1e-15);
    assert_eq!(beta_diff(1.0, 2.0, 2.0, 3, 2).unwrap(), 0.0);
    assert!(beta_diff(1.0, 3.0, 2.0, 0, 0).is_err());
}
