use std::f64::consts::PI;

use jacobi_integrals::gammacore::*;
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn off_integers(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo..hi).prop_filter("away from integers", |x| (x - x.round()).abs() > 1e-3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn recurrence(x in off_integers(-20.0, 20.0)) {
        let lhs = gamma(x + 1.0).value;
        let rhs = x * gamma(x).value;
        prop_assert!(rel(lhs, rhs) < 1e-12, "x={x}: {lhs} vs {rhs}");
    }

    #[test]
    fn reflection(x in off_integers(-10.0, 10.0)) {
        let v = gamma(x).value * gamma(1.0 - x).value * sin_pi(x) / PI;
        prop_assert!((v - 1.0).abs() < 1e-12, "x={x}: {v}");
    }

    #[test]
    fn signed_log_matches_gamma(x in off_integers(-30.0, 50.0)) {
        let g = log_gamma_signed(x).unwrap();
        prop_assert!(rel(g.value(), gamma(x).value) < 1e-12);
    }

    #[test]
    fn pochhammer_splits(a in -6.0f64..6.0, j in 0u32..8, k in 0u32..8) {
        let whole = pochhammer(a, j + k);
        let parts = pochhammer(a, j) * pochhammer(a + f64::from(j), k);
        prop_assert!((whole - parts).abs() <= 1e-13 * whole.abs().max(1e-300));
    }

    #[test]
    fn beta_symmetry(a in -5.0f64..8.0, b in -5.0f64..8.0) {
        prop_assert_eq!(beta(a, b), beta(b, a));
    }
}

#[test]
fn shifted_ratio_is_the_epsilon_limit() {
    let eps = 1e-7;
    for k in 0..=8u32 {
        for m in 0..=8 {
            let m = f64::from(m);
            let kf = f64::from(k);
            let limit = gamma_ratio_shifted(k, m);
            let perturbed = gamma_ratio(&[kf - m - eps], &[-m - eps]).unwrap();
            // past the pole the perturbed ratio is O(ε Γ(k-m))
            let slack = eps * gamma(kf + 1.0).value;
            assert!(
                (limit - perturbed).abs() <= 1e-6 * (1.0 + limit.abs()) + slack,
                "k={k} m={m}: {limit} vs {perturbed}"
            );
        }
    }
}

#[test]
fn limit_ratio_is_the_epsilon_limit() {
    let eps = 1e-7;
    for n in 0..=6u32 {
        let nf = f64::from(n);
        let perturbed = gamma_ratio(&[nf + eps, 1.0 - eps - nf], &[eps]).unwrap();
        assert!((perturbed - gamma_limit_ratio(n)).abs() < 1e-6, "n={n}: {perturbed}");
    }
}

#[test]
fn binomial_matches_integer_table() {
    let mut row = vec![1u64];
    for n in 0..=30u32 {
        for (k, &c) in row.iter().enumerate() {
            assert_eq!(binomial_real(f64::from(n), k as u32), c as f64, "C({n},{k})");
        }
        let mut next = vec![1u64; row.len() + 1];
        for k in 1..row.len() {
            next[k] = row[k - 1] + row[k];
        }
        row = next;
    }
}
