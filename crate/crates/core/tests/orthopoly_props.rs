use jacobi_integrals::gammacore::binomial_real;
use jacobi_integrals::orthopoly::*;
use proptest::prelude::*;

fn params() -> impl Strategy<Value = JacobiParams> {
    (-0.9f64..=3.0, -0.9f64..=3.0, 0u32..=15).prop_map(|(a, b, n)| JacobiParams::new(a, b, n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn recurrence_matches_series(p in params(), t in -1.0f64..=1.0) {
        let r = jacobi_p(&p, t);
        let s = jacobi_p_series(&p, t);
        prop_assert!((r - s).abs() <= 1e-12 * (1.0 + r.abs()), "{p:?} t={t}: {r} vs {s}");
    }

    #[test]
    fn reflection_symmetry(p in params(), t in -1.0f64..=1.0) {
        let swapped = JacobiParams { alpha: p.beta, beta: p.alpha, n: p.n };
        let lhs = jacobi_p(&p, -t);
        let sign = if p.n % 2 == 0 { 1.0 } else { -1.0 };
        let rhs = sign * jacobi_p(&swapped, t);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
    }

    #[test]
    fn endpoint_value(p in params()) {
        let expect = binomial_real(f64::from(p.n) + p.alpha, p.n);
        prop_assert!((jacobi_p(&p, 1.0) - expect).abs() <= 1e-12 * (1.0 + expect.abs()));
    }

    #[test]
    fn chebyshev_second_kind(n in 0u32..=20, theta in 0.1f64..3.0) {
        let c = gegenbauer_c(1.0, n, theta.cos()).unwrap();
        let u = ((f64::from(n) + 1.0) * theta).sin() / theta.sin();
        prop_assert!((c - u).abs() <= 1e-10 * (1.0 + u.abs()), "n={n} theta={theta}: {c} vs {u}");
    }
}
