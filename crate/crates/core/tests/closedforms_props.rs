use jacobi_integrals::closedforms::*;
use jacobi_integrals::oracle::{quad_weighted, QuadRequest};
use jacobi_integrals::orthopoly::gegenbauer_from_jacobi_factor;
use jacobi_integrals::JacobiParams;
use proptest::prelude::*;

fn jp(alpha: f64, beta: f64, n: u32) -> JacobiParams {
    JacobiParams::new(alpha, beta, n).unwrap()
}

fn rel(closed: f64, oracle: f64) -> f64 {
    (closed - oracle).abs() / (1.0 + oracle.abs())
}

fn params() -> impl Strategy<Value = JacobiParams> {
    (-0.9f64..=2.5, -0.9f64..=2.5, 0u32..=10).prop_map(|(a, b, n)| jp(a, b, n))
}

fn quad(spec: IntegralSpec) -> f64 {
    quad_weighted(&QuadRequest::new(spec)).unwrap().real()
}

fn off_pole(a: f64, lambda: f64) -> bool {
    let s = a + 1.0 - lambda;
    (s - s.round()).abs() > 1e-3
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn full_range_vs_quadrature(p in params(), lambda in 0.1f64..=1.0, z in 1.5f64..8.0) {
        let closed = theorem1_full_range(&p, lambda, z).unwrap().real();
        let q = quad(IntegralSpec::full_range(p, lambda, z).unwrap());
        prop_assert!(rel(closed, q) <= 1e-7, "{p:?} {lambda} {z}: {closed} vs {q}");
    }

    #[test]
    fn upper_tail_vs_quadrature(p in params(), lambda in 0.1f64..0.9, x in -0.9f64..0.9) {
        let closed = theorem2_upper(&p, lambda, x).unwrap().real();
        let q = quad(IntegralSpec::upper_tail(p, lambda, x).unwrap());
        prop_assert!(rel(closed, q) <= 1e-7, "{p:?} {lambda} {x}: {closed} vs {q}");
    }

    #[test]
    fn zero_singular_is_upper_tail_at_zero(p in params(), lambda in 0.1f64..0.9) {
        let t3 = theorem3_zero(&p, lambda).unwrap().real();
        let t2 = theorem2_upper(&p, lambda, 0.0).unwrap().real();
        prop_assert!((t3 - t2).abs() <= 1e-13 * (1.0 + t2.abs()));
    }

    #[test]
    fn lower_tail_vs_phase_adjusted_quadrature(p in params(), lambda in 0.1f64..0.9, x in -0.9f64..0.9) {
        prop_assume!(off_pole(p.alpha, lambda));
        let closed = theorem4_lower(&p, lambda, x).unwrap().value;
        let q = quad(IntegralSpec::lower_tail(p, lambda, x).unwrap());
        let err = (closed - lower_tail_phase(lambda) * q).norm() / (1.0 + q.abs());
        prop_assert!(err <= 1e-6, "{p:?} {lambda} {x}: {closed} vs {q}");
    }

    #[test]
    fn gegenbauer_three_routes(a in -0.45f64..3.0, n in 0u32..=10, lambda in 0.1f64..0.9) {
        prop_assume!(a.abs() > 1e-3);
        let direct = gegenbauer_zero(a, n, lambda).unwrap().real();
        let legendre = legendre_route(a, n, lambda).unwrap().real();
        prop_assert!((direct - legendre).abs() <= 1e-12 * (1.0 + direct.abs()), "{direct} vs {legendre}");
        let factor = gegenbauer_from_jacobi_factor(a, n).unwrap();
        let t3 = theorem3_zero(&jp(a - 0.5, a - 0.5, n), lambda).unwrap().real();
        prop_assert!((direct - factor * t3).abs() <= 1e-10 * (1.0 + direct.abs()));
        let q = quad(IntegralSpec::gegenbauer_zero(a, n, lambda).unwrap());
        prop_assert!(rel(direct, q) <= 1e-7, "{direct} vs {q}");
    }

    #[test]
    fn remark_vs_quadrature(p in params(), lambda in 0.1f64..0.9) {
        prop_assume!(p.beta - lambda > -0.9);
        let closed = remark_identity(&p, lambda).unwrap().real();
        let q = quad(IntegralSpec::remark_weight(p, lambda).unwrap());
        prop_assert!(rel(closed, q) <= 1e-7, "{closed} vs {q}");
    }
}

#[test]
fn lower_tail_elementary_phase() {
    // n = 0, α = β = 0: ∫_{-1}^x (x-t)^{-λ} dt = (1+x)^{1-λ} / (1-λ)
    for &(lambda, x) in &[(0.3, 0.2), (0.7, -0.4), (0.5, 0.8)] {
        let closed = theorem4_lower(&jp(0.0, 0.0, 0), lambda, x).unwrap().value;
        let real = (1.0f64 + x).powf(1.0 - lambda) / (1.0 - lambda);
        assert!((closed - lower_tail_phase(lambda) * real).norm() <= 1e-9, "{closed}");
    }
}

#[test]
fn lower_tail_vanishes_near_minus_one() {
    for &(a, b, n, lambda) in &[(0.3, 0.5, 2, 0.4), (1.2, 1.5, 4, 0.25), (-0.5, 0.8, 1, 0.3)] {
        let p = jp(a, b, n);
        let near = theorem4_lower(&p, lambda, -0.999).unwrap().value.norm();
        let mid = theorem4_lower(&p, lambda, 0.0).unwrap().value.norm();
        assert!(near < 1e-2 * mid, "{near} vs {mid}");
    }
}

#[test]
fn full_range_is_continuous_at_lambda_one() {
    let p = jp(0.4, -0.3, 3);
    let at_one = theorem1_full_range(&p, 1.0, 2.2).unwrap().real();
    let below = theorem1_full_range(&p, 1.0 - 1e-6, 2.2).unwrap().real();
    assert!((at_one - below).abs() <= 1e-4 * (1.0 + at_one.abs()));
}

#[test]
fn remark_orthogonality_limit() {
    for n in 1..=6 {
        let p = jp(0.7, 1.3, n);
        let scale = remark_identity(&jp(0.7, 1.3, 0), 1e-10).unwrap().real().abs();
        let v = remark_identity(&p, 1e-10).unwrap().real();
        assert!(v.abs() <= 1e-8 * scale, "n={n}: {v}");
    }
}

#[test]
fn documented_examples() {
    let log = theorem1_full_range(&jp(0.0, 0.0, 0), 1.0, 3.0).unwrap().real();
    assert!((log - 2f64.ln()).abs() < 1e-14);
    let half = theorem3_zero(&jp(0.0, 0.0, 0), 0.5).unwrap().real();
    assert!((half - 2.0).abs() < 1e-14);
    let g = gegenbauer_zero(1.0, 0, 0.5).unwrap().real();
    let q = quad(IntegralSpec::gegenbauer_zero(1.0, 0, 0.5).unwrap());
    assert!(rel(g, q) < 1e-9, "{g} vs {q}");
}

#[test]
fn lambda_one_rejected_off_full_range() {
    let p = jp(0.0, 0.0, 1);
    assert!(theorem2_upper(&p, 1.0, 0.1).is_err());
    assert!(theorem3_zero(&p, 1.0).is_err());
    assert!(theorem4_lower(&p, 1.0, 0.1).is_err());
    assert!(theorem1_full_range(&p, 0.5, 1.0).is_err());
    assert!(remark_identity(&jp(0.0, -0.5, 1), 0.6).is_err());
}
