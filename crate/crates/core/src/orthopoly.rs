//! Jacobi and Gegenbauer polynomials, and the associated Legendre function
//! of the first kind evaluated at the origin.

use std::f64::consts::PI;

use crate::dd::Dd;
use crate::error::{invalid, Result};
use crate::gammacore::{gamma_ratio, rgamma_signed, SignedLog, INTEGER_TOL};

/// Exponents and degree of P_n^{(α,β)} with weight (1-t)^α (1+t)^β.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    pub alpha: f64,
    pub beta: f64,
    pub n: u32,
}

impl JacobiParams {
    /// Validating constructor; the weight must be integrable on [-1, 1].
    pub fn new(alpha: f64, beta: f64, n: u32) -> Result<Self> {
        let p = JacobiParams { alpha, beta, n };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.alpha > -1.0) {
            return Err(invalid(format!("alpha must be > -1, got {}", self.alpha)));
        }
        if !(self.beta.is_finite() && self.beta > -1.0) {
            return Err(invalid(format!("beta must be > -1, got {}", self.beta)));
        }
        Ok(())
    }
}

/// P_n^{(α,β)}(t) by the three-term recurrence in the degree.
pub fn jacobi_p(p: &JacobiParams, t: f64) -> f64 {
    let (a, b) = (p.alpha, p.beta);
    if p.n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = (a + 1.0) + 0.5 * (a + b + 2.0) * (t - 1.0);
    for k in 1..p.n {
        let k = f64::from(k);
        let s = 2.0 * k + a + b;
        let denom = 2.0 * (k + 1.0) * (k + a + b + 1.0) * s;
        let next = ((s + 1.0) * ((s + 2.0) * s * t + a * a - b * b) * cur
            - 2.0 * (k + a) * (k + b) * (s + 2.0) * prev)
            / denom;
        prev = cur;
        cur = next;
    }
    cur
}

/// P_n^{(α,β)}(t) from the terminating hypergeometric sum
/// C(n+α, n) ₂F₁(-n, n+α+β+1; α+1; (1-t)/2).
///
/// This is an independent representation kept for cross-checking
/// [`jacobi_p`]. The alternating sum cancels badly for moderate degree, so it
/// is accumulated in double-double arithmetic, and for t < 0 the reflection
/// P_n^{(α,β)}(t) = (-1)^n P_n^{(β,α)}(-t) keeps the argument in [0, 1/2].
pub fn jacobi_p_series(p: &JacobiParams, t: f64) -> f64 {
    if t < 0.0 {
        let mirrored = JacobiParams { alpha: p.beta, beta: p.alpha, n: p.n };
        let v = jacobi_p_series(&mirrored, -t);
        return if p.n % 2 == 0 { v } else { -v };
    }
    let n = p.n;
    let a = Dd::from(p.alpha);
    let ab1 = Dd::from(p.alpha + p.beta + 1.0) + Dd::from(f64::from(n));
    let half = Dd::from(0.5);
    let x = (Dd::ONE - Dd::from(t)) * half;

    // leading coefficient C(n+α, n) = (α+1)_n / n!
    let mut term = Dd::ONE;
    for j in 1..=n {
        let j = Dd::from(f64::from(j));
        term = term * (a + j) / j;
    }
    let mut sum = term;
    for k in 0..n {
        let kf = Dd::from(f64::from(k));
        let num = (kf - Dd::from(f64::from(n))) * (ab1 + kf);
        let den = (a + Dd::ONE + kf) * (kf + Dd::ONE);
        term = term * num / den * x;
        sum = sum + term;
    }
    sum.to_f64()
}

/// Gegenbauer polynomial C_n^{(a)}(t), via its proportionality to
/// P_n^{(a-1/2, a-1/2)}.
pub fn gegenbauer_c(a: f64, n: u32, t: f64) -> Result<f64> {
    if !(a > -0.5) {
        return Err(invalid(format!("Gegenbauer index must be > -1/2, got {a}")));
    }
    if a.abs() < INTEGER_TOL {
        return Err(invalid("Gegenbauer index a = 0 is not supported"));
    }
    let p = JacobiParams { alpha: a - 0.5, beta: a - 0.5, n };
    Ok(gegenbauer_from_jacobi_factor(a, n)? * jacobi_p(&p, t))
}

/// Γ(2a+n)Γ(a+1/2) / (Γ(2a)Γ(a+n+1/2)), the factor with
/// C_n^{(a)} = factor · P_n^{(a-1/2, a-1/2)}.
pub fn gegenbauer_from_jacobi_factor(a: f64, n: u32) -> Result<f64> {
    let nf = f64::from(n);
    gamma_ratio(&[2.0 * a + nf, a + 0.5], &[2.0 * a, a + nf + 0.5])
}

/// Associated Legendre function of the first kind on the cut, at x = 0:
/// P_ν^μ(0) = 2^μ √π / (Γ((ν-μ)/2 + 1) Γ((1-ν-μ)/2)).
///
/// A pole of either denominator Gamma yields an exact zero.
pub fn legendre_p_zero(nu: f64, mu: f64) -> f64 {
    let pref = SignedLog { log_abs: mu * std::f64::consts::LN_2 + 0.5 * PI.ln(), sign: 1 };
    pref.mul(rgamma_signed(0.5 * (nu - mu) + 1.0))
        .mul(rgamma_signed(0.5 * (1.0 - nu - mu)))
        .value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gammacore::binomial_real;

    fn jp(alpha: f64, beta: f64, n: u32) -> JacobiParams {
        JacobiParams::new(alpha, beta, n).unwrap()
    }

    #[test]
    fn rejects_nonintegrable_weight() {
        assert!(JacobiParams::new(-1.0, 0.0, 2).is_err());
        assert!(JacobiParams::new(0.0, -1.5, 2).is_err());
        assert!(JacobiParams::new(f64::NAN, 0.0, 2).is_err());
    }

    #[test]
    fn low_degree_values() {
        assert_eq!(jacobi_p(&jp(1.3, -0.4, 0), 0.7), 1.0);
        assert_eq!(jacobi_p(&jp(0.0, 0.0, 1), 0.5), 0.5);
        // Legendre P_2(t) = (3t^2 - 1)/2
        assert!((jacobi_p(&jp(0.0, 0.0, 2), 0.3) - (3.0 * 0.09 - 1.0) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn series_examples() {
        assert!((jacobi_p_series(&jp(0.0, 0.0, 3), 1.0) - 1.0).abs() < 1e-15);
        assert!(jacobi_p_series(&jp(1.0, 1.0, 1), 0.0).abs() < 1e-15);
    }

    #[test]
    fn recurrence_matches_series() {
        for &(a, b, n, t) in &[(0.5, -0.25, 2, 0.3), (0.5, -0.25, 4, -0.6), (2.9, 2.8, 15, -0.05)] {
            let p = jp(a, b, n);
            let r = jacobi_p(&p, t);
            let s = jacobi_p_series(&p, t);
            assert!((r - s).abs() <= 1e-12 * (1.0 + r.abs()), "{a} {b} {n} {t}: {r} vs {s}");
        }
    }

    #[test]
    fn endpoint_value_is_binomial() {
        let p = jp(1.7, 0.2, 9);
        let expect = binomial_real(9.0 + 1.7, 9);
        assert!((jacobi_p(&p, 1.0) - expect).abs() < 1e-12 * expect);
    }

    #[test]
    fn gegenbauer_examples() {
        assert_eq!(gegenbauer_c(0.8, 0, 0.3).unwrap(), 1.0);
        assert!(gegenbauer_c(1.0, 2, 0.5).unwrap().abs() < 1e-15);
        assert!((gegenbauer_c(0.7, 1, 0.2).unwrap() - 0.28).abs() < 1e-15);
        assert!(gegenbauer_c(-0.5, 1, 0.2).is_err());
        assert!(gegenbauer_c(0.0, 1, 0.2).is_err());
    }

    #[test]
    fn gegenbauer_negative_index() {
        // C_2^{(a)}(t) = 2a(a+1)t^2 - a
        let a = -0.3;
        let t = 0.6;
        let expect = 2.0 * a * (a + 1.0) * t * t - a;
        assert!((gegenbauer_c(a, 2, t).unwrap() - expect).abs() < 1e-14);
    }

    #[test]
    fn legendre_at_zero_examples() {
        assert!((legendre_p_zero(0.0, 0.0) - 1.0).abs() < 1e-15);
        assert_eq!(legendre_p_zero(1.0, 0.0), 0.0);
        // P_2(0) = -1/2
        assert!((legendre_p_zero(2.0, 0.0) + 0.5).abs() < 1e-14);
        assert!(legendre_p_zero(2.5, -0.75).is_finite());
    }
}
