//! Reference values computed without the closed forms: tanh-sinh quadrature
//! of the integrals themselves, exact moments of the Jacobi weight, and the
//! power-series expansion of the full-range integral in 1/z.

mod quad;

pub use quad::{quad_moment, quad_weighted, QuadRequest};

use num_complex::Complex64;

use crate::closedforms::EvalResult;
use crate::dd::Dd;
use crate::error::{invalid, Error, Result};
use crate::gammacore::{binomial_real, gamma_ratio_signed, SignedLog};
use crate::orthopoly::JacobiParams;

const SERIES_ORACLE_MAX_TERMS: usize = 100_000;

/// ₂F₁(-m, b; c; 2) as a finite sum.
///
/// The raw sum alternates with large terms, so the equivalent form
/// (c-b)_m/(c)_m · Σ_k (-m)_k (b)_k / ((b-c-m+1)_k k!) (-1)^k
/// is accumulated in double-double arithmetic.
pub fn terminating_2f1_at_two(m: u32, b: f64, c: f64) -> Result<f64> {
    let mf = f64::from(m);
    let q = b - c - mf + 1.0;
    let (bd, qd) = (Dd::from(b), Dd::from(q));
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    for k in 0..m {
        let kd = Dd::from(f64::from(k));
        let den = (qd + kd) * (kd + Dd::ONE);
        if den.to_f64() == 0.0 {
            return Err(Error::Pole(q + f64::from(k)));
        }
        // (-m+k)(b+k)(-1) / ((q+k)(k+1))
        term = term * (Dd::from(mf) - kd) * (bd + kd) / den;
        sum = sum + term;
    }
    let (cb, cd) = (Dd::from(c - b), Dd::from(c));
    let mut front = Dd::ONE;
    for k in 0..m {
        let kd = Dd::from(f64::from(k));
        let den = cd + kd;
        if den.to_f64() == 0.0 {
            return Err(Error::Pole(c + f64::from(k)));
        }
        front = front * (cb + kd) / den;
    }
    Ok((front * sum).to_f64())
}

// 2^{α+β+n+1} B(α+n+1, β+n+1)
fn moment_base(p: &JacobiParams) -> Result<SignedLog> {
    let (a, b, n) = (p.alpha, p.beta, f64::from(p.n));
    let g = gamma_ratio_signed(&[a + n + 1.0, b + n + 1.0], &[a + b + 2.0 * n + 2.0])?;
    Ok(SignedLog { log_abs: (a + b + n + 1.0) * std::f64::consts::LN_2, sign: 1 }.mul(g))
}

/// ∫_{-1}^{1} t^m (1-t)^α (1+t)^β P_n(t) dt.
///
/// Zero below the degree; above it the Rodrigues form leaves a terminating
/// ₂F₁ at argument 2.
pub fn moment_integral(m: u32, p: &JacobiParams) -> Result<f64> {
    p.validate()?;
    if m < p.n {
        return Ok(0.0);
    }
    let base = moment_base(p)?.value();
    if m == p.n {
        return Ok(base);
    }
    let n = f64::from(p.n);
    let f = terminating_2f1_at_two(m - p.n, p.alpha + n + 1.0, p.alpha + p.beta + 2.0 * n + 2.0)?;
    Ok(binomial_real(f64::from(m), p.n) * base * f)
}

/// The full-range integral from the expansion
/// (z-t)^{-λ} = z^{-λ} Σ_k (λ)_k t^k / (k! z^k) and the exact moments.
///
/// Requires z > 3. Summation stops once a geometric bound on the remaining
/// terms, using max|P_n| · ∫w as a bound on every moment, is below
/// `tol · |sum|`.
pub fn series_oracle_theorem1(p: &JacobiParams, lambda: f64, z: f64, tol: f64) -> Result<EvalResult> {
    p.validate()?;
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(invalid(format!("lambda must lie in (0, 1], got {lambda}")));
    }
    if !(z.is_finite() && z > 3.0) {
        return Err(invalid(format!("series oracle needs z > 3, got {z}")));
    }
    if !(tol > 0.0) {
        return Err(invalid(format!("tolerance must be positive, got {tol}")));
    }
    let (a, b, n) = (p.alpha, p.beta, f64::from(p.n));

    // u_k = (λ)_k / (k! z^{k+λ}); the k-th series term is u_k I_k
    let mut u = gamma_ratio_signed(&[lambda + n], &[lambda, n + 1.0])?
        .mul(SignedLog { log_abs: -(n + lambda) * z.ln(), sign: 1 })
        .value();
    let base = moment_base(p)?.value();

    let weight_mass = gamma_ratio_signed(&[a + 1.0, b + 1.0], &[a + b + 2.0])?
        .mul(SignedLog { log_abs: (a + b + 1.0) * std::f64::consts::LN_2, sign: 1 })
        .value();
    let max_p = binomial_real(n + a, p.n).abs().max(binomial_real(n + b, p.n).abs()).max(1.0);
    let moment_bound = max_p * weight_mass;

    let mut sum = 0.0;
    let mut binom = 1.0; // C(n+m, n)
    for m in 0..SERIES_ORACLE_MAX_TERMS as u32 {
        let k = n + f64::from(m);
        if m > 0 {
            binom *= k / f64::from(m);
        }
        let f = terminating_2f1_at_two(m, a + n + 1.0, a + b + 2.0 * n + 2.0)?;
        sum += u * binom * base * f;
        u *= (lambda + k) / ((k + 1.0) * z);
        let tail = moment_bound * u / (1.0 - 1.0 / z);
        if !sum.is_finite() {
            break;
        }
        if tail <= tol * sum.abs() || tail == 0.0 {
            return Ok(EvalResult {
                value: Complex64::new(sum, 0.0),
                abs_err_estimate: tail + 64.0 * f64::EPSILON * sum.abs(),
                terms_or_panels: m as usize + 1,
                converged: true,
            });
        }
    }
    Err(Error::NotConverged { what: "full-range series oracle", steps: SERIES_ORACLE_MAX_TERMS })
}
