//! Closed-form values of the singular Jacobi integrals.
//!
//! With w(t) = (1-t)^α (1+t)^β:
//!
//! | kind            | integral                                            |
//! |-----------------|-----------------------------------------------------|
//! | `FullRange`     | ∫_{-1}^{1} w(t) (z-t)^{-λ} P_n(t) dt, z > 1         |
//! | `UpperTail`     | ∫_x^1 w(t) (t-x)^{-λ} P_n(t) dt                     |
//! | `ZeroSingular`  | ∫_0^1 w(t) t^{-λ} P_n(t) dt                         |
//! | `LowerTail`     | ∫_{-1}^x w(t) (t-x)^{-λ} P_n(t) dt (complex)        |
//! | `GegenbauerZero`| ∫_0^1 (1-t²)^{a-1/2} t^{-λ} C_n^{(a)}(t) dt         |
//! | `RemarkWeight`  | ∫_{-1}^{1} (1-t)^α (1+t)^{β-λ} P_n(t) dt            |

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::gammacore::{binomial_real, gamma_ratio_signed, is_integer, SignedLog, INTEGER_TOL};
use crate::hypergeom::{hyp2f1, hyp2f1_continued, SeriesEval};
use crate::orthopoly::{gegenbauer_from_jacobi_factor, legendre_p_zero, JacobiParams};

/// Sign s in the relation
/// `theorem4_lower = exp(i·s·π·λ) · ∫_{-1}^x w(t) |x-t|^{-λ} P_n(t) dt`
/// under the upper-side branch of the continued ₂F₁.
pub const LOWER_TAIL_PHASE_SIGN: f64 = 1.0;

/// exp(i·s·π·λ) with s = [`LOWER_TAIL_PHASE_SIGN`].
pub fn lower_tail_phase(lambda: f64) -> Complex64 {
    Complex64::from_polar(1.0, LOWER_TAIL_PHASE_SIGN * PI * lambda)
}

// Rounding allowance added to every closed-form error estimate.
const ROUNDING_ALLOWANCE: f64 = 64.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntegralKind {
    FullRange,
    UpperTail,
    ZeroSingular,
    LowerTail,
    GegenbauerZero,
    RemarkWeight,
}

impl IntegralKind {
    pub const ALL: [IntegralKind; 6] = [
        IntegralKind::FullRange,
        IntegralKind::UpperTail,
        IntegralKind::ZeroSingular,
        IntegralKind::LowerTail,
        IntegralKind::GegenbauerZero,
        IntegralKind::RemarkWeight,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IntegralKind::FullRange => "full_range",
            IntegralKind::UpperTail => "upper_tail",
            IntegralKind::ZeroSingular => "zero_singular",
            IntegralKind::LowerTail => "lower_tail",
            IntegralKind::GegenbauerZero => "gegenbauer_zero",
            IntegralKind::RemarkWeight => "remark_weight",
        }
    }
}

impl std::fmt::Display for IntegralKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IntegralParams {
    Jacobi(JacobiParams),
    Gegenbauer { a: f64, n: u32 },
}

/// One integral: its kind, polynomial parameters, singularity exponent and
/// free point (z for `FullRange`, x for the tails, ignored otherwise).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralSpec {
    pub kind: IntegralKind,
    pub params: IntegralParams,
    pub lambda: f64,
    pub point: f64,
}

impl IntegralSpec {
    fn jacobi_spec(kind: IntegralKind, p: JacobiParams, lambda: f64, point: f64) -> Result<Self> {
        let s = IntegralSpec { kind, params: IntegralParams::Jacobi(p), lambda, point };
        s.validate()?;
        Ok(s)
    }

    pub fn full_range(p: JacobiParams, lambda: f64, z: f64) -> Result<Self> {
        Self::jacobi_spec(IntegralKind::FullRange, p, lambda, z)
    }

    pub fn upper_tail(p: JacobiParams, lambda: f64, x: f64) -> Result<Self> {
        Self::jacobi_spec(IntegralKind::UpperTail, p, lambda, x)
    }

    pub fn zero_singular(p: JacobiParams, lambda: f64) -> Result<Self> {
        Self::jacobi_spec(IntegralKind::ZeroSingular, p, lambda, 0.0)
    }

    pub fn lower_tail(p: JacobiParams, lambda: f64, x: f64) -> Result<Self> {
        Self::jacobi_spec(IntegralKind::LowerTail, p, lambda, x)
    }

    pub fn remark_weight(p: JacobiParams, lambda: f64) -> Result<Self> {
        Self::jacobi_spec(IntegralKind::RemarkWeight, p, lambda, 0.0)
    }

    pub fn gegenbauer_zero(a: f64, n: u32, lambda: f64) -> Result<Self> {
        let s = IntegralSpec {
            kind: IntegralKind::GegenbauerZero,
            params: IntegralParams::Gegenbauer { a, n },
            lambda,
            point: 0.0,
        };
        s.validate()?;
        Ok(s)
    }

    /// Jacobi parameters, or the equivalent (a-1/2, a-1/2, n) for the
    /// Gegenbauer kind.
    pub fn jacobi(&self) -> JacobiParams {
        match self.params {
            IntegralParams::Jacobi(p) => p,
            IntegralParams::Gegenbauer { a, n } => JacobiParams { alpha: a - 0.5, beta: a - 0.5, n },
        }
    }

    pub fn degree(&self) -> u32 {
        self.jacobi().n
    }

    pub fn validate(&self) -> Result<()> {
        let lambda = self.lambda;
        if !lambda.is_finite() {
            return Err(invalid("lambda must be finite"));
        }
        match (self.kind, self.params) {
            (IntegralKind::GegenbauerZero, IntegralParams::Gegenbauer { a, .. }) => {
                check_gegenbauer_index(a)?;
            }
            (IntegralKind::GegenbauerZero, _) => {
                return Err(invalid("gegenbauer_zero needs Gegenbauer parameters"));
            }
            (_, IntegralParams::Jacobi(p)) => p.validate()?,
            (kind, _) => return Err(invalid(format!("{kind} needs Jacobi parameters"))),
        }
        match self.kind {
            IntegralKind::FullRange => {
                if !(lambda > 0.0 && lambda <= 1.0) {
                    return Err(invalid(format!("lambda must lie in (0, 1], got {lambda}")));
                }
                if !(self.point.is_finite() && self.point > 1.0) {
                    return Err(invalid(format!("z must be > 1, got {}", self.point)));
                }
            }
            _ => {
                check_open_lambda(lambda)?;
            }
        }
        match self.kind {
            IntegralKind::UpperTail | IntegralKind::LowerTail => {
                if !(self.point > -1.0 && self.point < 1.0) {
                    return Err(invalid(format!("x must lie in (-1, 1), got {}", self.point)));
                }
            }
            IntegralKind::RemarkWeight => {
                let p = self.jacobi();
                if !(p.beta - lambda > -1.0) {
                    return Err(invalid(format!(
                        "beta - lambda must be > -1, got {}",
                        p.beta - lambda
                    )));
                }
            }
            _ => {}
        }
        Ok(())
    }
}

/// A closed-form or oracle value with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    pub abs_err_estimate: f64,
    /// Series terms for closed forms, panels for quadrature.
    pub terms_or_panels: usize,
    pub converged: bool,
}

impl EvalResult {
    pub fn real(&self) -> f64 {
        self.value.re
    }

    fn from_real(pref: SignedLog, series: SeriesEval) -> Self {
        let scale = if pref.sign == 0 { 0.0 } else { pref.log_abs.exp() };
        let value = pref.value() * series.value;
        EvalResult {
            value: Complex64::new(value, 0.0),
            abs_err_estimate: scale * series.tail_estimate + ROUNDING_ALLOWANCE * value.abs(),
            terms_or_panels: series.terms_used,
            converged: series.converged,
        }
    }

    fn exact(value: f64, terms: usize) -> Self {
        EvalResult {
            value: Complex64::new(value, 0.0),
            abs_err_estimate: ROUNDING_ALLOWANCE * value.abs(),
            terms_or_panels: terms,
            converged: true,
        }
    }
}

fn check_open_lambda(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda < 1.0 {
        Ok(())
    } else {
        Err(invalid(format!("lambda must lie in (0, 1), got {lambda}")))
    }
}

fn check_gegenbauer_index(a: f64) -> Result<()> {
    if !(a.is_finite() && a > -0.5) {
        return Err(invalid(format!("Gegenbauer index a must be > -1/2, got {a}")));
    }
    if a.abs() < INTEGER_TOL {
        return Err(invalid("Gegenbauer index a = 0 is not supported"));
    }
    Ok(())
}

fn pow_signed(base: f64, exponent: f64) -> SignedLog {
    SignedLog { log_abs: exponent * base.ln(), sign: 1 }
}

fn base2(exponent: f64) -> SignedLog {
    SignedLog { log_abs: exponent * LN_2, sign: 1 }
}

// 2^{α+β+n+1} (λ)_n / n! · B(α+n+1, β+n+1), the common prefactor of the
// full-range and lower-tail continued terms.
fn full_range_constant(p: &JacobiParams, lambda: f64) -> Result<SignedLog> {
    let (a, b, n) = (p.alpha, p.beta, f64::from(p.n));
    let g = gamma_ratio_signed(&[lambda + n, a + n + 1.0, b + n + 1.0], &[lambda, n + 1.0, a + b + 2.0 * n + 2.0])?;
    Ok(base2(a + b + n + 1.0).mul(g))
}

/// ∫_{-1}^{1} (1-t)^α (1+t)^β (z-t)^{-λ} P_n(t) dt for real z > 1, 0 < λ <= 1.
pub fn theorem1_full_range(p: &JacobiParams, lambda: f64, z: f64) -> Result<EvalResult> {
    IntegralSpec::full_range(*p, lambda, z)?;
    let n = f64::from(p.n);
    let pref = full_range_constant(p, lambda)?.mul(pow_signed(z - 1.0, -(n + lambda)));
    let f = hyp2f1(p.alpha + n + 1.0, n + lambda, p.alpha + p.beta + 2.0 * n + 2.0, 2.0 / (1.0 - z))?;
    Ok(EvalResult::from_real(pref, f))
}

// 2^β Γ(n+α+1)Γ(1-λ)/(Γ(n+1)Γ(α-λ+2)) (1-x)^{α+1-λ} ₂F₁(α+n+1, -β-n; α-λ+2; (1-x)/2)
fn upper_tail(p: &JacobiParams, lambda: f64, x: f64) -> Result<EvalResult> {
    let (a, b, n) = (p.alpha, p.beta, f64::from(p.n));
    let g = gamma_ratio_signed(&[n + a + 1.0, 1.0 - lambda], &[n + 1.0, a - lambda + 2.0])?;
    let pref = base2(b).mul(g).mul(pow_signed(1.0 - x, a + 1.0 - lambda));
    let f = hyp2f1(a + n + 1.0, -b - n, a - lambda + 2.0, 0.5 * (1.0 - x))?;
    Ok(EvalResult::from_real(pref, f))
}

/// ∫_x^1 (1-t)^α (1+t)^β (t-x)^{-λ} P_n(t) dt for -1 < x < 1, 0 < λ < 1.
pub fn theorem2_upper(p: &JacobiParams, lambda: f64, x: f64) -> Result<EvalResult> {
    IntegralSpec::upper_tail(*p, lambda, x)?;
    upper_tail(p, lambda, x)
}

/// ∫_0^1 (1-t)^α (1+t)^β t^{-λ} P_n(t) dt, the upper tail at x = 0.
pub fn theorem3_zero(p: &JacobiParams, lambda: f64) -> Result<EvalResult> {
    IntegralSpec::zero_singular(*p, lambda)?;
    upper_tail(p, lambda, 0.0)
}

/// The lower-tail closed form, a complex number.
///
/// The first term continues the full-range expression to the point x, where
/// the ₂F₁ argument 2/(1-x) exceeds 1 and the upper-side branch is taken; the
/// upper tail is then subtracted. The result equals
/// [`lower_tail_phase`]`(λ)` times the real integral with |x-t|^{-λ}.
pub fn theorem4_lower(p: &JacobiParams, lambda: f64, x: f64) -> Result<EvalResult> {
    IntegralSpec::lower_tail(*p, lambda, x)?;
    let (a, b, n) = (p.alpha, p.beta, f64::from(p.n));
    if is_integer(a + 1.0 - lambda) {
        return Err(Error::Degenerate(format!(
            "alpha + 1 - lambda = {} is an integer",
            a + 1.0 - lambda
        )));
    }
    // binom(-λ, n) = (-1)^n (λ)_n / n!
    let sign = if p.n % 2 == 0 { 1 } else { -1 };
    let mut pref = full_range_constant(p, lambda)?.mul(pow_signed(1.0 - x, -(n + lambda)));
    pref.sign *= sign;
    let continued = hyp2f1_continued(a + n + 1.0, n + lambda, a + b + 2.0 * n + 2.0, 2.0 / (1.0 - x))?;
    let first = continued * pref.value();
    let tail = upper_tail(p, lambda, x)?;
    let value = first - tail.value;
    Ok(EvalResult {
        value,
        abs_err_estimate: tail.abs_err_estimate + ROUNDING_ALLOWANCE * (first.norm() + value.norm()),
        terms_or_panels: tail.terms_or_panels,
        converged: tail.converged,
    })
}

/// ∫_0^1 (1-t²)^{a-1/2} t^{-λ} C_n^{(a)}(t) dt in closed form; a pole of
/// Γ((2-λ-n)/2) gives an exact zero.
pub fn gegenbauer_zero(a: f64, n: u32, lambda: f64) -> Result<EvalResult> {
    IntegralSpec::gegenbauer_zero(a, n, lambda)?;
    let nf = f64::from(n);
    let g = gamma_ratio_signed(
        &[nf + 2.0 * a, 1.0 - lambda],
        &[nf + 1.0, a, 0.5 * (nf + 2.0 * a - lambda + 2.0), 0.5 * (2.0 - lambda - nf)],
    )?;
    let pref = SignedLog { log_abs: PI.ln(), sign: 1 }.mul(base2(lambda - 2.0 * a));
    Ok(EvalResult::exact(pref.mul(g).value(), 0))
}

/// The same integral routed through the associated Legendre function
/// P^{λ-a-1/2}_{n+a-1/2}(0).
pub fn legendre_route(a: f64, n: u32, lambda: f64) -> Result<EvalResult> {
    IntegralSpec::gegenbauer_zero(a, n, lambda)?;
    let nf = f64::from(n);
    let g = gamma_ratio_signed(&[nf + 2.0 * a, 1.0 - lambda], &[nf + 1.0, a])?;
    let pref = SignedLog { log_abs: 0.5 * PI.ln(), sign: 1 }.mul(base2(0.5 - a)).mul(g);
    let legendre = legendre_p_zero(nf + a - 0.5, lambda - a - 0.5);
    Ok(EvalResult::exact(pref.value() * legendre, 0))
}

/// The Gegenbauer integral obtained from [`theorem3_zero`] at α = β = a - 1/2
/// and the Jacobi-to-Gegenbauer normalization.
pub fn gegenbauer_via_jacobi(a: f64, n: u32, lambda: f64) -> Result<EvalResult> {
    IntegralSpec::gegenbauer_zero(a, n, lambda)?;
    let p = JacobiParams { alpha: a - 0.5, beta: a - 0.5, n };
    let factor = gegenbauer_from_jacobi_factor(a, n)?;
    let r = theorem3_zero(&p, lambda)?;
    Ok(EvalResult {
        value: r.value * factor,
        abs_err_estimate: r.abs_err_estimate * factor.abs(),
        ..r
    })
}

/// ∫_{-1}^{1} (1-t)^α (1+t)^{β-λ} P_n(t) dt = 2^{α+β-λ+1} binom(-λ, n) B(α+n+1, β-λ+1).
pub fn remark_identity(p: &JacobiParams, lambda: f64) -> Result<EvalResult> {
    IntegralSpec::remark_weight(*p, lambda)?;
    let (a, b, n) = (p.alpha, p.beta, f64::from(p.n));
    let beta_fn = gamma_ratio_signed(&[a + n + 1.0, b - lambda + 1.0], &[a + b - lambda + n + 2.0])?;
    let pref = base2(a + b - lambda + 1.0).mul(beta_fn);
    Ok(EvalResult::exact(pref.value() * binomial_real(-lambda, p.n), 0))
}

/// Evaluate the closed form matching `spec`.
pub fn evaluate(spec: &IntegralSpec) -> Result<EvalResult> {
    let p = spec.jacobi();
    match (spec.kind, spec.params) {
        (IntegralKind::FullRange, _) => theorem1_full_range(&p, spec.lambda, spec.point),
        (IntegralKind::UpperTail, _) => theorem2_upper(&p, spec.lambda, spec.point),
        (IntegralKind::ZeroSingular, _) => theorem3_zero(&p, spec.lambda),
        (IntegralKind::LowerTail, _) => theorem4_lower(&p, spec.lambda, spec.point),
        (IntegralKind::GegenbauerZero, IntegralParams::Gegenbauer { a, n }) => {
            gegenbauer_zero(a, n, spec.lambda)
        }
        (IntegralKind::GegenbauerZero, _) => Err(invalid("gegenbauer_zero needs Gegenbauer parameters")),
        (IntegralKind::RemarkWeight, _) => remark_identity(&p, spec.lambda),
    }
}
