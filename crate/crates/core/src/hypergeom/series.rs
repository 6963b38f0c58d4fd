use crate::dd::Dd;
use crate::error::{invalid, Error, Result};
use crate::gammacore::{is_nonpositive_integer, pochhammer, SignedLog};

use super::{SeriesEval, DEFAULT_TERM_BUDGET, SERIES_TOL};

// Consecutive negligible terms required before the tail test is trusted.
const QUIET_TERMS: usize = 3;
// Above this Σ|terms| / |sum| the terms are summed again in double-double.
const CANCELLATION_RATIO: f64 = 1e3;

/// Index at which a nonpositive-integer top parameter truncates the series.
fn termination_degree(top: &[f64]) -> Option<usize> {
    top.iter()
        .filter(|&&a| is_nonpositive_integer(a))
        .map(|&a| (-a.round()) as usize)
        .min()
}

/// Generalized hypergeometric series pFq(top; bottom; x).
///
/// Top parameters within the integer tolerance of a nonpositive integer are
/// snapped to it so the sum terminates exactly.
pub fn hyp_pfq(top: &[f64], bottom: &[f64], x: f64) -> Result<SeriesEval> {
    hyp_pfq_with_budget(top, bottom, x, DEFAULT_TERM_BUDGET)
}

pub(crate) fn hyp_pfq_with_budget(
    top: &[f64],
    bottom: &[f64],
    x: f64,
    budget: usize,
) -> Result<SeriesEval> {
    pfq_core(top, bottom, x, budget).map(|(s, _)| s)
}

/// The series together with Σ|terms|, which bounds its rounding error.
pub(crate) fn pfq_core(top: &[f64], bottom: &[f64], x: f64, budget: usize) -> Result<(SeriesEval, f64)> {
    if !x.is_finite() {
        return Err(invalid(format!("series argument must be finite, got {x}")));
    }
    let degree = termination_degree(top);
    let top: Vec<f64> = top
        .iter()
        .map(|&a| if is_nonpositive_integer(a) { a.round() } else { a })
        .collect();

    for &b in bottom {
        if is_nonpositive_integer(b) {
            let pole_index = (-b.round()) as usize;
            match degree {
                Some(d) if d <= pole_index => {}
                _ => return Err(Error::Pole(b)),
            }
        }
    }

    if x == 0.0 || degree == Some(0) {
        return Ok((SeriesEval::exact(1.0, 1), 1.0));
    }

    if degree.is_none() {
        let p = top.len();
        let q = bottom.len();
        if p > q + 1 {
            return Err(invalid(format!("{p}F{q} series diverges for nonzero argument")));
        }
        if p == q + 1 {
            let excess: f64 = bottom.iter().sum::<f64>() - top.iter().sum::<f64>();
            if x.abs() > 1.0 || (x.abs() == 1.0 && excess <= 0.0) {
                return Err(invalid(format!(
                    "{p}F{q} series outside its disk of convergence (x = {x}, excess = {excess})"
                )));
            }
        }
    }

    let ratio = |k: f64| -> f64 {
        let num: f64 = top.iter().map(|a| a + k).product();
        let den: f64 = bottom.iter().map(|b| b + k).product();
        num / den / (k + 1.0) * x
    };

    let mut sum = 1.0;
    let mut l1 = 1.0;
    let mut term = 1.0;
    let mut quiet = 0;
    let limit = degree.unwrap_or(budget);
    let mut finished: Option<(usize, f64)> = None;
    for k in 0..limit {
        let kf = k as f64;
        term *= ratio(kf);
        sum += term;
        l1 += term.abs();
        if !sum.is_finite() {
            return Err(Error::NotConverged { what: "hypergeometric series", steps: k + 1 });
        }
        if degree.is_some() {
            continue;
        }
        if term.abs() <= SERIES_TOL * sum.abs() {
            quiet += 1;
        } else {
            quiet = 0;
        }
        if quiet >= QUIET_TERMS {
            let next = ratio(kf + 1.0).abs();
            if next < 1.0 {
                let tail = term.abs() * next / (1.0 - next);
                if tail <= SERIES_TOL * sum.abs() {
                    finished = Some((k + 1, tail));
                    break;
                }
            }
        }
    }
    let (steps, tail) = match (degree, finished) {
        (Some(d), _) => (d, 0.0),
        (None, Some(f)) => f,
        (None, None) => {
            return Err(Error::NotConverged { what: "hypergeometric series", steps: budget })
        }
    };
    let mut rounding = l1;
    if l1 > CANCELLATION_RATIO * sum.abs() {
        sum = resum_dd(&top, bottom, x, steps);
        rounding = l1 * f64::EPSILON + sum.abs();
    }
    let eval = SeriesEval { value: sum, terms_used: steps + 1, tail_estimate: tail, converged: true };
    Ok((eval, rounding + tail))
}

// The first `steps` + 1 terms again, in double-double.
fn resum_dd(top: &[f64], bottom: &[f64], x: f64, steps: usize) -> f64 {
    let xd = Dd::from(x);
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    for k in 0..steps {
        let kd = Dd::from(k as f64);
        let mut num = xd;
        for &a in top {
            num = num * (Dd::from(a) + kd);
        }
        let mut den = kd + Dd::ONE;
        for &b in bottom {
            den = den * (Dd::from(b) + kd);
        }
        term = term * num / den;
        sum = sum + term;
    }
    sum.to_f64()
}

/// ₃F₂(a1, a2, a3; b1, b2; x).
pub fn hyp3f2(a1: f64, a2: f64, a3: f64, b1: f64, b2: f64, x: f64) -> Result<SeriesEval> {
    hyp_pfq(&[a1, a2, a3], &[b1, b2], x)
}

/// The limit of (1/Γ(-M)) · p+1Fp(a_0..a_p; -M, b_2..b_p; z), written through
/// the shifted series
///
/// z^{M+1} ∏(a_i)_{M+1} / (Γ(M+2) ∏(b_j)_{M+1})
///     · p+1Fp(a_i+M+1; M+2, b_j+M+1; z).
///
/// `top` holds a_0..a_p and `bottom_rest` holds b_2..b_p, so
/// `top.len() == bottom_rest.len() + 2`.
pub fn regularized_pfq_limit(top: &[f64], bottom_rest: &[f64], m: u32, z: f64) -> Result<f64> {
    if top.len() != bottom_rest.len() + 2 {
        return Err(invalid(format!(
            "expected {} top parameters for {} remaining bottom parameters, got {}",
            bottom_rest.len() + 2,
            bottom_rest.len(),
            top.len()
        )));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    let shift = f64::from(m + 1);
    let mut pref = SignedLog::from_value(z.powi(m as i32 + 1));
    for &a in top {
        pref = pref.mul(SignedLog::from_value(pochhammer(a, m + 1)));
    }
    // Γ(M+2) = (M+1)!
    pref = pref.div(SignedLog::from_value(pochhammer(1.0, m + 1)));
    for &b in bottom_rest {
        let pb = pochhammer(b, m + 1);
        if pb == 0.0 {
            return Err(Error::Pole(b));
        }
        pref = pref.div(SignedLog::from_value(pb));
    }
    if pref.sign == 0 {
        return Ok(0.0);
    }
    let shifted_top: Vec<f64> = top.iter().map(|a| a + shift).collect();
    let mut shifted_bottom = Vec::with_capacity(bottom_rest.len() + 1);
    shifted_bottom.push(shift + 1.0);
    shifted_bottom.extend(bottom_rest.iter().map(|b| b + shift));
    let s = hyp_pfq(&shifted_top, &shifted_bottom, z)?;
    Ok(pref.value() * s.value)
}
