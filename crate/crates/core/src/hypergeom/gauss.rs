use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::gammacore::{gamma_ratio_signed, is_integer, is_nonpositive_integer, SignedLog};

use super::series::{hyp_pfq, pfq_core};
use super::{ComplexValue, SeriesEval, DEFAULT_TERM_BUDGET, EXTENDED_TERM_BUDGET};

// Below this |x| the defining series is summed directly.
const DIRECT_RADIUS: f64 = 0.5;
// Beyond this |x| the defining series is not offered as an alternative route.
const ALTERNATIVE_RADIUS: f64 = 0.95;

fn terminates(a: f64, b: f64) -> bool {
    is_nonpositive_integer(a) || is_nonpositive_integer(b)
}

// A value together with Σ|terms| of the sums that produced it.
#[derive(Debug, Clone, Copy)]
struct Route {
    eval: SeriesEval,
    l1: f64,
}

impl Route {
    fn error(&self) -> f64 {
        f64::EPSILON * self.l1 + self.eval.tail_estimate
    }

    fn scaled(self, factor: f64) -> Route {
        Route { eval: self.eval.scaled(factor), l1: self.l1 * factor.abs() }
    }
}

fn series(top: &[f64], bottom: &[f64], x: f64, budget: usize) -> Result<Route> {
    pfq_core(top, bottom, x, budget).map(|(eval, l1)| Route { eval, l1 })
}

// The candidate with the smallest estimated error; the first error if none
// succeeded.
fn best(candidates: Vec<Result<Route>>) -> Result<Route> {
    let mut chosen: Option<Route> = None;
    let mut first_err = None;
    for c in candidates {
        match c {
            Ok(r) if r.eval.value.is_finite() => {
                if chosen.is_none_or(|b| r.error() < b.error()) {
                    chosen = Some(r);
                }
            }
            Ok(_) => {}
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    chosen.ok_or_else(|| {
        first_err.unwrap_or(Error::NotConverged { what: "2F1", steps: 0 })
    })
}

/// Gauss hypergeometric function ₂F₁(a, b; c; x) for real x < 1.
///
/// - |x| <= 1/2: defining series.
/// - x < -1/2: Pfaff transformations onto x/(x-1) in (1/3, 1).
/// - 1/2 < x < 1: connection formula in 1-x. When c-a-b is an integer the
///   defining series is summed with an extended budget instead.
///
/// Where several of these routes apply (the two Pfaff forms, the defining
/// series or Euler's form for |x| <= 0.95) all are summed and the one with
/// the smallest rounding estimate ε·Σ|terms| is returned, which avoids the
/// cancellation some of them suffer for large parameters.
///
/// Terminating parameter sets are summed exactly for any finite x, and x = 1
/// is accepted when c-a-b > 0 (Gauss summation).
pub fn hyp2f1(a: f64, b: f64, c: f64, x: f64) -> Result<SeriesEval> {
    route(a, b, c, x).map(|r| r.eval)
}

fn route(a: f64, b: f64, c: f64, x: f64) -> Result<Route> {
    if !(a.is_finite() && b.is_finite() && c.is_finite() && x.is_finite()) {
        return Err(invalid("2F1 parameters and argument must be finite"));
    }
    if terminates(a, b) {
        let direct = series(&[a, b], &[c], x, DEFAULT_TERM_BUDGET);
        if x < -DIRECT_RADIUS && direct.is_ok() {
            return best(vec![direct, pfaff(a, b, c, x, true), pfaff(a, b, c, x, false)]);
        }
        return direct;
    }
    if is_nonpositive_integer(c) {
        return Err(Error::Pole(c));
    }
    if x == 0.0 {
        return Ok(Route { eval: SeriesEval::exact(1.0, 1), l1: 1.0 });
    }
    if x == 1.0 {
        let s = c - a - b;
        if s <= 0.0 {
            return Err(invalid(format!("2F1 at x = 1 needs c - a - b > 0, got {s}")));
        }
        let v = gamma_ratio_signed(&[c, s], &[c - a, c - b])?.value();
        return Ok(Route { eval: SeriesEval::exact(v, 0), l1: v.abs() });
    }
    if x > 1.0 {
        return Err(invalid(format!("2F1 argument must be < 1, got {x}")));
    }
    if x.abs() <= DIRECT_RADIUS {
        return series(&[a, b], &[c], x, DEFAULT_TERM_BUDGET);
    }
    let nearby = x.abs() <= ALTERNATIVE_RADIUS;
    if x < 0.0 {
        let mut c_list = vec![pfaff(a, b, c, x, true), pfaff(a, b, c, x, false)];
        if nearby {
            c_list.push(series(&[a, b], &[c], x, DEFAULT_TERM_BUDGET));
        }
        return best(c_list);
    }
    let s = c - a - b;
    if is_integer(s) {
        if !nearby {
            return series(&[a, b], &[c], x, EXTENDED_TERM_BUDGET);
        }
        return best(vec![series(&[a, b], &[c], x, DEFAULT_TERM_BUDGET), euler(a, b, c, x)]);
    }
    let mut c_list = vec![connection(a, b, c, x)];
    if nearby {
        c_list.push(series(&[a, b], &[c], x, DEFAULT_TERM_BUDGET));
        c_list.push(euler(a, b, c, x));
    }
    best(c_list)
}

// (1-x)^-a F(a, c-b; c; x/(x-1)) or (1-x)^-b F(c-a, b; c; x/(x-1))
fn pfaff(a: f64, b: f64, c: f64, x: f64, keep_a: bool) -> Result<Route> {
    let y = x / (x - 1.0);
    if keep_a {
        Ok(route(a, c - b, c, y)?.scaled((1.0 - x).powf(-a)))
    } else {
        Ok(route(c - a, b, c, y)?.scaled((1.0 - x).powf(-b)))
    }
}

// (1-x)^{c-a-b} F(c-a, c-b; c; x)
fn euler(a: f64, b: f64, c: f64, x: f64) -> Result<Route> {
    Ok(series(&[c - a, c - b], &[c], x, DEFAULT_TERM_BUDGET)?.scaled((1.0 - x).powf(c - a - b)))
}

fn connection(a: f64, b: f64, c: f64, x: f64) -> Result<Route> {
    let s = c - a - b;
    let y = 1.0 - x;
    let g1 = gamma_ratio_signed(&[c, s], &[c - a, c - b])?;
    let g2 = gamma_ratio_signed(&[c, -s], &[a, b])?;
    let mut out = Route { eval: SeriesEval::exact(0.0, 0), l1: 0.0 };
    if g1.sign != 0 {
        let f1 = series(&[a, b], &[1.0 - s], y, DEFAULT_TERM_BUDGET)?.scaled(g1.value());
        out = Route { eval: out.eval.plus(f1.eval), l1: out.l1 + f1.l1 };
    }
    if g2.sign != 0 {
        let f2 = series(&[c - a, c - b], &[1.0 + s], y, DEFAULT_TERM_BUDGET)?
            .scaled(g2.value() * y.powf(s));
        out = Route { eval: out.eval.plus(f2.eval), l1: out.l1 + f2.l1 };
    }
    Ok(out)
}

/// ₂F₁(a, b; c; w) for real w > 1 on the principal branch, taken as the limit
/// from the upper half-plane (Im w -> 0+).
///
/// Uses the connection formula in 1/w with (-w)^s = exp(s (ln w - iπ)).
/// When a - b is an integer the two terms are individually singular and
/// [`Error::Degenerate`] is returned.
pub fn hyp2f1_continued(a: f64, b: f64, c: f64, w: f64) -> Result<ComplexValue> {
    if !(w.is_finite() && w > 1.0) {
        return Err(invalid(format!("continued 2F1 needs real w > 1, got {w}")));
    }
    if terminates(a, b) {
        let v = hyp_pfq(&[a, b], &[c], w)?.value;
        return Ok(Complex64::new(v, 0.0));
    }
    if is_nonpositive_integer(c) {
        return Err(Error::Pole(c));
    }
    if is_integer(a - b) {
        return Err(Error::Degenerate(format!(
            "a - b = {} is an integer; the logarithmic case is not supported",
            a - b
        )));
    }
    let inv = 1.0 / w;
    let lw = w.ln();
    let branch_term = |g: SignedLog, s: f64, inner: f64| -> Complex64 {
        if g.sign == 0 {
            return Complex64::new(0.0, 0.0);
        }
        // (-w)^{-s} on the upper side
        let mag = g.log_abs - s * lw;
        Complex64::from_polar(f64::from(g.sign) * mag.exp(), PI * s) * inner
    };

    let g1 = gamma_ratio_signed(&[c, b - a], &[b, c - a])?;
    let g2 = gamma_ratio_signed(&[c, a - b], &[a, c - b])?;
    let f1 = if g1.sign != 0 { hyp2f1(a, a - c + 1.0, a - b + 1.0, inv)?.value } else { 0.0 };
    let f2 = if g2.sign != 0 { hyp2f1(b, b - c + 1.0, b - a + 1.0, inv)?.value } else { 0.0 };
    Ok(branch_term(g1, a, f1) + branch_term(g2, b, f2))
}

/// ₂F₁(a, 1-a; b; 1/2) in closed form:
/// 2^{1-b} √π Γ(b) / (Γ((a+b)/2) Γ((1+b-a)/2)).
pub fn gauss_half(a: f64, b: f64) -> Result<f64> {
    if is_nonpositive_integer(b) {
        return Err(Error::Pole(b));
    }
    let pref = SignedLog {
        log_abs: (1.0 - b) * std::f64::consts::LN_2 + 0.5 * PI.ln(),
        sign: 1,
    };
    let g = gamma_ratio_signed(&[b], &[0.5 * (a + b), 0.5 * (1.0 + b - a)])?;
    Ok(pref.mul(g).value())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn origin_is_one() {
        assert_eq!(hyp2f1(0.3, -1.7, 2.2, 0.0).unwrap().value, 1.0);
    }

    #[test]
    fn logarithm_identity() {
        let v = hyp2f1(1.0, 1.0, 2.0, 0.5).unwrap().value;
        assert!(close(v, 2.0 * 2f64.ln(), 1e-14), "{v}");
    }

    #[test]
    fn arcsine_identity() {
        let v = hyp2f1(0.5, 0.5, 1.5, 0.25).unwrap().value;
        assert!(close(v, 0.5f64.asin() / 0.5, 1e-14), "{v}");
    }

    #[test]
    fn log_identity_on_every_branch_of_the_strategy() {
        // ₂F₁(1,1;2;x) = -ln(1-x)/x, c-a-b = 0 exercises the integer fallback
        for &x in &[-30.0, -3.0, -0.7, -0.2, 0.3, 0.7, 0.95] {
            let v = hyp2f1(1.0, 1.0, 2.0, x).unwrap().value;
            let expect = -(-x).ln_1p() / x;
            assert!(close(v, expect, 1e-12), "x={x}: {v} vs {expect}");
        }
    }

    #[test]
    fn power_identity_through_connection_formula() {
        // ₂F₁(a, b; b; x) = (1-x)^-a
        for &x in &[-12.0, -0.8, 0.6, 0.9, 0.999] {
            let v = hyp2f1(0.37, 1.3, 1.3, x).unwrap().value;
            assert!(close(v, (1.0 - x).powf(-0.37), 1e-12), "x={x}");
        }
    }

    #[test]
    fn gauss_sum_at_unit_argument() {
        let v = hyp2f1(0.3, 0.4, 2.0, 1.0).unwrap().value;
        let g = gamma_ratio_signed(&[2.0, 1.3], &[1.7, 1.6]).unwrap().value();
        assert!(close(v, g, 1e-14));
        assert!(hyp2f1(0.3, 0.4, 0.5, 1.0).is_err());
        assert!(hyp2f1(0.3, 0.4, 2.0, 1.5).is_err());
    }

    #[test]
    fn bottom_pole_is_an_error() {
        assert_eq!(hyp2f1(0.5, 0.5, -1.0, 0.2), Err(Error::Pole(-1.0)));
    }

    #[test]
    fn continued_terminating_polynomial() {
        // ₂F₁(-2, b; c; w) = 1 - 2bw/c + b(b+1)w^2/(c(c+1))
        let (b, c, w) = (0.7, 1.9, 3.5);
        let expect = 1.0 - 2.0 * b * w / c + b * (b + 1.0) * w * w / (c * (c + 1.0));
        let v = hyp2f1_continued(-2.0, b, c, w).unwrap();
        assert!(close(v.re, expect, 1e-14));
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn continued_rejects_degenerate_and_bad_domain() {
        assert!(matches!(hyp2f1_continued(1.0, 1.0, 2.0, 2.0), Err(Error::Degenerate(_))));
        assert!(hyp2f1_continued(0.3, 0.5, 2.0, 0.9).is_err());
    }

    #[test]
    fn continued_power_function() {
        // ₂F₁(a, b; b; w) = (1-w)^-a with 1-w on the lower side of the cut
        let (a, w) = (0.37, 2.6);
        let v = hyp2f1_continued(a, 1.3, 1.3, w).unwrap();
        let expect = Complex64::from_polar((w - 1.0).powf(-a), PI * a);
        assert!((v - expect).norm() < 1e-13, "{v} vs {expect}");
    }

    #[test]
    fn gauss_half_examples() {
        assert!(close(gauss_half(1.0, 2.0).unwrap(), 1.0, 1e-14));
        let v = gauss_half(0.5, 1.5).unwrap();
        assert!(close(v, PI / 4.0 * 2f64.sqrt(), 1e-14));
        let s = hyp2f1(0.3, 0.7, 1.7, 0.5).unwrap().value;
        assert!(close(gauss_half(0.3, 1.7).unwrap(), s, 1e-11));
        assert!(gauss_half(0.3, -2.0).is_err());
    }
}
