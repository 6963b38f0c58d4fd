use crate::error::{invalid, Error, Result};
use crate::gammacore::{gamma_ratio_signed, is_integer, is_nonpositive_integer, SignedLog};

use super::gauss::hyp2f1;
use super::series::{hyp3f2, hyp_pfq};
use super::{SeriesEval, DEFAULT_TERM_BUDGET, SERIES_TOL};

const DOUBLE_TOL: f64 = 1e-13;
const FIRST_SIDE: usize = 8;
const MAX_SIDE: usize = 2048;

fn degree_of(params: &[f64]) -> Option<usize> {
    params
        .iter()
        .filter(|&&p| is_nonpositive_integer(p))
        .map(|&p| (-p.round()) as usize + 1)
        .min()
}

// Sum of t(m, k) over m < rows, k < cols where t(0,0) = 1,
// t(m+1, 0) = t(m, 0) * down(m) and t(m, k+1) = t(m, k) * right(m, k).
fn rectangle<D, R>(rows: usize, cols: usize, down: &D, right: &R) -> f64
where
    D: Fn(usize) -> f64,
    R: Fn(usize, usize) -> f64,
{
    let mut sum = 0.0;
    let mut lead = 1.0;
    for m in 0..rows {
        if m > 0 {
            lead *= down(m - 1);
        }
        if lead == 0.0 {
            break;
        }
        let mut t = lead;
        sum += t;
        for k in 0..cols.saturating_sub(1) {
            t *= right(m, k);
            if t == 0.0 {
                break;
            }
            sum += t;
        }
    }
    sum
}

// Square truncation with doubling side length. `row_limit` and `col_limit`
// are the index counts of terminating directions.
fn double_series<D, R>(
    row_limit: Option<usize>,
    col_limit: Option<usize>,
    down: D,
    right: R,
) -> Result<SeriesEval>
where
    D: Fn(usize) -> f64,
    R: Fn(usize, usize) -> f64,
{
    let mut prev: Option<f64> = None;
    let mut side = FIRST_SIDE;
    while side <= MAX_SIDE {
        let rows = row_limit.map_or(side, |r| r.min(side));
        let cols = col_limit.map_or(side, |c| c.min(side));
        let s = rectangle(rows, cols, &down, &right);
        if !s.is_finite() {
            return Err(Error::NotConverged { what: "double series", steps: rows * cols });
        }
        let complete = row_limit.is_some_and(|r| r <= side) && col_limit.is_some_and(|c| c <= side);
        if complete {
            return Ok(SeriesEval::exact(s, rows * cols));
        }
        if let Some(p) = prev {
            let diff = (s - p).abs();
            if diff <= DOUBLE_TOL * s.abs() {
                return Ok(SeriesEval {
                    value: s,
                    terms_used: rows * cols,
                    tail_estimate: diff,
                    converged: true,
                });
            }
        }
        prev = Some(s);
        side *= 2;
    }
    Err(Error::NotConverged { what: "double series", steps: MAX_SIDE * MAX_SIDE })
}

fn check_finite(values: &[f64]) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(invalid("parameters and arguments must be finite"))
    }
}

fn check_bottom(c: f64) -> Result<()> {
    if is_nonpositive_integer(c) {
        Err(Error::Pole(c))
    } else {
        Ok(())
    }
}

/// Appell F₁(a; b1, b2; c; x, y) = Σ (a)_{m+k} (b1)_m (b2)_k / (c)_{m+k} x^m y^k / (m! k!).
pub fn appell_f1(a: f64, b1: f64, b2: f64, c: f64, x: f64, y: f64) -> Result<SeriesEval> {
    check_finite(&[a, b1, b2, c, x, y])?;
    check_bottom(c)?;
    let rows = degree_of(&[a, b1]);
    let cols = degree_of(&[a, b2]);
    if (rows.is_none() && x.abs() >= 1.0) || (cols.is_none() && y.abs() >= 1.0) {
        return Err(invalid(format!("F1 needs |x| < 1 and |y| < 1, got ({x}, {y})")));
    }
    double_series(
        rows,
        cols,
        |m| {
            let m = m as f64;
            (a + m) * (b1 + m) / ((c + m) * (m + 1.0)) * x
        },
        |m, k| {
            let (m, k) = (m as f64, k as f64);
            (a + m + k) * (b2 + k) / ((c + m + k) * (k + 1.0)) * y
        },
    )
}

/// F₁ summed over m with the inner k-sum collapsed to ₂F₁(a+m, b2; c+m; y).
///
/// The inner function goes through the ₂F₁ transformations, so y may sit
/// close to 1.
pub fn appell_f1_iterated(a: f64, b1: f64, b2: f64, c: f64, x: f64, y: f64) -> Result<SeriesEval> {
    check_finite(&[a, b1, b2, c, x, y])?;
    check_bottom(c)?;
    let terminating = degree_of(&[a, b1]);
    if terminating.is_none() && x.abs() >= 1.0 {
        return Err(invalid(format!("F1 needs |x| < 1, got {x}")));
    }
    let limit = terminating.unwrap_or(DEFAULT_TERM_BUDGET);
    let mut coef = 1.0;
    let mut sum = 0.0;
    let mut quiet = 0;
    for m in 0..limit {
        let mf = m as f64;
        if m > 0 {
            coef *= (a + mf - 1.0) * (b1 + mf - 1.0) / ((c + mf - 1.0) * mf) * x;
        }
        if coef == 0.0 {
            return Ok(SeriesEval::exact(sum, m));
        }
        let term = coef * hyp2f1(a + mf, b2, c + mf, y)?.value;
        sum += term;
        if terminating.is_some() {
            continue;
        }
        quiet = if term.abs() <= SERIES_TOL * sum.abs() { quiet + 1 } else { 0 };
        if quiet >= 3 {
            return Ok(SeriesEval { value: sum, terms_used: m + 1, tail_estimate: term.abs(), converged: true });
        }
    }
    match terminating {
        Some(d) => Ok(SeriesEval::exact(sum, d)),
        None => Err(Error::NotConverged { what: "iterated F1", steps: limit }),
    }
}

/// F₁(a; b1, b2; c; x, 1) = Γ(c)Γ(c-a-b2) / (Γ(c-a)Γ(c-b2)) · ₂F₁(a, b1; c-b2; x).
pub fn appell_f1_at_y1(a: f64, b1: f64, b2: f64, c: f64, x: f64) -> Result<f64> {
    check_finite(&[a, b1, b2, c, x])?;
    let excess = c - a - b2;
    if excess <= 0.0 {
        return Err(invalid(format!("F1 at y = 1 needs c - a - b2 > 0, got {excess}")));
    }
    if x.abs() >= 1.0 {
        return Err(invalid(format!("F1 at y = 1 needs |x| < 1, got {x}")));
    }
    check_bottom(c)?;
    let g = gamma_ratio_signed(&[c, excess], &[c - a, c - b2])?;
    if g.sign == 0 {
        return Ok(0.0);
    }
    Ok(g.value() * hyp2f1(a, b1, c - b2, x)?.value)
}

/// F₁(a; b1, b2; c; 1, y), the mirror of [`appell_f1_at_y1`].
pub fn appell_f1_at_x1(a: f64, b1: f64, b2: f64, c: f64, y: f64) -> Result<f64> {
    appell_f1_at_y1(a, b2, b1, c, y)
}

/// Appell F₃(a, a2, b, b2; c; x, y) = Σ (a)_m (a2)_k (b)_m (b2)_k / (c)_{m+k} x^m y^k / (m! k!).
pub fn appell_f3(a: f64, a2: f64, b: f64, b2: f64, c: f64, x: f64, y: f64) -> Result<SeriesEval> {
    check_finite(&[a, a2, b, b2, c, x, y])?;
    check_bottom(c)?;
    let rows = degree_of(&[a, b]);
    let cols = degree_of(&[a2, b2]);
    if (rows.is_none() && x.abs() >= 1.0) || (cols.is_none() && y.abs() >= 1.0) {
        return Err(invalid(format!("F3 needs |x| < 1 and |y| < 1, got ({x}, {y})")));
    }
    double_series(
        rows,
        cols,
        |m| {
            let m = m as f64;
            (a + m) * (b + m) / ((c + m) * (m + 1.0)) * x
        },
        |m, k| {
            let (m, k) = (m as f64, k as f64);
            (a2 + k) * (b2 + k) / ((c + m + k) * (k + 1.0)) * y
        },
    )
}

/// The zero-balanced F₃ with upper parameters (a, b, c, d) on the paired
/// arguments ((1-x)/2, (x-1)/(x+1)), where the x-pair is (a, c) and the
/// y-pair is (b, d):
///
/// F₃ = ((1+x)/2)^b · ₂F₁(a+b, b+c; a+b+c+d; (1-x)/2).
pub fn appell_f3_zero_balanced(a: f64, b: f64, c: f64, d: f64, x: f64) -> Result<f64> {
    check_finite(&[a, b, c, d, x])?;
    if !(x > -1.0 && x < 1.0) {
        return Err(invalid(format!("zero-balanced F3 needs -1 < x < 1, got {x}")));
    }
    let f = hyp2f1(a + b, b + c, a + b + c + d, 0.5 * (1.0 - x))?;
    Ok((0.5 * (1.0 + x)).powf(b) * f.value)
}

/// Horn H₂(a0; b1, b2, c1; c2; x, y) =
/// Σ (a0)_{m-k} (b1)_m (b2)_k (c1)_k / (c2)_m x^m y^k / (m! k!).
///
/// Negative Pochhammer indices follow (a)_{-j} = (-1)^j / (1-a)_j.
pub fn horn_h2(a0: f64, b1: f64, b2: f64, c1: f64, c2: f64, x: f64, y: f64) -> Result<SeriesEval> {
    check_finite(&[a0, b1, b2, c1, c2, x, y])?;
    check_bottom(c2)?;
    let rows = degree_of(&[b1]);
    let cols = degree_of(&[b2, c1]);
    if rows.is_none() && x.abs() >= 1.0 {
        return Err(invalid(format!("H2 needs |x| < 1, got {x}")));
    }
    if cols.is_none() && y.abs() >= 1.0 {
        return Err(invalid(format!("H2 needs |y| < 1 unless the k-sum terminates, got {y}")));
    }
    if is_integer(a0) && a0 > 0.0 && cols.is_none_or(|c| c > a0.round() as usize) {
        // (a0)_{m-k} is infinite once k - m >= a0
        return Err(Error::Pole(1.0 - a0));
    }
    double_series(
        rows,
        cols,
        |m| {
            let m = m as f64;
            (a0 + m) * (b1 + m) / ((c2 + m) * (m + 1.0)) * x
        },
        |m, k| {
            let (m, k) = (m as f64, k as f64);
            (b2 + k) * (c1 + k) / ((a0 + m - k - 1.0) * (k + 1.0)) * y
        },
    )
}

/// H₂(a0; b1, b2, c1; c2; x, -1) as a two-term combination of ₃F₂ values.
///
/// Requires b1 - a0 - b2 - c1 + 1 > 0 and 0 <= x < 1.
pub fn h2_at_minus1(a0: f64, b1: f64, b2: f64, c1: f64, c2: f64, x: f64) -> Result<f64> {
    check_finite(&[a0, b1, b2, c1, c2, x])?;
    let s = 1.0 - a0 - b2 - c1;
    if b1 + s <= 0.0 {
        return Err(invalid(format!("H2(x, -1) needs b1 - a0 - b2 - c1 + 1 > 0, got {}", b1 + s)));
    }
    if !(0.0..1.0).contains(&x) {
        return Err(invalid(format!("H2(x, -1) needs 0 <= x < 1, got {x}")));
    }

    let g1 = gamma_ratio_signed(&[1.0 - a0, s], &[1.0 - a0 - b2, 1.0 - a0 - c1])?;
    let mut total = 0.0;
    if g1.sign != 0 {
        total += g1.value() * hyp3f2(a0 + b2, a0 + c1, b1, a0 + b2 + c1, c2, x)?.value;
    }

    let g2 = gamma_ratio_signed(&[1.0 - a0, -s, c2, b1 + s], &[b2, c1, b1, c2 + s])?;
    if g2.sign != 0 && x > 0.0 {
        let f = hyp_pfq(&[1.0 - b2, 1.0 - c1, b1 + s], &[1.0 + s, c2 + s], x)?.value;
        let power = SignedLog { log_abs: s * x.ln(), sign: 1 };
        total += g2.mul(power).value() * f;
    } else if g2.sign != 0 && s < 0.0 {
        return Err(invalid("H2(0, -1) second term is singular for b2 + c1 + a0 > 1"));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn f1_origin_and_collapse() {
        assert_eq!(appell_f1(0.3, 0.2, 0.4, 2.0, 0.0, 0.0).unwrap().value, 1.0);
        let v = appell_f1(0.3, 0.0, 0.4, 2.0, 0.35, 0.5).unwrap().value;
        let f = hyp2f1(0.3, 0.4, 2.0, 0.5).unwrap().value;
        assert!(close(v, f, 1e-12));
    }

    #[test]
    fn f1_rectangle_matches_reordering() {
        let v = appell_f1(0.3, 0.2, 0.4, 2.0, 0.35, 0.5).unwrap().value;
        let w = appell_f1_iterated(0.3, 0.2, 0.4, 2.0, 0.35, 0.5).unwrap().value;
        assert!(close(v, w, 1e-12), "{v} vs {w}");
    }

    #[test]
    fn f1_rejects_outside_unit_square() {
        assert!(appell_f1(0.3, 0.2, 0.4, 2.0, 1.2, 0.5).is_err());
    }

    #[test]
    fn f1_at_unit_argument() {
        let gauss = gamma_ratio_signed(&[2.0, 1.3], &[1.7, 1.6]).unwrap().value();
        assert!(close(appell_f1_at_y1(0.3, 0.2, 0.4, 2.0, 0.0).unwrap(), gauss, 1e-14));
        assert!(close(appell_f1_at_y1(0.3, 0.0, 0.4, 2.0, 0.6).unwrap(), gauss, 1e-14));

        let limit = appell_f1_at_y1(0.3, 0.2, 0.4, 2.0, 0.35).unwrap();
        let abel = appell_f1_iterated(0.3, 0.2, 0.4, 2.0, 0.35, 1.0 - 1e-7).unwrap().value;
        assert!(close(limit, abel, 1e-6), "{limit} vs {abel}");

        let mirror = appell_f1_at_x1(0.3, 0.4, 0.2, 2.0, 0.35).unwrap();
        assert!(close(mirror, limit, 1e-15));
        assert!(appell_f1_at_y1(0.3, 0.2, 1.9, 2.0, 0.35).is_err());
    }

    #[test]
    fn f3_zero_balanced_matches_double_sum() {
        let (a, b, c, d, x) = (-2.0, 0.4, 0.7, 1.1, 0.3);
        let closed = appell_f3_zero_balanced(a, b, c, d, x).unwrap();
        let direct =
            appell_f3(a, b, c, d, a + b + c + d, 0.5 * (1.0 - x), (x - 1.0) / (x + 1.0)).unwrap();
        assert!(close(closed, direct.value, 1e-12), "{closed} vs {}", direct.value);
        // b = 0 drops the second argument
        let v = appell_f3_zero_balanced(0.3, 0.0, 0.7, 1.1, 0.2).unwrap();
        assert!(close(v, hyp2f1(0.3, 0.7, 2.1, 0.4).unwrap().value, 1e-14));
        let near = appell_f3_zero_balanced(0.3, 0.4, 0.7, 1.1, 1.0 - 1e-12).unwrap();
        assert!(close(near, 1.0, 1e-10));
    }

    #[test]
    fn h2_origin_and_collapse() {
        assert_eq!(horn_h2(1.2, 0.5, 0.3, 0.3, 2.1, 0.0, 0.0).unwrap().value, 1.0);
        let v = horn_h2(1.2, 0.5, 0.0, 0.3, 2.1, 0.4, 0.7).unwrap().value;
        assert!(close(v, hyp2f1(1.2, 0.5, 2.1, 0.4).unwrap().value, 1e-13));
    }

    #[test]
    fn h2_at_minus_one_two_routes() {
        let direct = horn_h2(1.2, 0.5, -2.0, 0.3, 2.1, 0.4, -1.0).unwrap().value;
        let closed = h2_at_minus1(1.2, 0.5, -2.0, 0.3, 2.1, 0.4).unwrap();
        assert!(close(closed, direct, 1e-12), "{closed} vs {direct}");
        // x = 0 leaves the k-sum alone
        let k_sum: f64 = (0..=2)
            .map(|k| {
                let mut t = 1.0;
                for j in 0..k {
                    let j = j as f64;
                    t *= (-2.0 + j) * (0.3 + j) / ((1.0 - 1.2 + j) * (j + 1.0));
                }
                t
            })
            .sum();
        assert!(close(h2_at_minus1(1.2, 0.5, -2.0, 0.3, 2.1, 0.0).unwrap(), k_sum, 1e-14));
        assert!(h2_at_minus1(1.2, 0.5, 0.4, 0.3, 2.1, -0.2).is_err());
        assert!(h2_at_minus1(1.2, 0.1, 0.4, 0.3, 2.1, 0.2).is_err());
    }

    #[test]
    fn h2_integer_a0_pole() {
        assert!(horn_h2(1.0, 0.5, 0.3, 0.3, 2.1, 0.4, 0.5).is_err());
    }
}
