//! Hypergeometric series: generalized pFq, Gauss ₂F₁ with its transformations
//! and upper-side continuation, and the two-variable Appell and Horn series.

mod double;
mod gauss;
mod series;

pub use double::{
    appell_f1, appell_f1_at_x1, appell_f1_at_y1, appell_f1_iterated, appell_f3,
    appell_f3_zero_balanced, h2_at_minus1, horn_h2,
};
pub use gauss::{gauss_half, hyp2f1, hyp2f1_continued};
pub use series::{hyp3f2, hyp_pfq, regularized_pfq_limit};

/// Complex result of a continued function.
pub type ComplexValue = num_complex::Complex64;

/// Relative stopping tolerance of single series.
pub const SERIES_TOL: f64 = f64::EPSILON;

/// Default cap on the number of terms of a single series.
pub const DEFAULT_TERM_BUDGET: usize = 100_000;

/// Cap used for slowly convergent sums at unit-adjacent arguments.
pub const EXTENDED_TERM_BUDGET: usize = 2_000_000;

/// A summed series with its truncation diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEval {
    pub value: f64,
    pub terms_used: usize,
    /// Absolute estimate of the neglected tail.
    pub tail_estimate: f64,
    pub converged: bool,
}

impl SeriesEval {
    pub(crate) fn exact(value: f64, terms: usize) -> Self {
        SeriesEval { value, terms_used: terms, tail_estimate: 0.0, converged: true }
    }

    pub(crate) fn scaled(self, factor: f64) -> Self {
        SeriesEval {
            value: self.value * factor,
            tail_estimate: self.tail_estimate * factor.abs(),
            ..self
        }
    }

    pub(crate) fn plus(self, other: SeriesEval) -> Self {
        SeriesEval {
            value: self.value + other.value,
            terms_used: self.terms_used + other.terms_used,
            tail_estimate: self.tail_estimate + other.tail_estimate,
            converged: self.converged && other.converged,
        }
    }
}
