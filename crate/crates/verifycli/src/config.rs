//! Sweep configuration, read from flat `key = value` text.
//!
//! ```text
//! # comments and blank lines are ignored
//! alpha = -0.9, 2.5
//! lambda = 0.1, 0.9
//! n_max = 10
//! samples = 50
//! seed = 42
//! tol = 1e-7
//! kinds = full_range, lower_tail
//! ```
//!
//! Every key is optional. Ranges are `lo, hi` with `lo <= hi`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::{CliError, Result};

/// Environment variable overriding the default comparison tolerance.
pub const TOL_ENV: &str = "JACINT_TOL";

pub const DEFAULT_TOL: f64 = 1e-7;

/// Lower end of z for the series-oracle comparisons.
pub const SERIES_Z_MIN: f64 = 3.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    fn parse(key: &str, s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [lo, hi] = parts[..] else {
            return Err(CliError::Config(format!("{key}: expected `lo, hi`, got `{s}`")));
        };
        let lo: f64 = parse_num(key, lo)?;
        let hi: f64 = parse_num(key, hi)?;
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(CliError::Config(format!("{key}: need finite lo <= hi, got [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A family of sweep comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    /// Full-range closed form against quadrature.
    FullRange,
    /// Full-range closed form against the moment series, z >= 3.5.
    FullRangeSeries,
    UpperTail,
    ZeroSingular,
    /// Compared with the phase-adjusted real-kernel quadrature.
    LowerTail,
    /// Gegenbauer index a = α + 1/2 drawn from the α range.
    GegenbauerZero,
    RemarkWeight,
}

impl SweepKind {
    pub const ALL: [SweepKind; 7] = [
        SweepKind::FullRange,
        SweepKind::FullRangeSeries,
        SweepKind::UpperTail,
        SweepKind::ZeroSingular,
        SweepKind::LowerTail,
        SweepKind::GegenbauerZero,
        SweepKind::RemarkWeight,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepKind::FullRange => "full_range",
            SweepKind::FullRangeSeries => "full_range_series",
            SweepKind::UpperTail => "upper_tail",
            SweepKind::ZeroSingular => "zero_singular",
            SweepKind::LowerTail => "lower_tail",
            SweepKind::GegenbauerZero => "gegenbauer_zero",
            SweepKind::RemarkWeight => "remark_weight",
        }
    }

    // λ = 1 is allowed only for the full-range integral
    fn allows_lambda_one(self) -> bool {
        matches!(self, SweepKind::FullRange | SweepKind::FullRangeSeries)
    }
}

impl FromStr for SweepKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        SweepKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| CliError::Config(format!("unknown kind `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub alpha_range: Interval,
    pub beta_range: Interval,
    pub lambda_range: Interval,
    pub x_range: Interval,
    pub z_range: Interval,
    pub n_max: u32,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub kinds: Vec<SweepKind>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            alpha_range: Interval::new(-0.9, 2.5),
            beta_range: Interval::new(-0.9, 2.5),
            lambda_range: Interval::new(0.1, 0.9),
            x_range: Interval::new(-0.9, 0.9),
            z_range: Interval::new(1.5, 8.0),
            n_max: 10,
            samples: 50,
            seed: 42,
            tol: default_tol(),
            kinds: SweepKind::ALL.to_vec(),
        }
    }
}

/// 1e-7 unless overridden by `JACINT_TOL`.
pub fn default_tol() -> f64 {
    std::env::var(TOL_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|t| *t > 0.0)
        .unwrap_or(DEFAULT_TOL)
}

fn parse_num<T: FromStr>(key: &str, s: &str) -> Result<T> {
    s.trim().parse().map_err(|_| CliError::Config(format!("{key}: cannot parse `{s}`")))
}

impl SweepConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = SweepConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Config(format!("line {}: expected key = value", lineno + 1)));
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "alpha" => cfg.alpha_range = Interval::parse(key, value)?,
                "beta" => cfg.beta_range = Interval::parse(key, value)?,
                "lambda" => cfg.lambda_range = Interval::parse(key, value)?,
                "x" => cfg.x_range = Interval::parse(key, value)?,
                "z" => cfg.z_range = Interval::parse(key, value)?,
                "n_max" => cfg.n_max = parse_num(key, value)?,
                "samples" => cfg.samples = parse_num(key, value)?,
                "seed" => cfg.seed = parse_num(key, value)?,
                "tol" => cfg.tol = parse_num(key, value)?,
                "kinds" => {
                    cfg.kinds = value
                        .split(',')
                        .map(|s| s.trim().parse())
                        .collect::<Result<Vec<_>>>()?;
                }
                other => return Err(CliError::Config(format!("line {}: unknown key `{other}`", lineno + 1))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        SweepConfig::parse(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if self.samples == 0 {
            return bad("samples must be >= 1".into());
        }
        if !(self.tol > 0.0) {
            return bad(format!("tol must be positive, got {}", self.tol));
        }
        if self.kinds.is_empty() {
            return bad("kinds must not be empty".into());
        }
        if !(self.alpha_range.lo > -1.0 && self.beta_range.lo > -1.0) {
            return bad(format!(
                "alpha and beta must exceed -1, got {} and {}",
                self.alpha_range, self.beta_range
            ));
        }
        let lam = self.lambda_range;
        if !(lam.lo > 0.0 && lam.hi <= 1.0) {
            return bad(format!("lambda must lie in (0, 1], got {lam}"));
        }
        if lam.hi >= 1.0 && self.kinds.iter().any(|k| !k.allows_lambda_one()) {
            return bad(format!("lambda range {lam} reaches 1, allowed only for full_range kinds"));
        }
        if !(self.x_range.lo > -1.0 && self.x_range.hi < 1.0) {
            return bad(format!("x must lie in (-1, 1), got {}", self.x_range));
        }
        if !(self.z_range.lo > 1.0) {
            return bad(format!("z must exceed 1, got {}", self.z_range));
        }
        if self.kinds.contains(&SweepKind::FullRangeSeries) && self.z_range.hi <= SERIES_Z_MIN {
            return bad(format!("full_range_series needs z above {SERIES_Z_MIN}, got {}", self.z_range));
        }
        if self.kinds.contains(&SweepKind::RemarkWeight) && self.beta_range.hi - lam.lo <= -0.9 {
            return bad("remark_weight needs beta - lambda > -0.9 to be attainable".into());
        }
        if self.kinds.contains(&SweepKind::GegenbauerZero) && self.alpha_range.hi <= -0.5 + 1e-3 {
            return bad("gegenbauer_zero needs a = alpha + 1/2 > 0 to be attainable".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_text_gives_defaults() {
        let cfg = SweepConfig::parse("# nothing\n\n").unwrap();
        assert_eq!(cfg.samples, 50);
        assert_eq!(cfg.seed, 42);
        assert_eq!(cfg.lambda_range, Interval::new(0.1, 0.9));
        assert_eq!(cfg.kinds.len(), 7);
    }

    #[test]
    fn keys_override() {
        let cfg = SweepConfig::parse("samples = 7\nseed=9 # trailing\nz = 2, 4\nkinds = upper_tail").unwrap();
        assert_eq!((cfg.samples, cfg.seed), (7, 9));
        assert_eq!(cfg.z_range, Interval::new(2.0, 4.0));
        assert_eq!(cfg.kinds, vec![SweepKind::UpperTail]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(SweepConfig::parse("samples = 0").is_err());
        assert!(SweepConfig::parse("lambda = 0.5, 1.0").is_err());
        assert!(SweepConfig::parse("lambda = 0.5, 1.0\nkinds = full_range").is_ok());
        assert!(SweepConfig::parse("x = -1, 0.5").is_err());
        assert!(SweepConfig::parse("colour = red").is_err());
        assert!(SweepConfig::parse("alpha = 2, 1").is_err());
        assert!(SweepConfig::parse("kinds = nope").is_err());
        assert!(SweepConfig::parse("just text").is_err());
    }
}
