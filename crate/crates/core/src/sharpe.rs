//! Arithmetic and geometric Sharpe ratios.
//!
//! For two period returns `r₁, r₂` (net of the risk-free rate) the ratio of
//! the geometric to the arithmetic Sharpe ratio is `G = 2√(r₁r₂)/(r₁+r₂)`:
//! the volatility cancels and `G` equals the first antieigenvalue of
//! `diag(r₁, r₂)`.

use std::io::{BufRead, BufReader, Read};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::par;
use crate::trig::{mu1_closed, SpdMatrix, TrigError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SharpeError {
    #[error("parse error at row {row}: {message}")]
    ParseError { row: u64, message: String },
    #[error("return series is empty")]
    EmptySeries,
    #[error("need at least {needed} returns, got {got}")]
    SeriesTooShort { needed: usize, got: usize },
    #[error("returns have zero volatility")]
    ZeroVolatility,
    #[error("net return {0} is not positive; geometric mean undefined")]
    NonPositiveReturn(f64),
    #[error("non-finite input {0}")]
    NonFinite(f64),
    #[error(transparent)]
    Trig(#[from] TrigError),
}

impl SharpeError {
    pub fn is_numerical(&self) -> bool {
        matches!(self, SharpeError::Trig(e) if e.is_numerical())
    }
}

/// Ordered per-period simple returns (0.05 = 5%).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReturnSeries {
    pub labels: Vec<String>,
    pub returns: Vec<f64>,
}

impl ReturnSeries {
    /// Labels default to 1-based period numbers.
    pub fn from_returns(returns: Vec<f64>) -> Self {
        let labels = (1..=returns.len()).map(|i| i.to_string()).collect();
        ReturnSeries { labels, returns }
    }

    pub fn len(&self) -> usize {
        self.returns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.returns.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    /// One return per line.
    Plain,
    /// `label,return` rows.
    Labeled,
    /// Per-row: one field is plain, two are labeled.
    Auto,
}

/// Reads a return series; `#` lines and blank lines are skipped. Rows are
/// numbered from 1 by physical line.
pub fn ingest_returns<R: Read>(source: R, format: InputFormat) -> Result<ReturnSeries, SharpeError> {
    let mut labels = Vec::new();
    let mut returns = Vec::new();
    for (idx, line) in BufReader::new(source).lines().enumerate() {
        let row = idx as u64 + 1;
        let bad = |message: String| SharpeError::ParseError { row, message };
        let line = line.map_err(|e| bad(e.to_string()))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let (label, value) = match (format, fields.as_slice()) {
            (InputFormat::Plain | InputFormat::Auto, [v]) => {
                ((returns.len() + 1).to_string(), *v)
            }
            (InputFormat::Labeled | InputFormat::Auto, [l, v]) => (l.to_string(), *v),
            (_, f) => return Err(bad(format!("unexpected number of fields ({})", f.len()))),
        };
        let value: f64 = value
            .parse()
            .map_err(|_| bad(format!("not a number: {value:?}")))?;
        if !value.is_finite() {
            return Err(bad(format!("non-finite return {value}")));
        }
        labels.push(label);
        returns.push(value);
    }
    if returns.is_empty() {
        return Err(SharpeError::EmptySeries);
    }
    Ok(ReturnSeries { labels, returns })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SigmaConvention {
    /// Divide by `N − 1`.
    Sample,
    /// Divide by `N`.
    #[default]
    Population,
}

/// Standard deviation; `None` if the values are (numerically) constant.
pub fn stddev(values: &[f64], convention: SigmaConvention) -> Option<f64> {
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let ss: f64 = values.iter().map(|r| (r - mean) * (r - mean)).sum();
    let denom = match convention {
        SigmaConvention::Sample => n.checked_sub(1)?,
        SigmaConvention::Population => n,
    };
    if denom == 0 {
        return None;
    }
    let sigma = (ss / denom as f64).sqrt();
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    (sigma > 64.0 * f64::EPSILON * scale).then_some(sigma)
}

/// `(mean − rf) / σ`.
pub fn sharpe(
    series: &ReturnSeries,
    rf: f64,
    convention: SigmaConvention,
) -> Result<f64, SharpeError> {
    if series.len() < 2 {
        return Err(SharpeError::SeriesTooShort {
            needed: 2,
            got: series.len(),
        });
    }
    let sigma = stddev(&series.returns, convention).ok_or(SharpeError::ZeroVolatility)?;
    let mean = series.returns.iter().sum::<f64>() / series.len() as f64;
    Ok((mean - rf) / sigma)
}

/// `2√(r₁r₂)/(r₁+r₂)`.
pub fn gm_am_ratio(r1: f64, r2: f64) -> Result<f64, SharpeError> {
    for r in [r1, r2] {
        if !r.is_finite() {
            return Err(SharpeError::NonFinite(r));
        }
        if r <= 0.0 {
            return Err(SharpeError::NonPositiveReturn(r));
        }
    }
    // rounding may not push the AM–GM ratio above 1
    Ok((2.0 * (r1 * r2).sqrt() / (r1 + r2)).min(1.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharpeReport {
    pub r1: f64,
    pub r2: f64,
    pub rf: f64,
    pub sigma_convention: SigmaConvention,
    pub sigma: f64,
    /// `(r₁′+r₂′)/(2σ)`.
    pub s_am: f64,
    /// `√(r₁′r₂′)/σ`.
    pub s_gm: f64,
    /// `S_GM / S_AM`.
    pub g_ratio: f64,
    /// `μ₁` of `diag(r₁′, r₂′)`.
    pub mu1_crosscheck: f64,
}

/// Two-period arithmetic/geometric Sharpe analysis with `r′ = r − rf`.
pub fn two_period_report(
    r1: f64,
    r2: f64,
    rf: f64,
    convention: SigmaConvention,
) -> Result<SharpeReport, SharpeError> {
    for v in [r1, r2, rf] {
        if !v.is_finite() {
            return Err(SharpeError::NonFinite(v));
        }
    }
    let (n1, n2) = (r1 - rf, r2 - rf);
    for n in [n1, n2] {
        if n <= 0.0 {
            return Err(SharpeError::NonPositiveReturn(n));
        }
    }
    let sigma = stddev(&[r1, r2], convention).ok_or(SharpeError::ZeroVolatility)?;
    let s_am = (n1 + n2) / (2.0 * sigma);
    let s_gm = n1.sqrt() * n2.sqrt() / sigma;
    let diag = SpdMatrix::diagonal(&[n1, n2])?;
    Ok(SharpeReport {
        r1,
        r2,
        rf,
        sigma_convention: convention,
        sigma,
        s_am,
        s_gm,
        g_ratio: s_gm / s_am,
        mu1_crosscheck: mu1_closed(diag.spectral()),
    })
}

/// `G` over one consecutive pair; `g` is `None` when a net return is not positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RollingEntry {
    pub from: String,
    pub to: String,
    pub g: Option<f64>,
    pub skipped: bool,
}

pub fn rolling_gm_am(series: &ReturnSeries, rf: f64) -> Result<Vec<RollingEntry>, SharpeError> {
    if series.len() < 2 {
        return Err(SharpeError::SeriesTooShort {
            needed: 2,
            got: series.len(),
        });
    }
    Ok(par::map_range(series.len() - 1, |k| {
        let g = gm_am_ratio(series.returns[k] - rf, series.returns[k + 1] - rf).ok();
        RollingEntry {
            from: series.labels[k].clone(),
            to: series.labels[k + 1].clone(),
            g,
            skipped: g.is_none(),
        }
    }))
}
