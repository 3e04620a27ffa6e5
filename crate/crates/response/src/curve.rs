//! The measured response curve and its serialized forms.

use crate::ResponseError;
use serde::{Deserialize, Serialize};

/// Earliest lag bin, milliseconds relative to the event millisecond.
pub const LAG_MIN: i32 = -30;
/// Latest lag bin.
pub const LAG_MAX: i32 = 30;
/// Number of lag bins.
pub const N_LAGS: usize = (LAG_MAX - LAG_MIN + 1) as usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResponseKind {
    /// Net shares added to bid plus removed from ask, per event.
    Liquidity,
    /// Signed traded-price change in 10^-4 dollars, per event.
    Trade,
    /// Baseline-subtracted traded volume in shares, per event.
    Volume,
}

/// Mean signed response per event at each lag, with bootstrap 1-sigma
/// uncertainties. Bin `k` holds activity stamped in `event_ms + k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseCurve {
    pub kind: ResponseKind,
    pub values: [f64; N_LAGS],
    pub sigmas: [f64; N_LAGS],
    pub n_events: usize,
}

impl ResponseCurve {
    pub fn empty(kind: ResponseKind) -> Self {
        Self {
            kind,
            values: [0.0; N_LAGS],
            sigmas: [0.0; N_LAGS],
            n_events: 0,
        }
    }

    /// A day with zero usable events is kept as an explicit empty record.
    pub fn is_empty(&self) -> bool {
        self.n_events == 0
    }

    pub fn index_of(lag_ms: i32) -> usize {
        debug_assert!((LAG_MIN..=LAG_MAX).contains(&lag_ms));
        (lag_ms - LAG_MIN) as usize
    }

    pub fn lag_of(index: usize) -> i32 {
        LAG_MIN + index as i32
    }

    pub fn value(&self, lag_ms: i32) -> f64 {
        self.values[Self::index_of(lag_ms)]
    }

    pub fn sigma(&self, lag_ms: i32) -> f64 {
        self.sigmas[Self::index_of(lag_ms)]
    }

    pub fn lags() -> impl Iterator<Item = i32> {
        LAG_MIN..=LAG_MAX
    }
}

/// Sidecar metadata written next to every curve CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveMeta {
    pub kind: ResponseKind,
    pub n_events: usize,
    pub seed: u64,
    pub n_resamples: usize,
    pub skipped_no_reference: usize,
    pub orphan_messages: u64,
    pub empty: bool,
}

pub const CURVE_CSV_HEADER: &str = "lag_ms,value,sigma";

/// One row per lag bin; `{}` formatting keeps f64 round-trips exact.
pub fn write_curve_csv(curve: &ResponseCurve) -> String {
    let mut out = String::with_capacity(N_LAGS * 24 + 24);
    out.push_str(CURVE_CSV_HEADER);
    out.push('\n');
    for k in ResponseCurve::lags() {
        out.push_str(&format!("{},{},{}\n", k, curve.value(k), curve.sigma(k)));
    }
    out
}

/// Parse a curve CSV; `kind` and `n_events` come from the sidecar.
pub fn read_curve_csv(
    text: &str,
    kind: ResponseKind,
    n_events: usize,
) -> Result<ResponseCurve, ResponseError> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim_end() == CURVE_CSV_HEADER => {}
        other => {
            return Err(ResponseError::BadCurveFile(format!(
                "expected header {CURVE_CSV_HEADER:?}, got {other:?}"
            )))
        }
    }
    let mut curve = ResponseCurve::empty(kind);
    curve.n_events = n_events;
    let mut seen = 0usize;
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let parse = |field: Option<&str>, what: &str| -> Result<f64, ResponseError> {
            field
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| ResponseError::BadCurveFile(format!("row {}: bad {what}", i + 2)))
        };
        let lag = parse(parts.next(), "lag")? as i32;
        if !(LAG_MIN..=LAG_MAX).contains(&lag) {
            return Err(ResponseError::BadCurveFile(format!(
                "row {}: lag {lag} out of range",
                i + 2
            )));
        }
        let idx = ResponseCurve::index_of(lag);
        curve.values[idx] = parse(parts.next(), "value")?;
        curve.sigmas[idx] = parse(parts.next(), "sigma")?;
        seen += 1;
    }
    if seen != N_LAGS {
        return Err(ResponseError::BadCurveFile(format!(
            "expected {N_LAGS} rows, got {seen}"
        )));
    }
    Ok(curve)
}
