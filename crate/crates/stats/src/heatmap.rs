//! Volume-normalized day-by-lag matrices.

use crate::integrate::total_response;
use crate::{StatsError, DEFAULT_TF_MS};
use lagline_response::{ResponseCurve, ResponseKind, N_LAGS};

/// Date-ordered curves of one kind.
#[derive(Debug, Clone)]
pub struct DailyCurveSet {
    pub kind: ResponseKind,
    entries: Vec<(String, ResponseCurve)>,
}

impl DailyCurveSet {
    pub fn new(
        kind: ResponseKind,
        entries: Vec<(String, ResponseCurve)>,
    ) -> Result<Self, StatsError> {
        for pair in entries.windows(2) {
            if pair[1].0 <= pair[0].0 {
                return Err(StatsError::UnsortedDates(
                    pair[0].0.clone(),
                    pair[1].0.clone(),
                ));
            }
        }
        if entries.iter().any(|(_, c)| c.kind != kind) {
            return Err(StatsError::MixedKinds);
        }
        Ok(Self { kind, entries })
    }

    pub fn entries(&self) -> &[(String, ResponseCurve)] {
        &self.entries
    }

    pub fn curves(&self) -> impl Iterator<Item = &ResponseCurve> {
        self.entries.iter().map(|(_, c)| c)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeatmapRow {
    pub date: String,
    pub values: [f64; N_LAGS],
    /// Day had no positive total response; emitted as all zeros.
    pub zero_total: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Heatmap {
    pub lags: Vec<i32>,
    pub rows: Vec<HeatmapRow>,
}

/// One row per day: the curve divided by its total response over
/// `[0, 30]`. Days with non-positive (or undefined) totals become flagged
/// zero rows.
pub fn heatmap_matrix(set: &DailyCurveSet) -> Heatmap {
    let lags: Vec<i32> = ResponseCurve::lags().collect();
    let mut rows = Vec::with_capacity(set.entries.len());
    for (date, curve) in &set.entries {
        let total = total_response(curve, 0.0, DEFAULT_TF_MS).unwrap_or(0.0);
        let mut values = [0.0; N_LAGS];
        let zero_total = total <= 0.0;
        if !zero_total {
            for (out, v) in values.iter_mut().zip(curve.values.iter()) {
                *out = v / total;
            }
        }
        rows.push(HeatmapRow {
            date: date.clone(),
            values,
            zero_total,
        });
    }
    Heatmap { lags, rows }
}

/// Header row of lags, then one 61-column row per day, in date order. Day
/// identities and zero-total flags ride in the run metadata, not the matrix.
pub fn write_heatmap_csv(heatmap: &Heatmap) -> String {
    let mut out = String::new();
    let mut first = true;
    for lag in &heatmap.lags {
        if !first {
            out.push(',');
        }
        out.push_str(&lag.to_string());
        first = false;
    }
    out.push('\n');
    for row in &heatmap.rows {
        let mut first = true;
        for v in &row.values {
            if !first {
                out.push(',');
            }
            out.push_str(&v.to_string());
            first = false;
        }
        out.push('\n');
    }
    out
}
