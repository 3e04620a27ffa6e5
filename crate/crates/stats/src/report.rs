//! Per-day latency statistics rows.

use crate::integrate::{latency_quantile, significance_time, total_response, Significance};
use crate::{StatsError, DEFAULT_TF_MS};
use lagline_response::{ResponseCurve, ResponseKind};

/// Response fractions for the `t_X` statistics.
pub const DEFAULT_X_SET: [f64; 3] = [0.05, 0.15, 0.50];
/// Sigma levels for the `t(sigma)` statistics.
pub const DEFAULT_SIGMA_SET: [f64; 4] = [3.0, 5.0, 10.0, 25.0];

/// One day's latency summary.
#[derive(Debug, Clone, PartialEq)]
pub struct LatencyStat {
    pub date: String,
    pub kind: ResponseKind,
    pub total: f64,
    /// `(X, t_X)` pairs, in the order of the configured X set.
    pub t_x: Vec<(f64, f64)>,
    /// `(sigma, t(sigma))` pairs; `NotReached` is a first-class outcome.
    pub t_sigma: Vec<(f64, Significance)>,
}

pub fn latency_stat(
    date: &str,
    curve: &ResponseCurve,
    x_set: &[f64],
    sigma_set: &[f64],
) -> Result<LatencyStat, StatsError> {
    let total = total_response(curve, 0.0, DEFAULT_TF_MS)?;
    let mut t_x = Vec::with_capacity(x_set.len());
    for &x in x_set {
        t_x.push((x, latency_quantile(curve, x)?));
    }
    let mut t_sigma = Vec::with_capacity(sigma_set.len());
    for &level in sigma_set {
        t_sigma.push((level, significance_time(curve, level)?));
    }
    Ok(LatencyStat {
        date: date.to_string(),
        kind: curve.kind,
        total,
        t_x,
        t_sigma,
    })
}

pub fn kind_label(kind: ResponseKind) -> &'static str {
    match kind {
        ResponseKind::Liquidity => "liquidity",
        ResponseKind::Trade => "trade",
        ResponseKind::Volume => "volume",
    }
}

/// CSV rows, one per day. With the default X and sigma sets the header is
/// `date,kind,T,t5,t15,t50,tsig3,tsig5,tsig10,tsig25`; "not reached"
/// significance times serialize as empty fields.
pub fn write_stats_csv(stats: &[LatencyStat], x_set: &[f64], sigma_set: &[f64]) -> String {
    let mut out = String::from("date,kind,T");
    for &x in x_set {
        out.push_str(&format!(",t{:.0}", x * 100.0));
    }
    for &s in sigma_set {
        out.push_str(&format!(",tsig{s:.0}"));
    }
    out.push('\n');
    for stat in stats {
        out.push_str(&format!(
            "{},{},{}",
            stat.date,
            kind_label(stat.kind),
            stat.total
        ));
        for &(_, t) in &stat.t_x {
            out.push_str(&format!(",{t}"));
        }
        for &(_, sig) in &stat.t_sigma {
            match sig {
                Significance::Reached(t) => out.push_str(&format!(",{t}")),
                Significance::NotReached => out.push(','),
            }
        }
        out.push('\n');
    }
    out
}
