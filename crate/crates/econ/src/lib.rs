//! Closed-form economics of latency: industry revenue scaling, cross-market
//! tick fungibility, and the latency required to capture a share of the
//! responding volume.

use lagline_response::ResponseCurve;
use lagline_stats::{latency_quantile, StatsError};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EconError {
    #[error("contract price must be positive, got {0}")]
    NonpositivePrice(f64),
    #[error("capture fraction {0} must lie strictly inside (0, 1)")]
    BadFraction(f64),
    #[error(transparent)]
    Stats(#[from] StatsError),
}

/// Inputs to the point estimators, bundled for report output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EconParams {
    /// Captured fraction of the minimum bid-offer spread, in [0, 1].
    pub captured_spread_fraction: f64,
    /// Average traded daily volume, shares per day.
    pub daily_volume_shares: f64,
    pub emini_price_usd: f64,
    pub emini_tick_usd: f64,
    pub equity_price_usd: f64,
    /// Shares attributed as excess response volume over a period.
    pub response_volume_shares: f64,
}

impl Default for EconParams {
    fn default() -> Self {
        Self {
            captured_spread_fraction: 0.1,
            daily_volume_shares: 5e9,
            emini_price_usd: 65_000.0,
            emini_tick_usd: 12.5,
            equity_price_usd: 130.0,
            response_volume_shares: 2e10,
        }
    }
}

/// Yearly equity-trading revenue available to capture: a fraction `f_c` of
/// the minimum spread on all traded shares, normalized so that full capture
/// at 5 billion shares/day is $12.5 billion/year.
pub fn hft_revenue_estimate(captured_spread_fraction: f64, daily_volume_shares: f64) -> f64 {
    captured_spread_fraction * (daily_volume_shares / 5e9) * 12.5e9
}

/// Dollar move in the equity equivalent to one futures tick:
/// `(tick / contract price) x equity price`.
pub fn tick_fungibility(
    emini_price_usd: f64,
    emini_tick_usd: f64,
    equity_price_usd: f64,
) -> Result<f64, EconError> {
    if emini_price_usd <= 0.0 {
        return Err(EconError::NonpositivePrice(emini_price_usd));
    }
    Ok(emini_tick_usd / emini_price_usd * equity_price_usd)
}

/// Profit pool carried by the responding volume: shares times the per-share
/// move they capture.
pub fn response_pnl(response_volume_shares: f64, per_share_move_usd: f64) -> f64 {
    response_volume_shares * per_share_move_usd
}

/// One-way latency sufficient to act before fraction `f` of the responding
/// excess volume: the lag by which only `1 - f` of the volume has already
/// traded, i.e. `L_f = t_(1-f)` on the excess-volume curve.
pub fn latency_capture(excess_volume: &ResponseCurve, f: f64) -> Result<f64, EconError> {
    if !(0.0..1.0).contains(&f) || f == 0.0 {
        return Err(EconError::BadFraction(f));
    }
    Ok(latency_quantile(excess_volume, 1.0 - f)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lagline_response::{ResponseCurve, ResponseKind};

    #[test]
    fn revenue_normalization_point() {
        assert_eq!(hft_revenue_estimate(1.0, 5e9), 12.5e9);
        assert_eq!(hft_revenue_estimate(0.0, 5e9), 0.0);
        // 0.1 x (1e10 / 5e9) x 12.5e9 by hand.
        assert_eq!(hft_revenue_estimate(0.1, 1e10), 2.5e9);
    }

    #[test]
    fn tick_fungibility_points() {
        assert_eq!(tick_fungibility(65_000.0, 12.5, 130.0).unwrap(), 0.025);
        assert_eq!(tick_fungibility(65_000.0, 0.0, 130.0).unwrap(), 0.0);
        // Rescaling contract price and tick together changes nothing.
        assert_eq!(
            tick_fungibility(50_000.0, 12.5 * 50.0 / 65.0, 100.0).unwrap(),
            tick_fungibility(65_000.0, 12.5, 100.0).unwrap()
        );
        assert_eq!(tick_fungibility(50_000.0, 12.5, 100.0).unwrap(), 0.025);
        assert!(tick_fungibility(0.0, 12.5, 130.0).is_err());
    }

    #[test]
    fn pnl_points() {
        assert_eq!(response_pnl(2e10, 0.025), 5e8);
        assert_eq!(response_pnl(0.0, 0.025), 0.0);
        assert_eq!(response_pnl(1e6, 0.025), 25_000.0);
    }

    #[test]
    fn estimators_scale_linearly_in_volume() {
        for scale in [2.0, 7.5] {
            let a = hft_revenue_estimate(0.3, 4e9 * scale);
            let b = hft_revenue_estimate(0.3, 4e9) * scale;
            assert!((a - b).abs() < 1e-9 * b, "{a} vs {b}");
            let a = response_pnl(1e9 * scale, 0.025);
            let b = response_pnl(1e9, 0.025) * scale;
            assert!((a - b).abs() < 1e-9 * b, "{a} vs {b}");
        }
    }

    fn volume_curve(values: &[(i32, f64)]) -> ResponseCurve {
        let mut c = ResponseCurve::empty(ResponseKind::Volume);
        c.n_events = 100;
        for &(k, v) in values {
            c.values[ResponseCurve::index_of(k)] = v;
        }
        c
    }

    #[test]
    fn capture_latency_single_bin() {
        // All excess volume uniform within [8, 9): preceding 95% of it means
        // arriving by 8.05 ms.
        let curve = volume_curve(&[(8, 1_000.0)]);
        let l95 = latency_capture(&curve, 0.95).unwrap();
        assert!((l95 - 8.05).abs() < 1e-12, "L95 {l95}");
    }

    #[test]
    fn capture_ordering_in_f() {
        // L_f = t_(1-f): lower capture targets tolerate later arrival.
        let curve = volume_curve(&[(5, 400.0), (8, 400.0), (12, 200.0)]);
        let l99 = latency_capture(&curve, 0.99).unwrap();
        let l95 = latency_capture(&curve, 0.95).unwrap();
        let l50 = latency_capture(&curve, 0.50).unwrap();
        assert!(l99 <= l95 && l95 <= l50, "{l99} {l95} {l50}");
        // f -> 1 drives the bound to the curve's earliest support.
        let l999 = latency_capture(&curve, 0.999).unwrap();
        assert!((5.0..5.01).contains(&l999), "{l999}");
    }

    #[test]
    fn degenerate_inputs_rejected() {
        let curve = volume_curve(&[]);
        assert!(matches!(
            latency_capture(&curve, 0.95),
            Err(EconError::Stats(StatsError::UndefinedQuantile))
        ));
        let curve = volume_curve(&[(8, 100.0)]);
        assert!(latency_capture(&curve, 0.0).is_err());
        assert!(latency_capture(&curve, 1.0).is_err());
    }
}
