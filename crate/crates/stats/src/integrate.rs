//! Integration of the piecewise-constant response rate and the latency
//! statistics defined on its cumulative.

use crate::{StatsError, DEFAULT_TF_MS};
use lagline_response::ResponseCurve;

/// Integral of the response rate over `[t0, tf]`, with bin `k`'s mass spread
/// uniformly over `[k, k+1)`. Fractional bounds take the linear part of the
/// boundary bins.
pub fn total_response(curve: &ResponseCurve, t0: f64, tf: f64) -> Result<f64, StatsError> {
    if curve.is_empty() {
        return Err(StatsError::NoEvents);
    }
    Ok(integrate(curve, t0, tf))
}

fn integrate(curve: &ResponseCurve, t0: f64, tf: f64) -> f64 {
    let mut total = 0.0;
    for k in ResponseCurve::lags() {
        let lo = (k as f64).max(t0);
        let hi = ((k + 1) as f64).min(tf);
        if hi > lo {
            total += curve.value(k) * (hi - lo);
        }
    }
    total
}

/// `t_X`: smallest `t` at which the cumulative response from 0 covers
/// fraction `x` of the total over `[0, 30]`, by linear interpolation within
/// the crossing bin.
pub fn latency_quantile(curve: &ResponseCurve, x: f64) -> Result<f64, StatsError> {
    if curve.is_empty() {
        return Err(StatsError::NoEvents);
    }
    let total = integrate(curve, 0.0, DEFAULT_TF_MS);
    if total <= 0.0 {
        return Err(StatsError::UndefinedQuantile);
    }
    let target = x * total;
    let mut cum = 0.0;
    for k in 0..DEFAULT_TF_MS as i32 {
        if cum >= target {
            return Ok(k as f64);
        }
        let v = curve.value(k);
        let next = cum + v;
        if next >= target && v > 0.0 {
            return Ok(k as f64 + (target - cum) / v);
        }
        cum = next;
    }
    Ok(DEFAULT_TF_MS)
}

/// Outcome of the accumulated-significance scan. Low-volume days legitimately
/// never reach high sigma levels, so "not reached" is a result, not an error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Significance {
    Reached(f64),
    NotReached,
}

impl Significance {
    pub fn reached(self) -> Option<f64> {
        match self {
            Significance::Reached(t) => Some(t),
            Significance::NotReached => None,
        }
    }
}

/// `t(sigma)`: first time (linear interpolation between millisecond
/// boundaries) at which `T(t) / sigma_T(t)` reaches `sigma_level`, where
/// `sigma_T` sums the per-bin 1-sigma uncertainties in quadrature over the
/// accumulated bins.
pub fn significance_time(
    curve: &ResponseCurve,
    sigma_level: f64,
) -> Result<Significance, StatsError> {
    if curve.is_empty() {
        return Err(StatsError::NoEvents);
    }
    let all_zero = (0..DEFAULT_TF_MS as i32).all(|k| curve.sigma(k) == 0.0);
    if all_zero {
        return if integrate(curve, 0.0, DEFAULT_TF_MS) != 0.0 {
            Err(StatsError::DegenerateUncertainty)
        } else {
            Ok(Significance::NotReached)
        };
    }

    let mut cum = 0.0f64;
    let mut var = 0.0f64;
    let mut prev_ratio = 0.0f64;
    for m in 1..=DEFAULT_TF_MS as i32 {
        let k = m - 1;
        cum += curve.value(k);
        var += curve.sigma(k) * curve.sigma(k);
        let ratio = if var > 0.0 {
            cum / var.sqrt()
        } else if cum == 0.0 {
            0.0
        } else {
            // Nonzero accumulation with zero uncertainty so far: infinitely
            // significant the moment it appears.
            f64::INFINITY * cum.signum()
        };
        if ratio >= sigma_level {
            let t = if ratio.is_finite() {
                (m - 1) as f64 + (sigma_level - prev_ratio) / (ratio - prev_ratio)
            } else {
                m as f64
            };
            return Ok(Significance::Reached(t));
        }
        prev_ratio = ratio;
    }
    Ok(Significance::NotReached)
}
