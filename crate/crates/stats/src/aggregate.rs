//! Multi-day aggregation and shape normalization.

use crate::StatsError;
use lagline_response::{ResponseCurve, LAG_MAX, LAG_MIN, N_LAGS};

fn median_of(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Per-lag median across non-empty curves. The sigma channel carries the
/// scaled median absolute deviation (1.4826 x MAD), a robust stand-in for a
/// standard deviation.
pub fn aggregate_median(curves: &[ResponseCurve]) -> Result<ResponseCurve, StatsError> {
    let used: Vec<&ResponseCurve> = curves.iter().filter(|c| !c.is_empty()).collect();
    let Some(first) = used.first() else {
        return Err(StatsError::NoCurves);
    };
    if used.iter().any(|c| c.kind != first.kind) {
        return Err(StatsError::MixedKinds);
    }

    let mut out = ResponseCurve::empty(first.kind);
    out.n_events = used.iter().map(|c| c.n_events).sum();
    let mut column = Vec::with_capacity(used.len());
    for idx in 0..N_LAGS {
        column.clear();
        column.extend(used.iter().map(|c| c.values[idx]));
        let med = median_of(&mut column);
        out.values[idx] = med;

        column.clear();
        column.extend(used.iter().map(|c| (c.values[idx] - med).abs()));
        out.sigmas[idx] = 1.4826 * median_of(&mut column);
    }
    Ok(out)
}

/// Divide values and sigmas by the summed response over lags `[0, 20]` so
/// that range sums to unity.
pub fn normalize_amplitude(curve: &ResponseCurve) -> Result<ResponseCurve, StatsError> {
    if curve.is_empty() {
        return Err(StatsError::NoEvents);
    }
    let normalizer: f64 = (0..=20).map(|k| curve.value(k)).sum();
    if normalizer <= 0.0 {
        return Err(StatsError::NonpositiveNormalizer);
    }
    let mut out = curve.clone();
    for v in &mut out.values {
        *v /= normalizer;
    }
    for s in &mut out.sigmas {
        *s /= normalizer;
    }
    Ok(out)
}

/// Lag by which half of the curve's total mass over the whole lag domain has
/// accumulated (mass of bin `k` spread over `[k, k+1)`). This is the shift
/// pivot for shape comparison; for curves whose support lies in `[0, 30)` it
/// coincides with the 50% response time.
pub fn median_lag(curve: &ResponseCurve) -> Result<f64, StatsError> {
    if curve.is_empty() {
        return Err(StatsError::NoEvents);
    }
    let total: f64 = curve.values.iter().sum();
    if total <= 0.0 {
        return Err(StatsError::UndefinedQuantile);
    }
    let target = 0.5 * total;
    let mut cum = 0.0;
    for k in ResponseCurve::lags() {
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
    Ok((LAG_MAX + 1) as f64)
}

/// Shift the lag axis so the median lag moves to zero. Fractional shifts
/// resample linearly: output bin `k` takes the input mass over
/// `[k + s, k + 1 + s)`, which mixes the two straddled input bins. Mass
/// shifted off either end of the domain is dropped.
pub fn shift_to_median(curve: &ResponseCurve) -> Result<ResponseCurve, StatsError> {
    let shift = median_lag(curve)?;
    let mut out = curve.clone();
    let whole = shift.floor();
    let frac = shift - whole;
    let whole = whole as i64;

    let sample = |arr: &[f64; N_LAGS], k: i64| -> f64 {
        if (LAG_MIN as i64..=LAG_MAX as i64).contains(&k) {
            arr[(k - LAG_MIN as i64) as usize]
        } else {
            0.0
        }
    };
    for k in ResponseCurve::lags() {
        let src = k as i64 + whole;
        let idx = ResponseCurve::index_of(k);
        out.values[idx] =
            (1.0 - frac) * sample(&curve.values, src) + frac * sample(&curve.values, src + 1);
        out.sigmas[idx] =
            (1.0 - frac) * sample(&curve.sigmas, src) + frac * sample(&curve.sigmas, src + 1);
    }
    Ok(out)
}

/// Amplitude normalization followed by the median-lag shift: curves become
/// comparable in shape alone, independent of scale and latency.
pub fn normalize_shape(curve: &ResponseCurve) -> Result<ResponseCurve, StatsError> {
    shift_to_median(&normalize_amplitude(curve)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lagline_response::ResponseKind;

    fn curve_with(values: &[(i32, f64)], n_events: usize) -> ResponseCurve {
        let mut c = ResponseCurve::empty(ResponseKind::Liquidity);
        c.n_events = n_events;
        for &(k, v) in values {
            c.values[ResponseCurve::index_of(k)] = v;
        }
        c
    }

    #[test]
    fn median_of_identical_curves_is_identity() {
        let c = curve_with(&[(5, 100.0), (6, 50.0)], 10);
        let agg = aggregate_median(&[c.clone(), c.clone(), c.clone()]).unwrap();
        assert_eq!(agg.values, c.values);
        assert!(agg.sigmas.iter().all(|&s| s == 0.0));
    }

    #[test]
    fn outlier_day_has_no_effect() {
        let normal = curve_with(&[(5, 100.0)], 10);
        let outlier = curve_with(&[(5, 100_000.0), (20, -4_000.0)], 10);
        let mut days = vec![normal.clone(); 11];
        days.push(outlier);
        let agg = aggregate_median(&days).unwrap();
        assert_eq!(agg.values, normal.values);
    }

    #[test]
    fn aggregation_is_permutation_invariant() {
        let a = curve_with(&[(5, 100.0)], 10);
        let b = curve_with(&[(5, 160.0), (7, 30.0)], 10);
        let c = curve_with(&[(4, 20.0), (5, 130.0)], 10);
        let fwd = aggregate_median(&[a.clone(), b.clone(), c.clone()]).unwrap();
        let rev = aggregate_median(&[c, a, b]).unwrap();
        assert_eq!(fwd.values, rev.values);
        assert_eq!(fwd.sigmas, rev.sigmas);
    }

    #[test]
    fn empty_inputs_are_errors() {
        assert_eq!(aggregate_median(&[]), Err(StatsError::NoCurves));
        let empty = ResponseCurve::empty(ResponseKind::Trade);
        assert_eq!(aggregate_median(&[empty]), Err(StatsError::NoCurves));
    }

    #[test]
    fn normalized_support_sums_to_unity() {
        let c = curve_with(&[(3, 50.0), (8, 150.0), (25, 40.0)], 10);
        let normalized = normalize_amplitude(&c).unwrap();
        let sum: f64 = (0..=20).map(|k| normalized.value(k)).sum();
        assert!((sum - 1.0).abs() < 1e-12, "sum {sum}");
    }

    #[test]
    fn nonpositive_normalizer_rejected() {
        let c = curve_with(&[(3, -50.0)], 10);
        assert_eq!(
            normalize_amplitude(&c),
            Err(StatsError::NonpositiveNormalizer)
        );
    }

    #[test]
    fn shifted_median_lag_is_zero() {
        let c = curve_with(&[(4, 15.0), (5, 85.0), (9, 30.0)], 10);
        let shaped = normalize_shape(&c).unwrap();
        let med = median_lag(&shaped).unwrap();
        assert!(med.abs() < 1e-9, "median lag {med}");
    }

    #[test]
    fn shift_and_scale_normalize_identically() {
        // Day B is day A shifted 2 ms later and 3x larger; shapes must agree.
        let a = curve_with(&[(4, 15.0), (5, 85.0), (6, 40.0), (9, 30.0)], 10);
        let mut b = ResponseCurve::empty(ResponseKind::Liquidity);
        b.n_events = 10;
        for k in ResponseCurve::lags() {
            if k + 2 <= LAG_MAX {
                b.values[ResponseCurve::index_of(k + 2)] = 3.0 * a.value(k);
            }
        }
        let shaped_a = normalize_shape(&a).unwrap();
        let shaped_b = normalize_shape(&b).unwrap();
        for idx in 0..N_LAGS {
            assert!(
                (shaped_a.values[idx] - shaped_b.values[idx]).abs() < 1e-6,
                "idx {idx}: {} vs {}",
                shaped_a.values[idx],
                shaped_b.values[idx]
            );
        }
    }
}
