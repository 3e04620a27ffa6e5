//! Rolling median filtering of per-day scalar series.

/// Centered rolling median with the window truncated at the series edges.
/// For index `i` the window covers `[i - w/2, i - w/2 + w)` clamped to the
/// series; even-sized windows average the two middle values.
pub fn median_filter(series: &[f64], window: usize) -> Vec<f64> {
    assert!(window >= 1, "window must be >= 1");
    let n = series.len();
    let mut out = Vec::with_capacity(n);
    let mut scratch = Vec::with_capacity(window);
    for i in 0..n {
        let start = (i as i64 - (window / 2) as i64).max(0) as usize;
        let end = (start + window).min(n);
        scratch.clear();
        scratch.extend_from_slice(&series[start..end]);
        scratch.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let m = scratch.len();
        out.push(if m % 2 == 1 {
            scratch[m / 2]
        } else {
            0.5 * (scratch[m / 2 - 1] + scratch[m / 2])
        });
    }
    out
}
