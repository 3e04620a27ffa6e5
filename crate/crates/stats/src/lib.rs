//! Latency statistics over measured response curves.
//!
//! The curve's bin `k` holds the mean response stamped in the k-th
//! millisecond after the event; for integration that mass is spread
//! uniformly over `[k, k+1)`, giving a piecewise-linear cumulative response.
//! On top of that cumulative sit the latency quantiles `t_X`, the
//! accumulated-significance times `t(sigma)`, multi-day median aggregation,
//! shape normalization, and the heat-map matrix.

pub mod aggregate;
pub mod filter;
pub mod heatmap;
pub mod integrate;
pub mod report;

pub use aggregate::{
    aggregate_median, median_lag, normalize_amplitude, normalize_shape, shift_to_median,
};
pub use filter::median_filter;
pub use heatmap::{heatmap_matrix, write_heatmap_csv, DailyCurveSet, Heatmap, HeatmapRow};
pub use integrate::{latency_quantile, significance_time, total_response, Significance};
pub use report::{
    kind_label, latency_stat, write_stats_csv, LatencyStat, DEFAULT_SIGMA_SET, DEFAULT_X_SET,
};

/// End of the default integration window, milliseconds: late enough that the
/// bulk of the response has accumulated.
pub const DEFAULT_TF_MS: f64 = 30.0;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StatsError {
    #[error("no events: curve is empty")]
    NoEvents,
    #[error("undefined quantile: total response is not positive")]
    UndefinedQuantile,
    #[error("degenerate uncertainty: nonzero response with all-zero sigmas")]
    DegenerateUncertainty,
    #[error("shape normalizer over lags [0, 20] is not positive")]
    NonpositiveNormalizer,
    #[error("no non-empty curves to aggregate")]
    NoCurves,
    #[error("dates must be strictly increasing, got {0:?} then {1:?}")]
    UnsortedDates(String, String),
    #[error("curve set mixes response kinds")]
    MixedKinds,
}
