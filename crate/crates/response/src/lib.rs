//! Millisecond lag-binned market response measurement.
//!
//! The drive process is the futures trade stream: every millisecond whose
//! closing ("in-force") trade price differs from the last such price is an
//! event with a direction. Around each event, equity activity is accumulated
//! into 61 one-millisecond lag bins (-30 through +30):
//!
//! * **liquidity response** — net shares added to the bid plus net shares
//!   removed from the ask, at the three price levels around the last equity
//!   traded price;
//! * **trade response** — signed traded-price changes on the consolidated
//!   tape;
//! * **excess volume** — tape volume above the event-free baseline rate.
//!
//! Price-decreasing events contribute with flipped sign so both directions
//! pool into one estimator. Per-lag uncertainties come from bootstrap
//! resampling over events.

pub mod accumulate;
pub mod bootstrap;
pub mod curve;
pub mod event;

pub use accumulate::{
    excess_volume_contributions, liquidity_contributions, trade_contributions, EventContributions,
};
pub use bootstrap::{bootstrap_sigma, BootstrapConfig};
pub use curve::{
    read_curve_csv, write_curve_csv, CurveMeta, ResponseCurve, ResponseKind, LAG_MAX, LAG_MIN,
    N_LAGS,
};
pub use event::{in_force_series, resolve_reference_prices, screen_price_events, PriceEvent};

use lagline_core::Symbol;
use lagline_feeds::{BookDelta, TapeTrade};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ResponseError {
    #[error("unsorted input: timestamps must be nondecreasing")]
    Unsorted,
    #[error("bootstrap needs at least 2 resamples, got {0}")]
    TooFewResamples(usize),
    #[error("bad curve file: {0}")]
    BadCurveFile(String),
}

/// Full liquidity-response computation: resolve reference prices, accumulate
/// per-event contributions, average, and attach bootstrap sigmas.
pub fn liquidity_response(
    events: &[PriceEvent],
    deltas: &[BookDelta],
    tape: &[TapeTrade],
    symbol: Symbol,
    bootstrap: &BootstrapConfig,
) -> Result<ResponseCurve, ResponseError> {
    let contributions = liquidity_contributions(events, deltas, tape, symbol)?;
    contributions.into_curve(bootstrap)
}

/// Full trade-response computation.
pub fn trade_response(
    events: &[PriceEvent],
    tape: &[TapeTrade],
    symbol: Symbol,
    bootstrap: &BootstrapConfig,
) -> Result<ResponseCurve, ResponseError> {
    let contributions = trade_contributions(events, tape, symbol)?;
    contributions.into_curve(bootstrap)
}

/// Excess trading volume per lag bin, baseline-subtracted.
pub fn excess_volume_curve(
    events: &[PriceEvent],
    tape: &[TapeTrade],
    symbol: Symbol,
    bootstrap: &BootstrapConfig,
) -> Result<ResponseCurve, ResponseError> {
    let contributions = excess_volume_contributions(events, tape, symbol)?;
    contributions.into_curve(bootstrap)
}
