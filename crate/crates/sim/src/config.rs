//! Session generator configuration.

use crate::SimError;
use lagline_core::{PriceE4, Symbol, MS_PER_DAY};
use serde::{Deserialize, Serialize};

/// One deterministic latency in the responder mixture.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatencyComponent {
    pub latency_ms: f64,
    pub weight: f64,
}

/// Predictive agents acting `lead_ms` ahead of the light-speed arrival of
/// the news (so a lead of 2 ms against a 3.93 ms floor lands 1.93 ms after
/// the event itself).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PresignalConfig {
    pub fraction: f64,
    pub lead_ms: f64,
}

/// Sign-symmetric background activity; its expected contribution to any
/// signed response is zero, it exists to make uncertainties realistic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BackgroundConfig {
    pub book_events_per_sec: f64,
    pub trades_per_sec: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    /// Session open, ms after midnight ET (9:30 default).
    pub session_start_ms: u32,
    /// Session close, exclusive (16:00 default).
    pub session_end_ms: u32,
    /// Price-changing futures trade intensity, events per second. The
    /// default 0.427 gives roughly 10^4 events per 6.5 h session.
    pub drive_rate_hz: f64,
    pub latency_mixture: Vec<LatencyComponent>,
    /// Gaussian jitter applied to responder latencies, std dev in ms.
    pub latency_jitter_ms: f64,
    pub presignal: PresignalConfig,
    /// Physical one-way light time between the venues, ms. Non-presignal
    /// responders can never arrive earlier than this.
    pub light_floor_ms: f64,
    /// Total displayed-book response per event, shares (half added to the
    /// bid, half removed from the ask).
    pub response_shares: u32,
    /// Probability that an event's responder also trades on the tape.
    pub fill_probability: f64,
    pub background: BackgroundConfig,
    /// Apply 0-2 ms uniform jitter to tape stamps, mimicking relative delay
    /// between venue clocks.
    pub tape_jitter: bool,
    pub symbol: Symbol,
    pub start_equity_price: PriceE4,
    pub start_futures_ticks: i64,
    pub seed: u64,
}

impl SimConfig {
    /// A quiet, deterministic single-latency baseline session.
    pub fn baseline(latency_ms: f64, seed: u64) -> Self {
        Self {
            session_start_ms: 34_200_000,
            session_end_ms: 57_600_000,
            drive_rate_hz: 0.427,
            latency_mixture: vec![LatencyComponent {
                latency_ms,
                weight: 1.0,
            }],
            latency_jitter_ms: 0.0,
            presignal: PresignalConfig {
                fraction: 0.0,
                lead_ms: 0.0,
            },
            light_floor_ms: 3.93,
            response_shares: 800,
            fill_probability: 1.0,
            background: BackgroundConfig {
                book_events_per_sec: 0.0,
                trades_per_sec: 0.0,
            },
            tape_jitter: false,
            symbol: Symbol::new("SPY").expect("static symbol"),
            start_equity_price: PriceE4::new(1_301_300),
            start_futures_ticks: 5_200,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), SimError> {
        if self.session_start_ms >= self.session_end_ms
            || self.session_end_ms as u64 >= MS_PER_DAY
            || self.session_start_ms < 60_000
        {
            return Err(SimError::BadSession);
        }
        if self.latency_mixture.is_empty() {
            return Err(SimError::EmptyMixture);
        }
        let weight_sum: f64 = self.latency_mixture.iter().map(|c| c.weight).sum();
        if self.latency_mixture.iter().any(|c| c.weight < 0.0) || (weight_sum - 1.0).abs() > 1e-9 {
            return Err(SimError::BadWeights(weight_sum));
        }
        for component in &self.latency_mixture {
            if component.latency_ms < self.light_floor_ms {
                return Err(SimError::LatencyBelowFloor {
                    latency_ms: component.latency_ms,
                    floor_ms: self.light_floor_ms,
                });
            }
        }
        if self.presignal.fraction > 0.0 && self.presignal.lead_ms > self.light_floor_ms {
            return Err(SimError::PresignalInfeasible {
                lead_ms: self.presignal.lead_ms,
                floor_ms: self.light_floor_ms,
            });
        }
        if !(0.0..=1.0).contains(&self.presignal.fraction) {
            return Err(SimError::BadFraction(self.presignal.fraction));
        }
        for rate in [
            self.drive_rate_hz,
            self.background.book_events_per_sec,
            self.background.trades_per_sec,
        ] {
            if rate < 0.0 {
                return Err(SimError::NegativeRate(rate));
            }
        }
        if !(0.0..=1.0).contains(&self.fill_probability) {
            return Err(SimError::BadFraction(self.fill_probability));
        }
        Ok(())
    }
}
