//! Fixed-point prices for equities and index futures.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Equity price in units of 10^-4 dollars (one cent = 100 units).
///
/// SPY trades on a one-cent grid, so its tick is 100 units.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default,
)]
#[serde(transparent)]
pub struct PriceE4(i64);

impl PriceE4 {
    /// One cent expressed in 10^-4 dollar units.
    pub const CENT: i64 = 100;

    pub fn new(units_of_1e4_dollars: i64) -> Self {
        Self(units_of_1e4_dollars)
    }

    pub fn units(self) -> i64 {
        self.0
    }

    pub fn to_dollars(self) -> f64 {
        self.0 as f64 * 1e-4
    }

    /// Shift by a whole number of cents.
    pub fn offset_cents(self, cents: i64) -> Self {
        Self(self.0 + cents * Self::CENT)
    }
}

impl fmt::Display for PriceE4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "${:.4}", self.to_dollars())
    }
}

/// Futures price as a signed count of contract ticks.
///
/// For the E-mini S&P 500 the tick is 0.25 index points ($12.50 per
/// contract); the tick size is fixed per instrument so only the integer count
/// is stored.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default,
)]
#[serde(transparent)]
pub struct FuturesPrice {
    ticks: i64,
}

impl FuturesPrice {
    pub fn from_ticks(ticks: i64) -> Self {
        Self { ticks }
    }

    pub fn ticks(self) -> i64 {
        self.ticks
    }

    pub fn offset_ticks(self, delta: i64) -> Self {
        Self {
            ticks: self.ticks + delta,
        }
    }
}
