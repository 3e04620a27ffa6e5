//! Timestamps within a single GPS-synchronized, exchange-local trading day.
//!
//! All feeds for one session share a common midnight origin, so a timestamp
//! is just an offset into the day. No timezone arithmetic happens here.

use crate::CoreError;
use serde::{Deserialize, Serialize};

/// Milliseconds in one day.
pub const MS_PER_DAY: u64 = 86_400_000;
/// Nanoseconds in one day.
pub const NS_PER_DAY: u64 = 86_400_000_000_000;

/// Millisecond-resolution wall-clock timestamp, `0 <= v < 86_400_000`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MsTimestamp(u32);

impl MsTimestamp {
    pub fn new(ms_since_midnight: u64) -> Result<Self, CoreError> {
        if ms_since_midnight < MS_PER_DAY {
            Ok(Self(ms_since_midnight as u32))
        } else {
            Err(CoreError::MsOutOfDay(ms_since_midnight))
        }
    }

    pub fn value(self) -> u32 {
        self.0
    }

    /// Shift by a signed number of milliseconds, `None` if the result leaves
    /// the trading day.
    pub fn offset(self, delta_ms: i64) -> Option<Self> {
        let shifted = self.0 as i64 + delta_ms;
        if (0..MS_PER_DAY as i64).contains(&shifted) {
            Some(Self(shifted as u32))
        } else {
            None
        }
    }
}

/// Nanosecond-resolution wall-clock timestamp, `0 <= v < 86_400_000_000_000`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NsTimestamp(u64);

impl NsTimestamp {
    pub fn new(ns_since_midnight: u64) -> Result<Self, CoreError> {
        if ns_since_midnight < NS_PER_DAY {
            Ok(Self(ns_since_midnight))
        } else {
            Err(CoreError::NsOutOfDay(ns_since_midnight))
        }
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// Millisecond projection: `floor(v / 10^6)`.
    pub fn to_ms(self) -> MsTimestamp {
        MsTimestamp((self.0 / 1_000_000) as u32)
    }
}
