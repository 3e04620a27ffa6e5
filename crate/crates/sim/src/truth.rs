//! Ground-truth record emitted alongside every synthetic session.

use serde::{Deserialize, Serialize};

/// One responder's arrival at the equity venue, absolute fractional
/// milliseconds since midnight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruthResponder {
    pub arrival_ms: f64,
    pub presignal: bool,
}

/// One screened price event as the generator knows it: the millisecond, the
/// in-force trade's offset within it, the direction, and everyone who reacted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruthEvent {
    pub event_ms: u32,
    pub intra_ms_offset: f64,
    pub direction: i8,
    pub responders: Vec<TruthResponder>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimGroundTruth {
    pub seed: u64,
    pub light_floor_ms: f64,
    pub events: Vec<TruthEvent>,
}

impl SimGroundTruth {
    /// Histogram oracle: fraction of non-presignal arrivals falling in each
    /// integer lag bin relative to the event millisecond.
    pub fn arrival_bin_fractions(&self) -> Vec<(i64, f64)> {
        use std::collections::BTreeMap;
        let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
        let mut total = 0u64;
        for event in &self.events {
            for responder in &event.responders {
                if responder.presignal {
                    continue;
                }
                let bin = responder.arrival_ms.floor() as i64 - event.event_ms as i64;
                *counts.entry(bin).or_default() += 1;
                total += 1;
            }
        }
        counts
            .into_iter()
            .map(|(bin, n)| (bin, n as f64 / total.max(1) as f64))
            .collect()
    }
}
