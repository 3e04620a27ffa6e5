//! Digital radio characteristics.

use serde::{Deserialize, Serialize};

/// One radio model: operating frequency, per-hop equipment latency, and the
/// buffering parameters behind that latency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadioProfile {
    pub freq_ghz: f64,
    /// Per-hop equipment latency, microseconds.
    pub l_rad_us: f64,
    pub buffer_bytes: f64,
    pub bitrate_mbps: f64,
}

impl RadioProfile {
    /// Fiducial low-latency profile: 6 GHz, 10 us per hop.
    pub fn fiducial() -> Self {
        Self {
            freq_ghz: 6.0,
            l_rad_us: 10.0,
            buffer_bytes: 64.0,
            bitrate_mbps: 155.0,
        }
    }

    pub fn with_l_rad(mut self, l_rad_us: f64) -> Self {
        self.l_rad_us = l_rad_us;
        self
    }
}

impl Default for RadioProfile {
    fn default() -> Self {
        Self::fiducial()
    }
}

/// Latency to buffer and read out `bytes` at `bitrate_mbps`:
/// `10.24 us x (B / 64 bytes) x (100 Mbps / bitrate)`.
pub fn radio_buffer_latency_us(bytes: f64, bitrate_mbps: f64) -> f64 {
    10.24 * (bytes / 64.0) * (100.0 / bitrate_mbps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_point() {
        assert!((radio_buffer_latency_us(64.0, 100.0) - 10.24).abs() < 1e-12);
    }

    #[test]
    fn ratio_cancellation() {
        assert!((radio_buffer_latency_us(128.0, 200.0) - 10.24).abs() < 1e-12);
    }

    #[test]
    fn large_fec_buffer_at_sonet_rate() {
        // 10.24 * 4 / 1.55 by hand.
        let l = radio_buffer_latency_us(256.0, 155.0);
        assert!((l - 26.4258).abs() < 1e-3, "latency {l}");
    }
}
