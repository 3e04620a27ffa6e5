//! Synthetic market sessions with injected, known latencies.
//!
//! The generator drives a futures price as a one-tick random walk with
//! Poisson-timed trades, and fires an equity-side responder after each price
//! change with a configurable latency. Every feed the measurement pipeline
//! consumes is emitted in its exact wire format, together with a ground-truth
//! record of event times, directions, and responder arrivals. The pipeline
//! must recover those injections; that recovery is the validation oracle for
//! the whole measurement.

pub mod config;
pub mod session;
pub mod truth;

pub use config::{BackgroundConfig, LatencyComponent, PresignalConfig, SimConfig};
pub use session::{simulate_session, SimSession};
pub use truth::{SimGroundTruth, TruthEvent, TruthResponder};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SimError {
    #[error("latency mixture weights must be nonnegative and sum to 1, got {0}")]
    BadWeights(f64),
    #[error("latency component {latency_ms} ms is below the light floor {floor_ms} ms")]
    LatencyBelowFloor { latency_ms: f64, floor_ms: f64 },
    #[error("presignal lead {lead_ms} ms exceeds the light floor {floor_ms} ms: arrival would precede the event")]
    PresignalInfeasible { lead_ms: f64, floor_ms: f64 },
    #[error("rate {0} must be nonnegative")]
    NegativeRate(f64),
    #[error("presignal fraction {0} must lie in [0, 1]")]
    BadFraction(f64),
    #[error("session start must precede end within one day")]
    BadSession,
    #[error("latency mixture must have at least one component")]
    EmptyMixture,
}
