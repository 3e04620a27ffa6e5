//! Shared domain primitives for the lagline toolkit.
//!
//! Everything here is an immutable value type: wall-clock timestamps within a
//! single trading day, fixed-point prices, right-padded ticker symbols,
//! spherical-earth geodesy, and signal propagation media. Higher-level crates
//! (feed parsing, response measurement, microwave route modeling) build on
//! these without any shared mutable state.

pub mod geo;
pub mod medium;
pub mod price;
pub mod symbol;
pub mod time;

pub use geo::{
    destination_point, great_circle_distance, initial_bearing, intermediate_point, GeoPoint,
    EARTH_RADIUS_KM,
};
pub use medium::{light_time_ms, MediumKind, PropagationMedium, SPEED_OF_LIGHT_M_PER_S};
pub use price::{FuturesPrice, PriceE4};
pub use symbol::Symbol;
pub use time::{MsTimestamp, NsTimestamp, MS_PER_DAY, NS_PER_DAY};

/// Errors produced by core value-type constructors and geodesy.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CoreError {
    #[error("latitude {0} out of range [-90, 90]")]
    LatitudeRange(f64),
    #[error("longitude {0} out of range [-180, 180]")]
    LongitudeRange(f64),
    #[error("undefined bearing: coincident points")]
    UndefinedBearing,
    #[error("millisecond timestamp {0} outside trading day [0, {MS_PER_DAY})")]
    MsOutOfDay(u64),
    #[error("nanosecond timestamp {0} outside trading day [0, {NS_PER_DAY})")]
    NsOutOfDay(u64),
    #[error("refractive index {0} must be >= 1")]
    RefractiveIndex(f64),
    #[error("symbol {0:?} is not printable ASCII of length 1..=8")]
    BadSymbol(String),
}
