//! Microwave link and route physics.
//!
//! A long-haul line-of-sight route is a chain of tower-to-tower hops. Hop
//! length is capped by Fresnel-zone clearance over the earth bulge; each
//! radio adds a fixed equipment delay; and every heading change between hops
//! stretches the path beyond the endpoint geodesic. This crate turns those
//! three effects into per-route latency figures.

pub mod clearance;
pub mod geometry;
pub mod metrics;
pub mod radio;

pub use clearance::{earth_bulge_m, fresnel_radius_m, hop_feasible, max_hop_length_km};
pub use geometry::{bend_excess_km, greedy_excess_estimate_km, BendGeometry, SMALL_ANGLE_WARN_RAD};
pub use metrics::{
    route_metrics, route_metrics_from_distances, write_route_table, AtmosphereModel, Route,
    RouteMetrics, Tower, TowerClass, ROUTE_TABLE_HEADER, US_PER_KM,
};
pub use radio::{radio_buffer_latency_us, RadioProfile};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MwError {
    #[error(
        "no feasible hop length: tower height {h_tow} m does not clear obstructions {h_obs} m"
    )]
    NoFeasibleHop { h_tow: f64, h_obs: f64 },
    #[error("route needs at least 2 towers, got {0}")]
    RouteTooShort(usize),
    #[error("consecutive towers at index {0} are coincident")]
    CoincidentTowers(usize),
}
