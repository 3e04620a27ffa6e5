//! Route planning over tower fields and reconstruction from license records.
//!
//! A corridor of randomly scattered towers, an availability draw, and the
//! clearance physics from the link-budget crate together define a graph of
//! live hops. Two planners run on that graph: a hop-by-hop greedy heuristic
//! (pick the live link pointing closest at the destination) and a global
//! shortest-latency search. Published license filings can also be ingested
//! and chained back into full routes.

pub mod field;
pub mod graph;
pub mod license;
pub mod plan;

pub use field::{generate_tower_field, ClassSpec, FieldSpec, TowerField};
pub use graph::{build_feasibility_graph, FeasibilityGraph};
pub use license::{
    export_route_records, ingest_license_records, reconstruct_routes, write_hop_list_csv,
    write_license_csv, LicenseIngest, LicenseRecord, ReconstructedRoute, Reconstruction,
};
pub use plan::{plan_greedy_route, plan_optimal_route, PlannedRoute};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RouteError {
    #[error("corridor has zero area")]
    ZeroArea,
    #[error("class fractions must be nonnegative and sum to 1, got {0}")]
    BadClassFractions(f64),
    #[error("no connectivity: an endpoint has no live links")]
    NoConnectivity,
    #[error("endpoints are disconnected in the feasibility graph")]
    Disconnected,
    #[error("greedy stuck at node {0}: no live forward link")]
    GreedyStuck(u32),
    #[error("line {line}: {reason}")]
    BadCsv { line: usize, reason: String },
    #[error("cycle detected in licensee {0:?} link set")]
    CycleDetected(String),
    #[error(transparent)]
    Mw(#[from] lagline_mwphys::MwError),
}
