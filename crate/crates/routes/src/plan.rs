//! Route planners over a feasibility graph.

use crate::graph::FeasibilityGraph;
use crate::RouteError;
use lagline_core::initial_bearing;
use lagline_mwphys::{route_metrics, Route, RouteMetrics};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// A planned tower chain with its latency figures. `mean_forward_neighbors`
/// is the measured n_near: the average number of live forward candidates the
/// planner saw per hop decision (greedy planner only, zero for the optimal
/// search).
#[derive(Debug, Clone)]
pub struct PlannedRoute {
    pub node_ids: Vec<u32>,
    pub route: Route,
    pub metrics: RouteMetrics,
    /// Sum of edge weights: `D_tot / c + N * L_rad`, microseconds.
    pub total_latency_us: f64,
    pub mean_forward_neighbors: f64,
}

struct HeapEntry {
    cost: f64,
    node: u32,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cost == other.cost && self.node == other.node
    }
}
impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap on cost, ties broken by node id for reproducibility.
        other
            .cost
            .total_cmp(&self.cost)
            .then(other.node.cmp(&self.node))
    }
}
impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn assemble(
    graph: &FeasibilityGraph,
    node_ids: Vec<u32>,
    neighbors: f64,
) -> Result<PlannedRoute, RouteError> {
    let points = node_ids
        .iter()
        .map(|&n| graph.nodes[n as usize].position)
        .collect();
    let route = Route::new(points).map_err(RouteError::Mw)?;
    let metrics = route_metrics(&route, &graph.profile, false).map_err(RouteError::Mw)?;
    let total_latency_us = metrics.d_tot_km * lagline_mwphys::US_PER_KM
        + metrics.n_hops as f64 * graph.profile.l_rad_us;
    Ok(PlannedRoute {
        node_ids,
        route,
        metrics,
        total_latency_us,
        mean_forward_neighbors: neighbors,
    })
}

/// Global minimum-latency path from endpoint A to endpoint B (Dijkstra;
/// nonnegative weights, deterministic tie-break by node id).
pub fn plan_optimal_route(graph: &FeasibilityGraph) -> Result<PlannedRoute, RouteError> {
    let n = graph.nodes.len();
    let source = FeasibilityGraph::SOURCE;
    let target = FeasibilityGraph::TARGET;

    let mut dist = vec![f64::INFINITY; n];
    let mut prev: Vec<u32> = vec![u32::MAX; n];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(HeapEntry {
        cost: 0.0,
        node: source as u32,
    });
    while let Some(HeapEntry { cost, node }) = heap.pop() {
        let u = node as usize;
        if cost > dist[u] {
            continue;
        }
        if u == target {
            break;
        }
        for &(v, weight) in &graph.adjacency[u] {
            let next = cost + weight;
            if next < dist[v as usize] {
                dist[v as usize] = next;
                prev[v as usize] = node;
                heap.push(HeapEntry {
                    cost: next,
                    node: v,
                });
            }
        }
    }
    if dist[target].is_infinite() {
        return Err(RouteError::Disconnected);
    }

    let mut chain = vec![target as u32];
    let mut cur = target;
    while cur != source {
        let p = prev[cur];
        debug_assert!(p != u32::MAX);
        chain.push(p);
        cur = p as usize;
    }
    chain.reverse();
    assemble(graph, chain, 0.0)
}

/// Fraction of the longest live forward link a hop must reach to count as a
/// stride-scale candidate for the greedy planner.
const HOP_SCALE_POOL_FRACTION: f64 = 0.65;

/// Hop-by-hop heuristic: from the current tower, look at unvisited live
/// neighbors in the forward half-plane (heading within a quarter turn of the
/// bearing to the destination) whose hop length is at the route's natural
/// stride (at least [`HOP_SCALE_POOL_FRACTION`] of the longest such link),
/// and take the one deviating least from that bearing. The pool size per
/// decision is the measured `n_near`. Connects straight to the destination
/// the moment a live link to it exists; fails as stuck when no forward
/// candidate remains.
pub fn plan_greedy_route(graph: &FeasibilityGraph) -> Result<PlannedRoute, RouteError> {
    let source = FeasibilityGraph::SOURCE;
    let target = FeasibilityGraph::TARGET;
    let target_pos = graph.nodes[target].position;
    let l_rad = graph.profile.l_rad_us;

    let mut visited = vec![false; graph.nodes.len()];
    let mut chain = vec![source as u32];
    let mut cur = source;
    visited[source] = true;
    let mut candidate_counts: Vec<usize> = Vec::new();
    let mut scratch: Vec<(f64, f64, u32)> = Vec::new(); // (hop_km, deviation, node)

    let max_steps = graph.nodes.len() + 1;
    for _ in 0..max_steps {
        if graph.adjacency[cur]
            .iter()
            .any(|&(v, _)| v as usize == target)
        {
            chain.push(target as u32);
            let mean = if candidate_counts.is_empty() {
                0.0
            } else {
                candidate_counts.iter().sum::<usize>() as f64 / candidate_counts.len() as f64
            };
            return assemble(graph, chain, mean);
        }
        let here = graph.nodes[cur].position;
        let to_target = initial_bearing(here, target_pos)
            .expect("current tower never coincides with the destination");

        scratch.clear();
        let mut longest = 0.0f64;
        for &(v, weight) in &graph.adjacency[cur] {
            if visited[v as usize] {
                continue;
            }
            let heading = initial_bearing(here, graph.nodes[v as usize].position)
                .expect("graph contains no coincident towers");
            let deviation = angular_difference(heading, to_target);
            if deviation < std::f64::consts::FRAC_PI_2 {
                let hop_km = (weight - l_rad) / lagline_mwphys::US_PER_KM;
                longest = longest.max(hop_km);
                scratch.push((hop_km, deviation, v));
            }
        }
        let mut best: Option<(f64, u32)> = None;
        let mut pool = 0usize;
        for &(hop_km, deviation, v) in &scratch {
            if hop_km < HOP_SCALE_POOL_FRACTION * longest {
                continue;
            }
            pool += 1;
            match best {
                Some((best_dev, _)) if best_dev <= deviation => {}
                _ => best = Some((deviation, v)),
            }
        }
        candidate_counts.push(pool);
        let Some((_, next)) = best else {
            return Err(RouteError::GreedyStuck(cur as u32));
        };
        visited[next as usize] = true;
        chain.push(next);
        cur = next as usize;
    }
    Err(RouteError::GreedyStuck(cur as u32))
}

/// Absolute circular difference between two angles, in [0, pi].
fn angular_difference(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ClassSpec, FieldSpec, TowerField};
    use crate::graph::build_feasibility_graph;
    use lagline_core::{intermediate_point, GeoPoint};
    use lagline_mwphys::{AtmosphereModel, RadioProfile, Tower, TowerClass};

    /// Evenly spaced collinear towers between two endpoints ~500 km apart.
    fn collinear_field(n_intermediate: usize) -> TowerField {
        let a = GeoPoint::new(41.0, -88.0).unwrap();
        let b = GeoPoint::new(41.0, -82.0).unwrap();
        let spec = FieldSpec {
            endpoint_a: a,
            endpoint_b: b,
            half_width_km: 5.0,
            density_per_km2: 0.0,
            classes: vec![ClassSpec {
                fraction: 1.0,
                height_range_m: (90.0, 100.0),
                availability: 1.0,
            }],
            endpoint_height_m: 100.0,
            obstruction_m: 10.0,
        };
        let towers = (1..=n_intermediate)
            .map(|i| {
                let f = i as f64 / (n_intermediate + 1) as f64;
                Tower {
                    id: i as u32 + 1,
                    position: intermediate_point(a, b, f),
                    height_m: 100.0,
                    availability_p: 1.0,
                    class: TowerClass::Tall,
                }
            })
            .collect();
        TowerField {
            endpoints: [
                Tower {
                    id: 0,
                    position: a,
                    height_m: 100.0,
                    availability_p: 1.0,
                    class: TowerClass::Tall,
                },
                Tower {
                    id: 1,
                    position: b,
                    height_m: 100.0,
                    availability_p: 1.0,
                    class: TowerClass::Tall,
                },
            ],
            towers,
            spec,
        }
    }

    #[test]
    fn collinear_chain_is_used_in_order_by_both_planners() {
        // ~503 km total; 10 intermediates make ~45 km hops, feasible.
        let field = collinear_field(10);
        let graph = build_feasibility_graph(
            &field,
            &RadioProfile::fiducial(),
            &AtmosphereModel::default(),
            1,
        )
        .unwrap();
        let optimal = plan_optimal_route(&graph).unwrap();
        let greedy = plan_greedy_route(&graph).unwrap();
        assert!(
            optimal.metrics.d_ex_km.abs() < 0.05,
            "{}",
            optimal.metrics.d_ex_km
        );
        assert!(greedy.metrics.d_ex_km.abs() < 0.05);
        // Optimal takes the longest feasible strides; greedy the same here
        // or at worst an equally straight subdivision.
        assert!(optimal.total_latency_us <= greedy.total_latency_us + 1e-9);
    }

    #[test]
    fn disconnected_graph_reported() {
        // Two towers 40 km apart but endpoints ~500 km apart with nothing
        // else: source connects nowhere.
        let field = collinear_field(1);
        let graph = build_feasibility_graph(
            &field,
            &RadioProfile::fiducial(),
            &AtmosphereModel::default(),
            1,
        );
        // The lone middle tower is ~250 km from each endpoint: no links.
        assert!(matches!(graph, Err(RouteError::NoConnectivity)));
    }
}
