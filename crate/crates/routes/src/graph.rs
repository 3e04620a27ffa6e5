//! Live-link graphs over a tower field.

use crate::field::TowerField;
use crate::RouteError;
use lagline_core::great_circle_distance;
use lagline_mwphys::{
    hop_feasible, max_hop_length_km, AtmosphereModel, RadioProfile, Tower, US_PER_KM,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Nodes are the two endpoints (indices 0 and 1) followed by the towers that
/// survived the availability draw; an edge is a feasible hop weighted by its
/// one-way latency `D/c + L_rad` in microseconds.
#[derive(Debug, Clone)]
pub struct FeasibilityGraph {
    pub nodes: Vec<Tower>,
    pub adjacency: Vec<Vec<(u32, f64)>>,
    pub profile: RadioProfile,
    pub atmosphere: AtmosphereModel,
    pub obstruction_m: f64,
}

impl FeasibilityGraph {
    pub const SOURCE: usize = 0;
    pub const TARGET: usize = 1;

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|a| a.len()).sum::<usize>() / 2
    }
}

/// Draw tower availability by seed, then connect every feasible pair.
pub fn build_feasibility_graph(
    field: &TowerField,
    profile: &RadioProfile,
    atmosphere: &AtmosphereModel,
    availability_seed: u64,
) -> Result<FeasibilityGraph, RouteError> {
    let mut rng = ChaCha8Rng::seed_from_u64(availability_seed);
    let mut nodes: Vec<Tower> = field.endpoints.to_vec();
    for tower in &field.towers {
        if rng.gen::<f64>() < tower.availability_p {
            nodes.push(*tower);
        }
    }

    // The longest hop any pair can make bounds the neighbor search.
    let tallest = nodes.iter().map(|t| t.height_m).fold(0.0f64, f64::max);
    let reach_km = max_hop_length_km(profile, atmosphere, tallest, field.spec.obstruction_m)
        .map_err(RouteError::Mw)?;

    // Sweep in longitude: only pairs within reach need a feasibility check.
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by(|&a, &b| {
        nodes[a]
            .position
            .lon_deg
            .partial_cmp(&nodes[b].position.lon_deg)
            .unwrap()
    });
    let max_abs_lat = nodes
        .iter()
        .map(|t| t.position.lat_deg.abs())
        .fold(0.0f64, f64::max);
    let km_per_lon_deg = 111.195 * max_abs_lat.to_radians().cos();

    let mut adjacency: Vec<Vec<(u32, f64)>> = vec![Vec::new(); nodes.len()];
    for (rank, &i) in order.iter().enumerate() {
        for &j in &order[rank + 1..] {
            let dlon = nodes[j].position.lon_deg - nodes[i].position.lon_deg;
            if dlon * km_per_lon_deg > reach_km {
                break;
            }
            let d = great_circle_distance(nodes[i].position, nodes[j].position);
            if d > reach_km || d == 0.0 {
                continue;
            }
            if hop_feasible(
                d,
                profile,
                atmosphere,
                nodes[i].height_m,
                nodes[j].height_m,
                field.spec.obstruction_m,
            ) {
                let weight = d * US_PER_KM + profile.l_rad_us;
                adjacency[i].push((j as u32, weight));
                adjacency[j].push((i as u32, weight));
            }
        }
    }
    for adj in &mut adjacency {
        adj.sort_by_key(|a| a.0);
    }

    if adjacency[FeasibilityGraph::SOURCE].is_empty()
        || adjacency[FeasibilityGraph::TARGET].is_empty()
    {
        return Err(RouteError::NoConnectivity);
    }
    Ok(FeasibilityGraph {
        nodes,
        adjacency,
        profile: *profile,
        atmosphere: *atmosphere,
        obstruction_m: field.spec.obstruction_m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ClassSpec, FieldSpec};
    use lagline_core::GeoPoint;
    use lagline_mwphys::TowerClass;

    fn two_tower_field(separation_index: f64) -> TowerField {
        // Endpoints separation_index degrees of longitude apart at lat 41.
        let spec = FieldSpec {
            endpoint_a: GeoPoint::new(41.0, -88.0).unwrap(),
            endpoint_b: GeoPoint::new(41.0, -88.0 + separation_index).unwrap(),
            half_width_km: 10.0,
            density_per_km2: 0.0,
            classes: vec![ClassSpec {
                fraction: 1.0,
                height_range_m: (90.0, 100.0),
                availability: 1.0,
            }],
            endpoint_height_m: 100.0,
            obstruction_m: 10.0,
        };
        TowerField {
            endpoints: [
                Tower {
                    id: 0,
                    position: spec.endpoint_a,
                    height_m: 100.0,
                    availability_p: 1.0,
                    class: TowerClass::Tall,
                },
                Tower {
                    id: 1,
                    position: spec.endpoint_b,
                    height_m: 100.0,
                    availability_p: 1.0,
                    class: TowerClass::Tall,
                },
            ],
            towers: vec![],
            spec,
        }
    }

    #[test]
    fn forty_km_pair_connects_eighty_does_not() {
        let profile = RadioProfile::fiducial();
        let atm = AtmosphereModel::default();
        // ~0.48 deg lon at lat 41 is ~40 km.
        let near = two_tower_field(0.48);
        let graph = build_feasibility_graph(&near, &profile, &atm, 1).unwrap();
        assert_eq!(graph.edge_count(), 1);

        // ~0.95 deg is ~80 km: beyond clearance, endpoints isolated.
        let far = two_tower_field(0.95);
        assert!(matches!(
            build_feasibility_graph(&far, &profile, &atm, 1),
            Err(RouteError::NoConnectivity)
        ));
    }

    #[test]
    fn availability_draw_is_seeded() {
        let mut spec = FieldSpec::default_corridor();
        spec.density_per_km2 = 0.02;
        let field = crate::field::generate_tower_field(&spec, 5).unwrap();
        let profile = RadioProfile::fiducial();
        let atm = AtmosphereModel::default();
        let a = build_feasibility_graph(&field, &profile, &atm, 7).unwrap();
        let b = build_feasibility_graph(&field, &profile, &atm, 7).unwrap();
        assert_eq!(a.nodes.len(), b.nodes.len());
        assert_eq!(a.adjacency, b.adjacency);
        let c = build_feasibility_graph(&field, &profile, &atm, 8).unwrap();
        assert_ne!(a.nodes.len(), c.nodes.len());
    }
}
