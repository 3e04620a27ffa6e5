//! Per-route distance and latency metrics, matching the published route
//! table column order.

use crate::radio::RadioProfile;
use crate::MwError;
use lagline_core::{great_circle_distance, GeoPoint, SPEED_OF_LIGHT_M_PER_S};
use serde::{Deserialize, Serialize};

/// Light time per kilometer in microseconds (~3.3356 us/km).
pub const US_PER_KM: f64 = 1.0e9 / SPEED_OF_LIGHT_M_PER_S;

/// Cabling detour per intermediate tower: ~150 m of path and ~0.75 us at
/// 0.66c signal speed.
pub const CABLING_KM_PER_TOWER: f64 = 0.150;
pub const CABLING_US_PER_TOWER: f64 = 0.75;

/// Atmospheric refractivity expressed as an effective-earth-radius factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtmosphereModel {
    pub k_factor: f64,
}

impl AtmosphereModel {
    pub fn new(k_factor: f64) -> Self {
        Self { k_factor }
    }
}

impl Default for AtmosphereModel {
    /// Standard refraction, K = 4/3.
    fn default() -> Self {
        Self {
            k_factor: 4.0 / 3.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TowerClass {
    /// Under 40 m.
    Short,
    /// 40 to 80 m.
    Medium,
    /// 80 m and above.
    Tall,
}

impl TowerClass {
    pub fn for_height(height_m: f64) -> Self {
        if height_m >= 80.0 {
            TowerClass::Tall
        } else if height_m >= 40.0 {
            TowerClass::Medium
        } else {
            TowerClass::Short
        }
    }
}

/// A relay site.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tower {
    pub id: u32,
    pub position: GeoPoint,
    pub height_m: f64,
    /// Probability the tower (and a usable height on it) is rentable.
    pub availability_p: f64,
    pub class: TowerClass,
}

/// An ordered tower chain between endpoints A and B.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Route {
    pub points: Vec<GeoPoint>,
}

impl Route {
    pub fn new(points: Vec<GeoPoint>) -> Result<Self, MwError> {
        if points.len() < 2 {
            return Err(MwError::RouteTooShort(points.len()));
        }
        for (i, pair) in points.windows(2).enumerate() {
            if pair[0] == pair[1] {
                return Err(MwError::CoincidentTowers(i));
            }
        }
        Ok(Self { points })
    }

    pub fn n_hops(&self) -> usize {
        self.points.len() - 1
    }

    pub fn endpoints(&self) -> (GeoPoint, GeoPoint) {
        (self.points[0], *self.points.last().unwrap())
    }

    pub fn hop_lengths_km(&self) -> Vec<f64> {
        self.points
            .windows(2)
            .map(|w| great_circle_distance(w[0], w[1]))
            .collect()
    }
}

/// One route-table row: hop count, distances, and the latency split into its
/// distance and equipment parts. `l_ex = l_equip + l_d` exactly, and
/// `l_min = d_geo / c + l_ex` is the total one-way latency.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouteMetrics {
    pub n_hops: usize,
    pub d_geo_km: f64,
    pub d_tot_km: f64,
    pub d_ex_km: f64,
    /// `d_ex / c`, microseconds.
    pub l_d_us: f64,
    /// `n_hops x l_rad`, microseconds.
    pub l_equip_us: f64,
    /// `l_equip + l_d`, microseconds.
    pub l_ex_us: f64,
    /// `d_geo / c + l_ex`, milliseconds.
    pub l_min_ms: f64,
    /// Extra path from tower cabling, when requested; zero otherwise.
    pub cabling_km: f64,
    pub cabling_us: f64,
}

fn assemble_metrics(
    n_hops: usize,
    d_geo_km: f64,
    d_tot_km: f64,
    d_ex_km: f64,
    l_rad_us: f64,
    intermediate_towers: usize,
    include_cabling: bool,
) -> RouteMetrics {
    let l_d_us = d_ex_km * US_PER_KM;
    let l_equip_us = n_hops as f64 * l_rad_us;
    let l_ex_us = l_equip_us + l_d_us;
    let (cabling_km, cabling_us) = if include_cabling {
        (
            CABLING_KM_PER_TOWER * intermediate_towers as f64,
            CABLING_US_PER_TOWER * intermediate_towers as f64,
        )
    } else {
        (0.0, 0.0)
    };
    RouteMetrics {
        n_hops,
        d_geo_km,
        d_tot_km,
        d_ex_km,
        l_d_us,
        l_equip_us,
        l_ex_us,
        l_min_ms: d_geo_km * US_PER_KM / 1000.0 + l_ex_us / 1000.0,
        cabling_km,
        cabling_us,
    }
}

/// Metrics for an explicit tower chain.
pub fn route_metrics(
    route: &Route,
    profile: &RadioProfile,
    include_cabling: bool,
) -> Result<RouteMetrics, MwError> {
    let (a, b) = route.endpoints();
    let d_geo = great_circle_distance(a, b);
    let d_tot: f64 = route.hop_lengths_km().iter().sum();
    let intermediates = route.points.len().saturating_sub(2);
    Ok(assemble_metrics(
        route.n_hops(),
        d_geo,
        d_tot,
        d_tot - d_geo,
        profile.l_rad_us,
        intermediates,
        include_cabling,
    ))
}

/// Metrics from already-aggregated distances, as when reproducing a published
/// table row. When `d_ex_km` is `None` it defaults to `d_tot - d_geo`.
pub fn route_metrics_from_distances(
    n_hops: usize,
    d_geo_km: f64,
    d_tot_km: f64,
    d_ex_km: Option<f64>,
    l_rad_us: f64,
) -> RouteMetrics {
    let d_ex = d_ex_km.unwrap_or(d_tot_km - d_geo_km);
    assemble_metrics(
        n_hops,
        d_geo_km,
        d_tot_km,
        d_ex,
        l_rad_us,
        n_hops.saturating_sub(1),
        false,
    )
}

pub const ROUTE_TABLE_HEADER: &str =
    "licensee,n_hops,d_geo_km,d_tot_km,d_ex_km,l_d_us,n_lrad_us,l_ex_us,bitrate_mbps";

/// Emit rows in route-table column order.
pub fn write_route_table(rows: &[(String, RouteMetrics, Option<f64>)]) -> String {
    let mut out = String::new();
    out.push_str(ROUTE_TABLE_HEADER);
    out.push('\n');
    for (name, m, bitrate) in rows {
        let bitrate = bitrate.map(|b| format!("{b}")).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{:.1},{:.1},{:.1},{:.1},{:.1},{:.1},{}\n",
            name,
            m.n_hops,
            m.d_geo_km,
            m.d_tot_km,
            m.d_ex_km,
            m.l_d_us,
            m.l_equip_us,
            m.l_ex_us,
            bitrate
        ));
    }
    out
}
