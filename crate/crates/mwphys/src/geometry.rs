//! Excess-distance geometry of heading changes.

/// Above this heading change the small-angle expansion degrades; callers
/// should surface a warning.
pub const SMALL_ANGLE_WARN_RAD: f64 = 0.3;

/// Which local hop configuration the bend sits in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BendGeometry {
    /// Single heading change between two hops: `dD_ex = D (da)^2 / 8`.
    TwoHop,
    /// Two equal-magnitude opposite-sign changes across three hops:
    /// `dD_ex = D (da)^2 / 4`.
    ThreeHop,
}

/// Excess distance contributed by a heading change of `delta_alpha` radians
/// over hops totaling `d_km`. Small-angle estimate; see
/// [`SMALL_ANGLE_WARN_RAD`].
pub fn bend_excess_km(delta_alpha_rad: f64, d_km: f64, geometry: BendGeometry) -> f64 {
    let a2 = delta_alpha_rad * delta_alpha_rad;
    match geometry {
        BendGeometry::TwoHop => d_km * a2 / 8.0,
        BendGeometry::ThreeHop => d_km * a2 / 4.0,
    }
}

/// Expected excess distance of hop-by-hop greedy planning with `n_near` live
/// forward links per tower: `(1/4) (pi / n_near)^2 D_tot`.
pub fn greedy_excess_estimate_km(n_near: f64, d_tot_km: f64) -> f64 {
    let deviation = std::f64::consts::PI / n_near;
    0.25 * deviation * deviation * d_tot_km
}
