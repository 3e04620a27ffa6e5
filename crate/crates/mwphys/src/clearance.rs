//! Path-clearance limits on hop length.
//!
//! A hop of length `D` must clear the first Fresnel zone plus the effective
//! earth bulge plus any obstruction height, all evaluated at the hop
//! midpoint: `h_tow > h_fres + h_earth + h_obs`.

use crate::metrics::AtmosphereModel;
use crate::radio::RadioProfile;
use crate::MwError;

/// First-Fresnel-zone radius at the midpoint of a `d_km` hop at `f_ghz`:
/// `8.7 m x sqrt(D / 1 km) x sqrt(1 GHz / f)`.
pub fn fresnel_radius_m(d_km: f64, f_ghz: f64) -> f64 {
    8.7 * (d_km).sqrt() * (f_ghz).sqrt().recip()
}

/// Effective earth bulge at the hop midpoint: `(1/50) m x (D / 1 km)^2 / K`,
/// where `K` is the effective-earth-radius factor.
pub fn earth_bulge_m(d_km: f64, k_factor: f64) -> f64 {
    (d_km * d_km) / 50.0 / k_factor
}

/// Does a hop of `d_km` between towers of the given heights clear the path?
///
/// Unequal towers use the conservative `min(h_a, h_b)`; the equal-height case
/// reduces to the single-tower constraint.
pub fn hop_feasible(
    d_km: f64,
    profile: &RadioProfile,
    atmosphere: &AtmosphereModel,
    h_tow_a_m: f64,
    h_tow_b_m: f64,
    h_obs_m: f64,
) -> bool {
    let clearance_needed = fresnel_radius_m(d_km, profile.freq_ghz)
        + earth_bulge_m(d_km, atmosphere.k_factor)
        + h_obs_m;
    h_tow_a_m.min(h_tow_b_m) > clearance_needed
}

/// Longest feasible hop for equal towers of height `h_tow_m`, by bisection to
/// 0.01 km on the clearance equality.
pub fn max_hop_length_km(
    profile: &RadioProfile,
    atmosphere: &AtmosphereModel,
    h_tow_m: f64,
    h_obs_m: f64,
) -> Result<f64, MwError> {
    let feasible = |d: f64| hop_feasible(d, profile, atmosphere, h_tow_m, h_tow_m, h_obs_m);
    let mut lo = 1e-4;
    if !feasible(lo) {
        return Err(MwError::NoFeasibleHop {
            h_tow: h_tow_m,
            h_obs: h_obs_m,
        });
    }
    let mut hi = 1.0;
    while feasible(hi) {
        lo = hi;
        hi *= 2.0;
        if hi > 1e5 {
            break;
        }
    }
    while hi - lo > 0.01 {
        let mid = 0.5 * (lo + hi);
        if feasible(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
