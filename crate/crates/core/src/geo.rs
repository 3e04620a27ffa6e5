//! Spherical-earth geodesy: great-circle distances and initial bearings.
//!
//! A sphere of radius 6371.0 km is accurate to well under a percent over the
//! ~1200 km paths this toolkit deals in, which is far inside the tolerance of
//! every downstream latency figure.

use crate::CoreError;
use serde::{Deserialize, Serialize};

/// Mean earth radius in kilometers.
pub const EARTH_RADIUS_KM: f64 = 6371.0;

/// A point on the earth in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeoPoint {
    pub lat_deg: f64,
    pub lon_deg: f64,
}

impl GeoPoint {
    pub fn new(lat_deg: f64, lon_deg: f64) -> Result<Self, CoreError> {
        if !(-90.0..=90.0).contains(&lat_deg) || lat_deg.is_nan() {
            return Err(CoreError::LatitudeRange(lat_deg));
        }
        if !(-180.0..=180.0).contains(&lon_deg) || lon_deg.is_nan() {
            return Err(CoreError::LongitudeRange(lon_deg));
        }
        Ok(Self { lat_deg, lon_deg })
    }

    fn lat_rad(self) -> f64 {
        self.lat_deg.to_radians()
    }

    fn lon_rad(self) -> f64 {
        self.lon_deg.to_radians()
    }
}

/// Globex matching engine site, Aurora IL.
pub const AURORA_IL: GeoPoint = GeoPoint {
    lat_deg: 41.80,
    lon_deg: -88.24,
};

/// Nasdaq matching engine site, Carteret NJ.
pub const CARTERET_NJ: GeoPoint = GeoPoint {
    lat_deg: 40.58,
    lon_deg: -74.25,
};

/// Haversine great-circle distance in kilometers. Total, symmetric, >= 0.
pub fn great_circle_distance(a: GeoPoint, b: GeoPoint) -> f64 {
    let (phi1, phi2) = (a.lat_rad(), b.lat_rad());
    let dphi = phi2 - phi1;
    let dlambda = b.lon_rad() - a.lon_rad();

    let s1 = (dphi / 2.0).sin();
    let s2 = (dlambda / 2.0).sin();
    let h = s1 * s1 + phi1.cos() * phi2.cos() * s2 * s2;
    2.0 * EARTH_RADIUS_KM * h.sqrt().min(1.0).asin()
}

/// Point reached by traveling `distance_km` from `start` on initial bearing
/// `bearing_rad`.
pub fn destination_point(start: GeoPoint, bearing_rad: f64, distance_km: f64) -> GeoPoint {
    let delta = distance_km / EARTH_RADIUS_KM;
    let phi1 = start.lat_rad();
    let lambda1 = start.lon_rad();
    let phi2 = (phi1.sin() * delta.cos() + phi1.cos() * delta.sin() * bearing_rad.cos()).asin();
    let lambda2 = lambda1
        + (bearing_rad.sin() * delta.sin() * phi1.cos())
            .atan2(delta.cos() - phi1.sin() * phi2.sin());
    let lon = (lambda2.to_degrees() + 540.0).rem_euclid(360.0) - 180.0;
    GeoPoint {
        lat_deg: phi2.to_degrees().clamp(-90.0, 90.0),
        lon_deg: lon,
    }
}

/// Point a fraction `f` of the way along the great circle from `a` to `b`.
pub fn intermediate_point(a: GeoPoint, b: GeoPoint, f: f64) -> GeoPoint {
    let d = great_circle_distance(a, b) / EARTH_RADIUS_KM;
    if d == 0.0 {
        return a;
    }
    let (phi1, lambda1) = (a.lat_rad(), a.lon_rad());
    let (phi2, lambda2) = (b.lat_rad(), b.lon_rad());
    let ka = ((1.0 - f) * d).sin() / d.sin();
    let kb = (f * d).sin() / d.sin();
    let x = ka * phi1.cos() * lambda1.cos() + kb * phi2.cos() * lambda2.cos();
    let y = ka * phi1.cos() * lambda1.sin() + kb * phi2.cos() * lambda2.sin();
    let z = ka * phi1.sin() + kb * phi2.sin();
    GeoPoint {
        lat_deg: z.atan2((x * x + y * y).sqrt()).to_degrees(),
        lon_deg: y.atan2(x).to_degrees(),
    }
}

/// Initial great-circle azimuth from `a` toward `b`, in `[0, 2*pi)` measured
/// clockwise from north. Errors on coincident points.
pub fn initial_bearing(a: GeoPoint, b: GeoPoint) -> Result<f64, CoreError> {
    if a == b {
        return Err(CoreError::UndefinedBearing);
    }
    let (phi1, phi2) = (a.lat_rad(), b.lat_rad());
    let dlambda = b.lon_rad() - a.lon_rad();

    let y = dlambda.sin() * phi2.cos();
    let x = phi1.cos() * phi2.sin() - phi1.sin() * phi2.cos() * dlambda.cos();
    let theta = y.atan2(x);
    Ok(theta.rem_euclid(std::f64::consts::TAU))
}
