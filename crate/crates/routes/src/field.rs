//! Synthetic tower corridors.

use crate::RouteError;
use lagline_core::{
    destination_point, great_circle_distance, initial_bearing, intermediate_point, GeoPoint,
};
use lagline_mwphys::{Tower, TowerClass};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

/// One tower population: its share of the field, height range, and the
/// probability that a usable height on such a tower is actually rentable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassSpec {
    pub fraction: f64,
    pub height_range_m: (f64, f64),
    pub availability: f64,
}

/// A rectangular corridor around the geodesic between two endpoints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub endpoint_a: GeoPoint,
    pub endpoint_b: GeoPoint,
    pub half_width_km: f64,
    pub density_per_km2: f64,
    pub classes: Vec<ClassSpec>,
    pub endpoint_height_m: f64,
    /// Generic obstruction height hops must clear, meters.
    pub obstruction_m: f64,
}

impl FieldSpec {
    /// The 1200 km x 140 km default corridor between the two matching-engine
    /// sites. Density and class mix are calibrated so that the mean count of
    /// forward-feasible live neighbors per tower sits in the 5-10 band.
    pub fn default_corridor() -> Self {
        Self {
            endpoint_a: lagline_core::geo::AURORA_IL,
            endpoint_b: lagline_core::geo::CARTERET_NJ,
            half_width_km: 70.0,
            density_per_km2: 0.016,
            classes: vec![
                ClassSpec {
                    fraction: 0.55,
                    height_range_m: (20.0, 40.0),
                    availability: 0.9,
                },
                ClassSpec {
                    fraction: 0.15,
                    height_range_m: (40.0, 80.0),
                    availability: 0.7,
                },
                ClassSpec {
                    fraction: 0.30,
                    height_range_m: (90.0, 130.0),
                    availability: 0.5,
                },
            ],
            endpoint_height_m: 110.0,
            obstruction_m: 10.0,
        }
    }

    pub fn length_km(&self) -> f64 {
        great_circle_distance(self.endpoint_a, self.endpoint_b)
    }

    pub fn area_km2(&self) -> f64 {
        self.length_km() * 2.0 * self.half_width_km
    }

    fn validate(&self) -> Result<(), RouteError> {
        if self.area_km2() <= 0.0 {
            return Err(RouteError::ZeroArea);
        }
        let sum: f64 = self.classes.iter().map(|c| c.fraction).sum();
        if self.classes.iter().any(|c| c.fraction < 0.0) || (sum - 1.0).abs() > 1e-9 {
            return Err(RouteError::BadClassFractions(sum));
        }
        Ok(())
    }
}

/// Scattered towers plus the two endpoint sites.
#[derive(Debug, Clone)]
pub struct TowerField {
    pub spec: FieldSpec,
    /// Endpoint A then endpoint B, always available.
    pub endpoints: [Tower; 2],
    pub towers: Vec<Tower>,
}

/// Scatter towers across the corridor: Poisson count at the configured
/// density, uniform positions, heights and availability drawn per class.
/// Deterministic by seed.
pub fn generate_tower_field(spec: &FieldSpec, seed: u64) -> Result<TowerField, RouteError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let length = spec.length_km();
    let along = initial_bearing(spec.endpoint_a, spec.endpoint_b).expect("distinct endpoints");

    // Poisson count via exponential gaps: events of a unit-rate process in
    // [0, lambda].
    let lambda = spec.density_per_km2 * spec.area_km2();
    let mut count = 0usize;
    let mut acc = 0.0f64;
    loop {
        let u: f64 = rng.gen();
        acc += -(1.0 - u).ln();
        if acc > lambda {
            break;
        }
        count += 1;
    }

    let mut towers = Vec::with_capacity(count);
    for id in 0..count {
        let s: f64 = rng.gen_range(0.0..length);
        let t: f64 = rng.gen_range(-spec.half_width_km..spec.half_width_km);
        let on_axis = intermediate_point(spec.endpoint_a, spec.endpoint_b, s / length);
        // Offset perpendicular to the local course.
        let course = initial_bearing(on_axis, spec.endpoint_b).unwrap_or(along);
        let position = destination_point(on_axis, course + FRAC_PI_2, t);

        let class_pick: f64 = rng.gen();
        let mut cum = 0.0;
        let mut class_spec = *spec.classes.last().expect("validated non-empty");
        for c in &spec.classes {
            cum += c.fraction;
            if class_pick < cum {
                class_spec = *c;
                break;
            }
        }
        let height = rng.gen_range(class_spec.height_range_m.0..class_spec.height_range_m.1);
        towers.push(Tower {
            id: id as u32 + 2,
            position,
            height_m: height,
            availability_p: class_spec.availability,
            class: TowerClass::for_height(height),
        });
    }

    let endpoint = |id: u32, position: GeoPoint| Tower {
        id,
        position,
        height_m: spec.endpoint_height_m,
        availability_p: 1.0,
        class: TowerClass::for_height(spec.endpoint_height_m),
    };
    Ok(TowerField {
        spec: spec.clone(),
        endpoints: [endpoint(0, spec.endpoint_a), endpoint(1, spec.endpoint_b)],
        towers,
    })
}
