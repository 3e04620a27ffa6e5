//! Propagation media and one-way light time.

use crate::CoreError;
use serde::{Deserialize, Serialize};

/// Speed of light in vacuum, meters per second (exact).
pub const SPEED_OF_LIGHT_M_PER_S: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MediumKind {
    /// Line-of-sight through air; treated as vacuum (air's n ~ 1.0003 is
    /// below the precision of any quoted figure here).
    VacuumAir,
    Fiber,
}

/// A signal-carrying medium with refractive index `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PropagationMedium {
    pub kind: MediumKind,
    pub n: f64,
}

impl PropagationMedium {
    pub fn vacuum_air() -> Self {
        Self {
            kind: MediumKind::VacuumAir,
            n: 1.0,
        }
    }

    /// Standard fiber with n = 1.4.
    pub fn fiber() -> Self {
        Self {
            kind: MediumKind::Fiber,
            n: 1.4,
        }
    }

    pub fn fiber_with_index(n: f64) -> Result<Self, CoreError> {
        if n >= 1.0 {
            Ok(Self {
                kind: MediumKind::Fiber,
                n,
            })
        } else {
            Err(CoreError::RefractiveIndex(n))
        }
    }
}

/// One-way propagation time in milliseconds: `n * d / c`.
pub fn light_time_ms(distance_km: f64, medium: PropagationMedium) -> f64 {
    medium.n * distance_km * 1_000.0 / SPEED_OF_LIGHT_M_PER_S * 1_000.0
}
