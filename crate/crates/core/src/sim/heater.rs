//! Heater characterization: nominal power and the constant convective /
//! radiative split per heater family. Heater thermal inertia is neglected.

use serde::{Deserialize, Serialize};

use crate::survey::HeaterType;

/// Default radiative fraction per heater family; the remainder is convective.
pub fn default_radiative_fraction(kind: HeaterType) -> f64 {
    match kind {
        HeaterType::Convector => 0.15,
        HeaterType::RadiantPanel => 0.55,
        HeaterType::SoftHeat => 0.35,
        HeaterType::Accumulation => 0.40,
        HeaterType::Water => 0.30,
        HeaterType::Wood => 0.50,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeaterSpec {
    pub kind: HeaterType,
    /// Sum of nominal powers of all heaters in the room, W.
    pub p_nom_w: f64,
    /// Radiated share of the emitted flux, constant over a run.
    pub radiative_fraction: f64,
    /// Mobile heaters (the auxiliary unit) are modeled separately.
    pub mobile: bool,
    /// Burn duration after each reload, for wood stoves.
    pub wood_burn_s: i64,
}

impl HeaterSpec {
    pub fn new(kind: HeaterType, p_nom_w: f64) -> Self {
        Self {
            kind,
            p_nom_w,
            radiative_fraction: default_radiative_fraction(kind),
            mobile: false,
            wood_burn_s: 4 * 3600,
        }
    }

    pub fn off() -> Self {
        Self::new(HeaterType::Convector, 0.0)
    }

    pub fn split(&self, power_w: f64) -> (f64, f64) {
        let radiative = power_w * self.radiative_fraction;
        (power_w - radiative, radiative)
    }
}
