//! Climate zones and the department assignment table.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::WeatherError;

/// One of the eight thermal zones, with representative coordinates and the
/// parameters driving the synthetic weather generator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClimateZone {
    pub id: u8,
    pub name: String,
    pub latitude_deg: f64,
    pub longitude_deg: f64,
    pub t_jan_mean_c: f64,
    pub annual_swing_c: f64,
    pub diurnal_swing_c: f64,
    pub cloud_mean: f64,
}

/// The zone list plus the department -> zone id table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClimateZones {
    pub zones: Vec<ClimateZone>,
    pub departments: BTreeMap<String, u8>,
}

const DEFAULT_ZONES: &str = include_str!("../../data/climate_zones.ron");

impl ClimateZones {
    /// The table bundled with the crate.
    pub fn bundled() -> Self {
        Self::from_ron(DEFAULT_ZONES).expect("bundled climate zone table is valid")
    }

    pub fn load(path: &Path) -> Result<Self, WeatherError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_ron(&text)
    }

    pub fn from_ron(text: &str) -> Result<Self, WeatherError> {
        let zones: ClimateZones =
            ron::from_str(text).map_err(|e| WeatherError::BadZoneTable { detail: e.to_string() })?;
        zones.validate()?;
        Ok(zones)
    }

    fn validate(&self) -> Result<(), WeatherError> {
        if self.zones.len() != 8 {
            return Err(WeatherError::BadZoneTable {
                detail: format!("expected exactly 8 zones, got {}", self.zones.len()),
            });
        }
        for (i, z) in self.zones.iter().enumerate() {
            if z.id as usize != i + 1 {
                return Err(WeatherError::BadZoneTable {
                    detail: format!("zone ids must be 1..=8 in order, found {} at {}", z.id, i),
                });
            }
        }
        for (dept, id) in &self.departments {
            if !(1..=8).contains(id) {
                return Err(WeatherError::BadZoneTable {
                    detail: format!("department {dept} maps to unknown zone {id}"),
                });
            }
        }
        Ok(())
    }

    pub fn zone(&self, id: u8) -> Result<&ClimateZone, WeatherError> {
        self.zones
            .iter()
            .find(|z| z.id == id)
            .ok_or(WeatherError::UnknownZone { id })
    }

    pub fn zone_for_department(&self, department: &str) -> Result<&ClimateZone, WeatherError> {
        let id = self
            .departments
            .get(department)
            .copied()
            .ok_or_else(|| WeatherError::UnknownDepartment { department: department.to_string() })?;
        self.zone(id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_table_is_total_over_its_department_list() {
        let zones = ClimateZones::bundled();
        assert_eq!(zones.zones.len(), 8);
        assert_eq!(zones.departments.len(), 96);
        for dept in zones.departments.keys() {
            zones.zone_for_department(dept).unwrap();
        }
    }

    #[test]
    fn unknown_department_errors() {
        let zones = ClimateZones::bundled();
        assert!(matches!(
            zones.zone_for_department("99"),
            Err(WeatherError::UnknownDepartment { .. })
        ));
    }

    #[test]
    fn paris_is_zone_1_and_marseille_zone_8() {
        let zones = ClimateZones::bundled();
        assert_eq!(zones.zone_for_department("75").unwrap().id, 1);
        assert_eq!(zones.zone_for_department("13").unwrap().id, 8);
    }
}
