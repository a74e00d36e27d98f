//! Dwelling template geometry, loaded from the bundled data file or a
//! user-supplied override.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::ModelError;
use crate::survey::{DwellingType, RoomId};

/// Boundary of a non-facade envelope surface (roof/floor).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnvelopeBoundary {
    Exterior,
    /// Faces another dwelling held at the configured neighbor temperature.
    Neighbor,
    Adiabatic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FacadeSpec {
    /// Relative to the plan with north up; must be one of 0/90/180/270.
    pub azimuth_offset_deg: f64,
    /// Opaque wall area, net of the window.
    pub wall_area_m2: f64,
    pub window_area_m2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoomGeometry {
    pub name: RoomId,
    pub area_m2: f64,
    pub facades: Vec<FacadeSpec>,
    /// Internal partitions to other rooms; declared on both rooms, areas must match.
    pub partitions: BTreeMap<RoomId, f64>,
    pub party_wall_area_m2: f64,
}

impl RoomGeometry {
    pub fn volume_m3(&self, ceiling_height_m: f64) -> f64 {
        self.area_m2 * ceiling_height_m
    }

    pub fn window_area_total(&self) -> f64 {
        self.facades.iter().map(|f| f.window_area_m2).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BuildingTemplate {
    pub template_id: DwellingType,
    pub reference_area_m2: f64,
    pub ceiling_height_m: f64,
    pub roof_boundary: EnvelopeBoundary,
    pub floor_boundary: EnvelopeBoundary,
    /// The room that may be declared unoccupied by the survey.
    pub optional_room: Option<RoomId>,
    pub rooms: Vec<RoomGeometry>,
}

impl BuildingTemplate {
    pub fn room(&self, name: RoomId) -> Option<&RoomGeometry> {
        self.rooms.iter().find(|r| r.name == name)
    }

    fn validate(&self) -> Result<(), ModelError> {
        let total: f64 = self.rooms.iter().map(|r| r.area_m2).sum();
        if (total - self.reference_area_m2).abs() > 1e-9 * self.reference_area_m2 {
            return Err(ModelError::BadTemplate {
                detail: format!(
                    "{}: room areas sum to {total}, reference is {}",
                    self.template_id, self.reference_area_m2
                ),
            });
        }
        for room in &self.rooms {
            for f in &room.facades {
                if ![0.0, 90.0, 180.0, 270.0].contains(&f.azimuth_offset_deg) {
                    return Err(ModelError::BadTemplate {
                        detail: format!(
                            "{}/{}: facade offset {} not a cardinal direction",
                            self.template_id, room.name, f.azimuth_offset_deg
                        ),
                    });
                }
            }
            for (&other, &area) in &room.partitions {
                let back = self
                    .room(other)
                    .and_then(|o| o.partitions.get(&room.name))
                    .copied();
                if back != Some(area) {
                    return Err(ModelError::BadTemplate {
                        detail: format!(
                            "{}: partition {}-{} not symmetric ({area} vs {back:?})",
                            self.template_id, room.name, other
                        ),
                    });
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TemplateSet {
    pub templates: Vec<BuildingTemplate>,
}

const DEFAULT_TEMPLATES: &str = include_str!("../../data/templates.ron");

impl TemplateSet {
    pub fn bundled() -> Self {
        Self::from_ron(DEFAULT_TEMPLATES).expect("bundled template file is valid")
    }

    pub fn load(path: &Path) -> Result<Self, ModelError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ModelError::BadTemplate { detail: format!("{}: {e}", path.display()) })?;
        Self::from_ron(&text)
    }

    pub fn from_ron(text: &str) -> Result<Self, ModelError> {
        let set: TemplateSet = ron::Options::default()
            .from_str(text)
            .map_err(|e| ModelError::BadTemplate { detail: e.to_string() })?;
        for t in &set.templates {
            t.validate()?;
        }
        Ok(set)
    }

    pub fn get(&self, id: DwellingType) -> Result<&BuildingTemplate, ModelError> {
        self.templates
            .iter()
            .find(|t| t.template_id == id)
            .ok_or(ModelError::UnknownTemplate { id })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_templates_are_valid_and_complete() {
        let set = TemplateSet::bundled();
        let mozart = set.get(DwellingType::MozartHouse).unwrap();
        let matisse = set.get(DwellingType::MatisseApartment).unwrap();
        assert_eq!(mozart.rooms.len(), 6);
        assert_eq!(matisse.rooms.len(), 5);
        assert_eq!(mozart.optional_room, Some(RoomId::Bedroom2));
        // house floor sits on grade, apartment is surrounded by neighbors
        assert_eq!(mozart.floor_boundary, EnvelopeBoundary::Adiabatic);
        assert_eq!(matisse.roof_boundary, EnvelopeBoundary::Neighbor);
    }

    #[test]
    fn area_fractions_are_scale_free() {
        let set = TemplateSet::bundled();
        for t in &set.templates {
            let total: f64 = t.rooms.iter().map(|r| r.area_m2).sum();
            assert!((total - t.reference_area_m2).abs() < 1e-9);
        }
    }

    #[test]
    fn asymmetric_partition_is_rejected() {
        let text = DEFAULT_TEMPLATES.replace("partitions: {living: 10.0, bathroom: 6.0}", "partitions: {living: 11.0, bathroom: 6.0}");
        assert!(matches!(
            TemplateSet::from_ron(&text),
            Err(ModelError::BadTemplate { .. })
        ));
    }
}
