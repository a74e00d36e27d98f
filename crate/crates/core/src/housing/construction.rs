//! Era-indexed construction records: material layer stacks and envelope
//! coefficients.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::ModelError;
use crate::survey::EraBand;

/// One homogeneous material layer. Stacks are ordered outside -> inside.
/// Serialized as a compact 5-tuple, see the data-file header for field order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "LayerTuple", into = "LayerTuple")]
pub struct MaterialLayer {
    pub name: String,
    pub conductivity_w_mk: f64,
    pub density_kg_m3: f64,
    pub specific_heat_j_kgk: f64,
    pub thickness_m: f64,
}

type LayerTuple = (String, f64, f64, f64, f64);

impl From<LayerTuple> for MaterialLayer {
    fn from((name, conductivity_w_mk, density_kg_m3, specific_heat_j_kgk, thickness_m): LayerTuple) -> Self {
        Self { name, conductivity_w_mk, density_kg_m3, specific_heat_j_kgk, thickness_m }
    }
}

impl From<MaterialLayer> for LayerTuple {
    fn from(l: MaterialLayer) -> Self {
        (l.name, l.conductivity_w_mk, l.density_kg_m3, l.specific_heat_j_kgk, l.thickness_m)
    }
}

impl MaterialLayer {
    pub fn resistance_m2k_w(&self) -> f64 {
        self.thickness_m / self.conductivity_w_mk
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionRecord {
    pub era: EraBand,
    pub wall_layers: Vec<MaterialLayer>,
    pub roof_layers: Vec<MaterialLayer>,
    pub floor_layers: Vec<MaterialLayer>,
    pub partition_layers: Vec<MaterialLayer>,
    /// Separating walls/slabs towards neighbor dwellings (apartments).
    pub party_layers: Vec<MaterialLayer>,
    pub h_out_w_m2k: f64,
    pub h_in_w_m2k: f64,
    pub window_u_w_m2k: f64,
    pub window_shgc: f64,
    pub infiltration_ach: f64,
}

impl ConstructionRecord {
    /// Surface-to-surface wall U-value including both films.
    pub fn wall_u_value(&self) -> f64 {
        let r: f64 = self.wall_layers.iter().map(|l| l.resistance_m2k_w()).sum();
        1.0 / (1.0 / self.h_out_w_m2k + r + 1.0 / self.h_in_w_m2k)
    }

    fn validate(&self) -> Result<(), ModelError> {
        let layers = self
            .wall_layers
            .iter()
            .chain(&self.roof_layers)
            .chain(&self.floor_layers)
            .chain(&self.partition_layers)
            .chain(&self.party_layers);
        for l in layers {
            if !(l.conductivity_w_mk > 0.0
                && l.density_kg_m3 > 0.0
                && l.specific_heat_j_kgk > 0.0
                && l.thickness_m > 0.0)
            {
                return Err(ModelError::BadConstruction {
                    detail: format!("{}: non-physical layer `{}`", self.era, l.name),
                });
            }
        }
        if !(self.h_out_w_m2k > 0.0 && self.h_in_w_m2k > 0.0 && self.window_u_w_m2k > 0.0) {
            return Err(ModelError::BadConstruction {
                detail: format!("{}: non-positive film or window coefficient", self.era),
            });
        }
        if !(self.window_shgc > 0.0 && self.window_shgc <= 1.0) {
            return Err(ModelError::BadConstruction {
                detail: format!("{}: SHGC must be in (0,1]", self.era),
            });
        }
        if self.infiltration_ach < 0.0 {
            return Err(ModelError::BadConstruction {
                detail: format!("{}: negative infiltration", self.era),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionTable {
    pub records: Vec<ConstructionRecord>,
}

const DEFAULT_CONSTRUCTION: &str = include_str!("../../data/construction.ron");

impl ConstructionTable {
    pub fn bundled() -> Self {
        Self::from_ron(DEFAULT_CONSTRUCTION).expect("bundled construction table is valid")
    }

    pub fn load(path: &Path) -> Result<Self, ModelError> {
        let text = std::fs::read_to_string(path).map_err(|e| ModelError::BadConstruction {
            detail: format!("{}: {e}", path.display()),
        })?;
        Self::from_ron(&text)
    }

    pub fn from_ron(text: &str) -> Result<Self, ModelError> {
        let table: ConstructionTable = ron::Options::default()
            .from_str(text)
            .map_err(|e| ModelError::BadConstruction { detail: e.to_string() })?;
        for era in EraBand::ALL {
            if !table.records.iter().any(|r| r.era == *era) {
                return Err(ModelError::BadConstruction {
                    detail: format!("missing record for era {era}"),
                });
            }
        }
        for r in &table.records {
            r.validate()?;
        }
        Ok(table)
    }

    /// The record for a construction-year band.
    pub fn select_record(&self, era: EraBand) -> &ConstructionRecord {
        self.records
            .iter()
            .find(|r| r.era == era)
            .expect("table validated to cover every era")
    }
}
