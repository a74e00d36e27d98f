//! Transform a survey record into a solvable building description plus its
//! season schedules.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::construction::{ConstructionRecord, MaterialLayer};
use super::orientation::{orientation_matisse, orientation_mozart};
use super::schedule::{firing_mask, heating_season_mask, shutter_schedule, tile_week, RoomSchedule, ScheduleSet};
use super::templates::{BuildingTemplate, EnvelopeBoundary};
use super::ModelError;
use crate::grid::TimeGrid;
use crate::sim::{ControllerSpec, HeaterSpec, PidGains};
use crate::survey::{
    ControllerKind, DwellingType, HeaterType, MonthDay, RoomId, SurveyRecord, TypicalWeek,
};
use crate::weather::{sunset_time, ClimateZone};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowSpec {
    pub area_m2: f64,
    pub u_w_m2k: f64,
    pub shgc: f64,
}

/// What the far side of a surface faces.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceBoundary {
    /// Outdoor air and sky; azimuth is absolute (after rotation).
    Exterior { zone: RoomId, azimuth_deg: f64 },
    /// Another room of the same dwelling.
    Partition { zone_a: RoomId, zone_b: RoomId },
    /// A neighbor dwelling at the configured fixed temperature.
    Neighbor { zone: RoomId },
    /// No heat flow at the far side (slab on grade).
    Adiabatic { zone: RoomId },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub label: String,
    pub boundary: SurfaceBoundary,
    /// Opaque area, net of any window.
    pub area_m2: f64,
    /// Outside -> inside. For partitions "outside" is zone_b's side.
    pub layers: Vec<MaterialLayer>,
    pub h_in_w_m2k: f64,
    pub h_out_w_m2k: f64,
    pub window: Option<WindowSpec>,
}

impl SurfaceSpec {
    /// Zones whose air volume this surface touches (1 or 2).
    pub fn zones(&self) -> (RoomId, Option<RoomId>) {
        match self.boundary {
            SurfaceBoundary::Exterior { zone, .. }
            | SurfaceBoundary::Neighbor { zone }
            | SurfaceBoundary::Adiabatic { zone } => (zone, None),
            SurfaceBoundary::Partition { zone_a, zone_b } => (zone_a, Some(zone_b)),
        }
    }

    pub fn touches(&self, room: RoomId) -> bool {
        let (a, b) = self.zones();
        a == room || b == Some(room)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZoneSpec {
    pub room: RoomId,
    pub floor_area_m2: f64,
    pub volume_m3: f64,
    /// False for a declared-empty Bedroom 2: unheated, never occupied.
    pub occupied: bool,
    pub infiltration_ach: f64,
    pub heater: HeaterSpec,
    pub controller: ControllerSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BuildingModel {
    pub dwelling_id: String,
    pub dwelling_type: DwellingType,
    pub scale_factor: f64,
    pub orientation_deg: f64,
    pub climate_zone_id: u8,
    pub aux_heater_power_w: f64,
    pub aux_heater_room: RoomId,
    pub zones: Vec<ZoneSpec>,
    pub surfaces: Vec<SurfaceSpec>,
}

impl BuildingModel {
    pub fn zone(&self, room: RoomId) -> Option<&ZoneSpec> {
        self.zones.iter().find(|z| z.room == room)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if !(self.scale_factor > 0.0) {
            return Err(ModelError::BadModel {
                detail: format!("scale factor {} must be positive", self.scale_factor),
            });
        }
        if ![0.0, 90.0, 180.0, 270.0].contains(&self.orientation_deg) {
            return Err(ModelError::BadModel {
                detail: format!("orientation {} not cardinal", self.orientation_deg),
            });
        }
        if self.zones.is_empty() {
            return Err(ModelError::BadModel { detail: "model has no zones".into() });
        }
        for s in &self.surfaces {
            let (a, b) = s.zones();
            for room in std::iter::once(a).chain(b) {
                if self.zone(room).is_none() {
                    return Err(ModelError::BadModel {
                        detail: format!("surface `{}` references missing zone {room}", s.label),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Knobs of the survey -> model transformation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BuildConfig {
    pub pid_gains: PidGains,
    pub deadband_halfwidth_k: f64,
    pub wood_burn_s: i64,
    /// Used when the survey leaves the heating dates blank.
    pub default_heating_on: MonthDay,
    pub default_heating_off: MonthDay,
    /// Setpoint used for rooms without control (never acted on).
    pub idle_setpoint_c: f64,
}

impl Default for BuildConfig {
    fn default() -> Self {
        Self {
            pid_gains: PidGains::default(),
            deadband_halfwidth_k: 0.25,
            wood_burn_s: 4 * 3600,
            default_heating_on: MonthDay::new(10, 15),
            default_heating_off: MonthDay::new(4, 15),
            idle_setpoint_c: 16.0,
        }
    }
}

/// Build the solvable model and its schedules for one record.
pub fn build_model(
    record: &SurveyRecord,
    template: &BuildingTemplate,
    construction: &ConstructionRecord,
    zone: &ClimateZone,
    grid: &TimeGrid,
    config: &BuildConfig,
) -> Result<(BuildingModel, ScheduleSet), ModelError> {
    if template.template_id != record.dwelling_type {
        return Err(ModelError::TemplateMismatch {
            expected: record.dwelling_type,
            got: template.template_id,
        });
    }
    record
        .validate()
        .map_err(|detail| ModelError::BadModel { detail })?;

    let scale = record.floor_area_m2 / template.reference_area_m2;
    let orientation_deg = match record.dwelling_type {
        DwellingType::MozartHouse => orientation_mozart(&record.is_south)?,
        DwellingType::MatisseApartment => orientation_matisse(template, &record.is_south)?,
    };

    let mut zones = Vec::new();
    let mut surfaces = Vec::new();
    for room in &template.rooms {
        let name = room.name;
        let occupied = !(Some(name) == template.optional_room && record.bedroom2_empty());

        for f in &room.facades {
            let azimuth_deg = (f.azimuth_offset_deg + orientation_deg).rem_euclid(360.0);
            surfaces.push(SurfaceSpec {
                label: format!("{name}:facade@{azimuth_deg}"),
                boundary: SurfaceBoundary::Exterior { zone: name, azimuth_deg },
                area_m2: f.wall_area_m2 * scale,
                layers: construction.wall_layers.clone(),
                h_in_w_m2k: construction.h_in_w_m2k,
                h_out_w_m2k: construction.h_out_w_m2k,
                window: (f.window_area_m2 > 0.0).then_some(WindowSpec {
                    area_m2: f.window_area_m2 * scale,
                    u_w_m2k: construction.window_u_w_m2k,
                    shgc: construction.window_shgc,
                }),
            });
        }
        if room.party_wall_area_m2 > 0.0 {
            surfaces.push(SurfaceSpec {
                label: format!("{name}:party"),
                boundary: SurfaceBoundary::Neighbor { zone: name },
                area_m2: room.party_wall_area_m2 * scale,
                layers: construction.party_layers.clone(),
                h_in_w_m2k: construction.h_in_w_m2k,
                h_out_w_m2k: construction.h_in_w_m2k,
                window: None,
            });
        }
        for (kind, boundary_kind, layers) in [
            ("roof", template.roof_boundary, &construction.roof_layers),
            ("floor", template.floor_boundary, &construction.floor_layers),
        ] {
            let boundary = match boundary_kind {
                EnvelopeBoundary::Exterior => SurfaceBoundary::Exterior {
                    zone: name,
                    azimuth_deg: 0.0,
                },
                EnvelopeBoundary::Neighbor => SurfaceBoundary::Neighbor { zone: name },
                EnvelopeBoundary::Adiabatic => SurfaceBoundary::Adiabatic { zone: name },
            };
            surfaces.push(SurfaceSpec {
                label: format!("{name}:{kind}"),
                boundary,
                area_m2: room.area_m2 * scale,
                layers: layers.clone(),
                h_in_w_m2k: construction.h_in_w_m2k,
                h_out_w_m2k: match boundary_kind {
                    EnvelopeBoundary::Exterior => construction.h_out_w_m2k,
                    _ => construction.h_in_w_m2k,
                },
                window: None,
            });
        }
        for (&other, &area) in &room.partitions {
            if name < other {
                surfaces.push(SurfaceSpec {
                    label: format!("{name}|{other}"),
                    boundary: SurfaceBoundary::Partition { zone_a: name, zone_b: other },
                    area_m2: area * scale,
                    layers: construction.partition_layers.clone(),
                    h_in_w_m2k: construction.h_in_w_m2k,
                    h_out_w_m2k: construction.h_in_w_m2k,
                    window: None,
                });
            }
        }

        let heater = if occupied {
            let kind = record.heater_type[&name];
            let mut h = HeaterSpec::new(kind, record.heater_power_w[&name]);
            h.wood_burn_s = config.wood_burn_s;
            h
        } else {
            HeaterSpec::off()
        };
        let controller = if occupied {
            ControllerSpec {
                kind: record.controller_type[&name],
                gains: config.pid_gains,
                deadband_halfwidth_k: config.deadband_halfwidth_k,
            }
        } else {
            ControllerSpec::none()
        };
        zones.push(ZoneSpec {
            room: name,
            floor_area_m2: room.area_m2 * scale,
            volume_m3: room.volume_m3(template.ceiling_height_m) * scale,
            occupied,
            infiltration_ach: construction.infiltration_ach,
            heater,
            controller,
        });
    }

    let model = BuildingModel {
        dwelling_id: record.dwelling_id.clone(),
        dwelling_type: record.dwelling_type,
        scale_factor: scale,
        orientation_deg,
        climate_zone_id: zone.id,
        aux_heater_power_w: record.aux_heater_power_w,
        aux_heater_room: RoomId::Living,
        zones,
        surfaces,
    };
    model.validate()?;

    let schedules = build_schedules(record, &model, zone, grid, config)?;
    Ok((model, schedules))
}

fn build_schedules(
    record: &SurveyRecord,
    model: &BuildingModel,
    zone: &ClimateZone,
    grid: &TimeGrid,
    config: &BuildConfig,
) -> Result<ScheduleSet, ModelError> {
    let heating_active = heating_season_mask(grid, record.heating_on, record.heating_off);

    let aux_heater_on: Vec<bool> = (0..grid.len())
        .map(|k| {
            heating_active[k]
                && record.aux_heater_power_w > 0.0
                && record.aux_heater_hours.contains(&(grid.hour(k) as u8))
        })
        .collect();

    let n_days = grid.len().div_ceil(grid.steps_per_day());
    let sunsets: Vec<_> = (0..n_days)
        .map(|d| {
            let date = grid.date(d * grid.steps_per_day());
            sunset_time(zone.latitude_deg, zone.longitude_deg, date)
        })
        .collect::<Result<_, _>>()?;

    let all_false = TypicalWeek::uniform(false);
    let mut rooms = std::collections::BTreeMap::new();
    for z in &model.zones {
        let name = z.room;
        let presence_week = if z.occupied { &record.presence[&name] } else { &all_false };
        let presence = tile_week(presence_week, grid);
        let shutter_closed = shutter_schedule(&presence, grid, &sunsets)?;
        let setpoint_c = if z.occupied {
            tile_week(&record.setpoint_c[&name], grid)
        } else {
            vec![config.idle_setpoint_c; grid.len()]
        };
        let window_open_instruction = if z.occupied {
            tile_week(&record.window_open[&name], grid)
        } else {
            vec![false; grid.len()]
        };
        let wood_burning = if z.occupied && z.heater.kind == HeaterType::Wood {
            firing_mask(grid, &record.wood_reload_hours, z.heater.wood_burn_s, &heating_active)
        } else {
            vec![false; grid.len()]
        };
        rooms.insert(
            name,
            RoomSchedule {
                setpoint_c,
                presence,
                window_open_instruction,
                shutter_closed,
                wood_burning,
            },
        );
    }

    let schedules = ScheduleSet { grid: clone_grid(grid), heating_active, aux_heater_on, rooms };
    schedules.validate()?;
    Ok(schedules)
}

fn clone_grid(grid: &TimeGrid) -> TimeGrid {
    grid.clone()
}

/// On-disk bundle for one dwelling: the model and its schedules.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DwellingSpec {
    pub model: BuildingModel,
    pub schedules: ScheduleSet,
}

impl DwellingSpec {
    pub fn save(&self, path: &Path) -> Result<(), ModelError> {
        let file = std::fs::File::create(path).map_err(|e| ModelError::Io {
            detail: format!("{}: {e}", path.display()),
        })?;
        self.write(std::io::BufWriter::new(file))
    }

    pub fn write<W: Write>(&self, writer: W) -> Result<(), ModelError> {
        serde_json::to_writer(writer, self).map_err(|e| ModelError::Io { detail: e.to_string() })
    }

    pub fn load(path: &Path) -> Result<Self, ModelError> {
        let file = std::fs::File::open(path).map_err(|e| ModelError::Io {
            detail: format!("{}: {e}", path.display()),
        })?;
        Self::read(std::io::BufReader::new(file))
    }

    pub fn read<R: Read>(reader: R) -> Result<Self, ModelError> {
        let spec: DwellingSpec =
            serde_json::from_reader(reader).map_err(|e| ModelError::Io { detail: e.to_string() })?;
        spec.model.validate()?;
        spec.schedules.validate()?;
        Ok(spec)
    }
}

/// Controllers declared in the survey: every occupied room has exactly one.
pub fn controller_kind_summary(model: &BuildingModel) -> Vec<(RoomId, ControllerKind)> {
    model.zones.iter().map(|z| (z.room, z.controller.kind)).collect()
}
