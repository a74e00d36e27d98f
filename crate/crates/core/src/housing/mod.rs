//! Survey-to-model transformation: dwelling templates, era construction
//! records, orientation, schedules and the building-model assembly.

mod construction;
mod model;
mod orientation;
mod schedule;
mod templates;

pub use construction::{ConstructionRecord, ConstructionTable, MaterialLayer};
pub use model::{
    build_model, controller_kind_summary, BuildConfig, BuildingModel, DwellingSpec,
    SurfaceBoundary, SurfaceSpec, WindowSpec, ZoneSpec,
};
pub use orientation::{orientation_matisse, orientation_mozart, CARDINAL_ORIENTATIONS};
pub use schedule::{
    firing_mask, heating_season_mask, shutter_schedule, tile_week, RoomSchedule, ScheduleSet,
};
pub use templates::{BuildingTemplate, EnvelopeBoundary, FacadeSpec, RoomGeometry, TemplateSet};

use thiserror::Error;

use crate::survey::{DwellingType, RoomId};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("invalid template data: {detail}")]
    BadTemplate { detail: String },
    #[error("no template for dwelling type {id}")]
    UnknownTemplate { id: DwellingType },
    #[error("invalid construction data: {detail}")]
    BadConstruction { detail: String },
    #[error("missing is_south flag for room {room}")]
    MissingSouthFlag { room: RoomId },
    #[error("record is for {expected}, template is {got}")]
    TemplateMismatch { expected: DwellingType, got: DwellingType },
    #[error("invalid building model: {detail}")]
    BadModel { detail: String },
    #[error("schedule/grid mismatch: {detail}")]
    GridMismatch { detail: String },
    #[error("i/o error: {detail}")]
    Io { detail: String },
    #[error(transparent)]
    Weather(#[from] crate::weather::WeatherError),
}
