//! Exterior boundary conditions: weather series I/O and synthesis, solar
//! geometry, sunset times and tilted-surface irradiance.

mod hdkr;
mod series;
mod solar;
mod zones;

pub use hdkr::{hdkr_tilted_irradiance, BEAM_CUTOFF_ZENITH_DEG, MAX_BEAM_FACTOR};
pub use series::{synth_weather, WeatherSeries, WEATHER_COLUMNS};
pub use solar::{extraterrestrial_normal, solar_position, sunset_time, SolarPosition, SOLAR_CONSTANT_WM2};
pub use zones::{ClimateZone, ClimateZones};

use chrono::NaiveDate;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WeatherError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("weather file is missing the `# latitude_deg=.. longitude_deg=..` metadata line")]
    MissingMetadata,
    #[error("cannot parse metadata token `{token}`")]
    BadMetadata { token: String },
    #[error("weather schema mismatch: missing column `{column}`")]
    SchemaMismatch { column: String },
    #[error("row {row}: cannot parse timestamp `{value}`")]
    BadTimestamp { row: usize, value: String },
    #[error("row {row}, column `{column}`: cannot parse value `{value}`")]
    BadValue { row: usize, column: String, value: String },
    #[error("weather step must be 1800 s, found {step_s} s")]
    BadStep { step_s: i64 },
    #[error("timestamps not strictly increasing at row {row}")]
    NonMonotonicTimestamps { row: usize },
    #[error("negative irradiance at row {row}")]
    NegativeIrradiance { row: usize },
    #[error("row {row}: column `{column}` out of range")]
    OutOfRange { row: usize, column: String },
    #[error("column `{column}` has {got} samples, expected {expected}")]
    LengthMismatch { column: String, expected: usize, got: usize },
    #[error("weather file has no data rows")]
    EmptySeries,
    #[error("invalid climate zone table: {detail}")]
    BadZoneTable { detail: String },
    #[error("unknown climate zone id {id}")]
    UnknownZone { id: u8 },
    #[error("department `{department}` is not in the zone table")]
    UnknownDepartment { department: String },
    #[error("no sunset at latitude {latitude_deg} on {date} (polar day or night)")]
    PolarDayNight { latitude_deg: f64, date: NaiveDate },
}
