//! Survey ingestion: parsing, validation, outlier filtering and the mapping
//! from comfort answers to target discomfort durations, plus a deterministic
//! synthetic-survey generator for desk-scale runs.

mod comfort;
mod iqr;
mod parse;
mod record;
mod synth;

pub use comfort::{map_comfort_category, ComfortDurationTable};
pub use iqr::{iqr_filter, numeric_field, quantile, IqrBounds, IqrRejection, DEFAULT_IQR_FIELDS};
pub use parse::{parse_survey, parse_survey_reader, survey_columns, write_survey};
pub use record::{
    ComfortAnswer, ControllerKind, DwellingType, EraBand, HeaterType, MonthDay, RoomId,
    SurveyRecord, TypicalWeek,
};
pub use synth::{synth_survey, COMFORT_WEIGHTS};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SurveyError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("survey schema mismatch: missing column `{column}`")]
    SchemaMismatch { column: String },
    #[error("row {row}, column `{column}`: cannot parse value `{value}`")]
    BadValue { row: usize, column: String, value: String },
    #[error("row {row}, column `{column}`: unknown literal `{literal}`")]
    UnknownEnum { row: usize, column: String, literal: String },
    #[error("record `{dwelling_id}` violates an invariant: {detail}")]
    InvalidRecord { dwelling_id: String, detail: String },
    #[error("cannot filter an empty record list")]
    EmptyInput,
    #[error("unknown numeric field `{field}`")]
    UnknownField { field: String },
    #[error("invalid comfort duration table: {detail}")]
    BadDurationTable { detail: String },
}
