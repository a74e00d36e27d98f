//! Label artifacts: per-dwelling label CSV and the optimization report JSON.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::hysteresis::{ComfortLabel, LabelSeries};
use super::presence::PresenceOpTempSeries;
use super::threshold::OptimizationReport;
use super::LabelError;
use crate::grid::TimeGrid;

pub const LABEL_COLUMNS: [&str; 3] = ["timestamp", "t_op_pres_c", "label"];

/// Write the label series: one row per step, empty temperature cell on
/// Unknown steps.
pub fn write_labels<W: Write>(
    writer: W,
    grid: &TimeGrid,
    series: &PresenceOpTempSeries,
    labels: &LabelSeries,
) -> Result<(), LabelError> {
    if series.len() != grid.len() || labels.labels.len() != grid.len() {
        return Err(LabelError::LengthMismatch {
            detail: format!(
                "grid {} vs series {} vs labels {}",
                grid.len(),
                series.len(),
                labels.labels.len()
            ),
        });
    }
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(LABEL_COLUMNS)?;
    for k in 0..grid.len() {
        let temp = series.values[k].map(|v| ((v * 1e9).round() / 1e9).to_string());
        wtr.write_record([
            grid.timestamp(k).to_rfc3339(),
            temp.unwrap_or_default(),
            labels.labels[k].as_str().to_string(),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn save_labels(
    path: &Path,
    grid: &TimeGrid,
    series: &PresenceOpTempSeries,
    labels: &LabelSeries,
) -> Result<(), LabelError> {
    let file = std::fs::File::create(path)?;
    write_labels(std::io::BufWriter::new(file), grid, series, labels)
}

/// Parsed label file: timestamps come from the grid reconstruction upstream.
pub struct LoadedLabels {
    pub t_op_pres: Vec<Option<f64>>,
    pub labels: Vec<ComfortLabel>,
}

pub fn read_labels<R: Read>(reader: R) -> Result<LoadedLabels, LabelError> {
    let mut rdr = csv::Reader::from_reader(reader);
    let headers = rdr.headers()?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| LabelError::LengthMismatch { detail: format!("missing column {name}") })
    };
    let (temp_idx, label_idx) = (col("t_op_pres_c")?, col("label")?);
    let mut out = LoadedLabels { t_op_pres: Vec::new(), labels: Vec::new() };
    for rec in rdr.records() {
        let rec = rec?;
        let raw_temp = rec.get(temp_idx).unwrap_or("");
        out.t_op_pres.push(if raw_temp.is_empty() {
            None
        } else {
            Some(raw_temp.parse().map_err(|_| LabelError::LengthMismatch {
                detail: format!("bad temperature `{raw_temp}`"),
            })?)
        });
        out.labels.push(match rec.get(label_idx).unwrap_or("") {
            "comfort" => ComfortLabel::Comfort,
            "discomfort" => ComfortLabel::Discomfort,
            "unknown" => ComfortLabel::Unknown,
            other => {
                return Err(LabelError::LengthMismatch { detail: format!("bad label `{other}`") })
            }
        });
    }
    Ok(out)
}

pub fn load_labels(path: &Path) -> Result<LoadedLabels, LabelError> {
    let file = std::fs::File::open(path)?;
    read_labels(std::io::BufReader::new(file))
}

/// Report wrapper serialized to JSON next to the label CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DwellingLabelReport {
    pub dwelling_id: String,
    pub report: OptimizationReport,
    pub n_switch: usize,
    pub max_episode_s: i64,
}

pub fn save_report(path: &Path, report: &DwellingLabelReport) -> Result<(), LabelError> {
    let file = std::fs::File::create(path)?;
    serde_json::to_writer_pretty(std::io::BufWriter::new(file), report)
        .map_err(|e| LabelError::LengthMismatch { detail: e.to_string() })?;
    Ok(())
}
