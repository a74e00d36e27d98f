//! Interquartile-rule outlier filtering over numeric survey fields.
//!
//! Quartiles use linear interpolation between order statistics: the q-th
//! quantile sits at fractional position `q * (n - 1)` of the sorted sample.
//! A record is rejected as soon as any configured field falls outside
//! `[Q1 - 1.5*IQR, Q3 + 1.5*IQR]`, with bounds computed over the full input
//! population.

use super::record::SurveyRecord;
use super::SurveyError;

/// Fields filtered by default when no explicit list is configured.
pub const DEFAULT_IQR_FIELDS: [&str; 2] = ["floor_area_m2", "avg_age"];

/// Numeric field accessor by column-dictionary name.
pub fn numeric_field(record: &SurveyRecord, field: &str) -> Option<f64> {
    match field {
        "floor_area_m2" => Some(record.floor_area_m2),
        "avg_age" => Some(record.avg_age),
        "gender_ratio" => Some(record.gender_ratio),
        "aux_heater_power_w" => Some(record.aux_heater_power_w),
        "n_rooms" => Some(record.n_rooms as f64),
        "heater_power_total" => Some(record.heater_power_w.values().sum()),
        _ => None,
    }
}

/// Linearly interpolated quantile of an unsorted sample, `q` in [0, 1].
pub fn quantile(values: &[f64], q: f64) -> f64 {
    debug_assert!(!values.is_empty());
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("non-finite value in quantile"));
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        let w = pos - lo as f64;
        sorted[lo] * (1.0 - w) + sorted[hi] * w
    }
}

/// Inclusive acceptance bounds for one field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IqrBounds {
    pub q1: f64,
    pub q3: f64,
    pub lower: f64,
    pub upper: f64,
}

impl IqrBounds {
    pub fn from_values(values: &[f64]) -> Self {
        let q1 = quantile(values, 0.25);
        let q3 = quantile(values, 0.75);
        let iqr = q3 - q1;
        Self { q1, q3, lower: q1 - 1.5 * iqr, upper: q3 + 1.5 * iqr }
    }

    pub fn contains(&self, v: f64) -> bool {
        v >= self.lower && v <= self.upper
    }
}

/// A rejected record together with the first offending field.
#[derive(Debug, Clone)]
pub struct IqrRejection {
    pub record: SurveyRecord,
    pub field: String,
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
}

/// Partition `records` into (kept, rejected) by the interquartile rule on the
/// named fields. Field order decides which violation a rejection reports.
pub fn iqr_filter(
    records: Vec<SurveyRecord>,
    fields: &[&str],
) -> Result<(Vec<SurveyRecord>, Vec<IqrRejection>), SurveyError> {
    if records.is_empty() {
        return Err(SurveyError::EmptyInput);
    }
    let mut bounds = Vec::with_capacity(fields.len());
    for &field in fields {
        let values: Vec<f64> = records
            .iter()
            .map(|r| {
                numeric_field(r, field)
                    .ok_or_else(|| SurveyError::UnknownField { field: field.to_string() })
            })
            .collect::<Result<_, _>>()?;
        bounds.push(IqrBounds::from_values(&values));
    }

    let mut kept = Vec::new();
    let mut rejected = Vec::new();
    for record in records {
        let violation = fields.iter().zip(&bounds).find_map(|(&field, b)| {
            let v = numeric_field(&record, field).expect("checked above");
            (!b.contains(v)).then(|| (field, v, b))
        });
        match violation {
            Some((field, value, b)) => rejected.push(IqrRejection {
                record,
                field: field.to_string(),
                value,
                lower: b.lower,
                upper: b.upper,
            }),
            None => kept.push(record),
        }
    }
    Ok((kept, rejected))
}
