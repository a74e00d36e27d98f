//! Survey CSV reading and writing.
//!
//! The file is UTF-8 CSV with one header row. Scalar answers come first,
//! followed by per-room blocks in canonical room order. Weekly profiles are
//! stored as one cell per typical day: setpoints as 24 space-separated
//! values, boolean profiles as 24-character `0`/`1` strings. Cells for rooms
//! a template does not have (or for unoccupied rooms) are left empty.
//! The full column dictionary is in `docs/formats.md`.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use super::record::{DwellingType, MonthDay, RoomId, SurveyRecord, TypicalWeek};
use super::SurveyError;

const SCALAR_COLUMNS: [&str; 14] = [
    "dwelling_id",
    "dwelling_type",
    "n_rooms",
    "floor_area_m2",
    "construction_year_band",
    "department",
    "heating_on",
    "heating_off",
    "aux_heater_power_w",
    "aux_heater_hours",
    "wood_reload_hours",
    "comfort_answer",
    "avg_age",
    "gender_ratio",
];

const DAY_NAMES: [&str; 3] = ["weekday", "saturday", "sunday"];

/// Full header in writing order.
pub fn survey_columns() -> Vec<String> {
    let mut cols: Vec<String> = SCALAR_COLUMNS.iter().map(|s| s.to_string()).collect();
    for room in RoomId::ALL {
        cols.push(format!("is_south_{room}"));
        cols.push(format!("heater_power_{room}"));
        cols.push(format!("heater_type_{room}"));
        cols.push(format!("controller_{room}"));
        for kind in ["setpoint", "presence", "window"] {
            for day in DAY_NAMES {
                cols.push(format!("{kind}_{room}_{day}"));
            }
        }
    }
    cols
}

struct RowCtx<'a> {
    row: usize,
    by_name: &'a BTreeMap<String, usize>,
    record: &'a csv::StringRecord,
}

impl<'a> RowCtx<'a> {
    fn raw(&self, column: &str) -> Result<&'a str, SurveyError> {
        let idx = *self
            .by_name
            .get(column)
            .ok_or_else(|| SurveyError::SchemaMismatch { column: column.to_string() })?;
        Ok(self.record.get(idx).unwrap_or(""))
    }

    fn parse<T: FromStr>(&self, column: &str) -> Result<T, SurveyError> {
        let raw = self.raw(column)?;
        raw.trim().parse::<T>().map_err(|_| SurveyError::BadValue {
            row: self.row,
            column: column.to_string(),
            value: raw.to_string(),
        })
    }

    /// Like `parse`, but an empty cell falls back to a default.
    fn parse_or<T: FromStr>(&self, column: &str, default: T) -> Result<T, SurveyError> {
        if self.raw(column)?.trim().is_empty() {
            return Ok(default);
        }
        self.parse(column)
    }

    fn parse_enum<T: FromStr>(&self, column: &str) -> Result<T, SurveyError> {
        let raw = self.raw(column)?;
        raw.trim().parse::<T>().map_err(|_| SurveyError::UnknownEnum {
            row: self.row,
            column: column.to_string(),
            literal: raw.to_string(),
        })
    }

    fn parse_hours(&self, column: &str) -> Result<Vec<u8>, SurveyError> {
        let raw = self.raw(column)?.trim();
        if raw.is_empty() {
            return Ok(Vec::new());
        }
        raw.split_whitespace()
            .map(|tok| {
                tok.parse::<u8>().ok().filter(|h| *h < 24).ok_or_else(|| {
                    SurveyError::BadValue {
                        row: self.row,
                        column: column.to_string(),
                        value: raw.to_string(),
                    }
                })
            })
            .collect()
    }

    fn parse_day_values(&self, column: &str) -> Result<[f64; 24], SurveyError> {
        let raw = self.raw(column)?.trim();
        let vals: Vec<f64> = raw
            .split_whitespace()
            .map(|tok| tok.parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| SurveyError::BadValue {
                row: self.row,
                column: column.to_string(),
                value: raw.to_string(),
            })?;
        <[f64; 24]>::try_from(vals).map_err(|v| SurveyError::BadValue {
            row: self.row,
            column: column.to_string(),
            value: format!("expected 24 values, got {}", v.len()),
        })
    }

    fn parse_day_bools(&self, column: &str) -> Result<[bool; 24], SurveyError> {
        let raw = self.raw(column)?.trim();
        if raw.len() != 24 || !raw.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(SurveyError::BadValue {
                row: self.row,
                column: column.to_string(),
                value: raw.to_string(),
            });
        }
        let mut out = [false; 24];
        for (i, b) in raw.bytes().enumerate() {
            out[i] = b == b'1';
        }
        Ok(out)
    }

    fn parse_week_f64(&self, kind: &str, room: RoomId) -> Result<TypicalWeek<f64>, SurveyError> {
        Ok(TypicalWeek {
            weekday: self.parse_day_values(&format!("{kind}_{room}_weekday"))?,
            saturday: self.parse_day_values(&format!("{kind}_{room}_saturday"))?,
            sunday: self.parse_day_values(&format!("{kind}_{room}_sunday"))?,
        })
    }

    fn parse_week_bool(&self, kind: &str, room: RoomId) -> Result<TypicalWeek<bool>, SurveyError> {
        Ok(TypicalWeek {
            weekday: self.parse_day_bools(&format!("{kind}_{room}_weekday"))?,
            saturday: self.parse_day_bools(&format!("{kind}_{room}_saturday"))?,
            sunday: self.parse_day_bools(&format!("{kind}_{room}_sunday"))?,
        })
    }
}

/// Parse a survey file; returns one record per data row, validated.
pub fn parse_survey(path: &Path) -> Result<Vec<SurveyRecord>, SurveyError> {
    let file = std::fs::File::open(path)?;
    parse_survey_reader(file)
}

pub fn parse_survey_reader<R: Read>(reader: R) -> Result<Vec<SurveyRecord>, SurveyError> {
    let mut rdr = csv::ReaderBuilder::new().flexible(false).from_reader(reader);
    let headers = rdr.headers()?.clone();
    let by_name: BTreeMap<String, usize> = headers
        .iter()
        .enumerate()
        .map(|(i, h)| (h.to_string(), i))
        .collect();
    // Schema check up front so errors name the missing column, not a row.
    for col in survey_columns() {
        if !by_name.contains_key(&col) {
            return Err(SurveyError::SchemaMismatch { column: col });
        }
    }

    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let row = i + 1;
        let ctx = RowCtx { row, by_name: &by_name, record: &rec };

        let dwelling_type: DwellingType = ctx.parse_enum("dwelling_type")?;
        let n_rooms: u8 = ctx.parse("n_rooms")?;

        let mut record = SurveyRecord {
            dwelling_id: ctx.raw("dwelling_id")?.trim().to_string(),
            dwelling_type,
            n_rooms,
            floor_area_m2: ctx.parse("floor_area_m2")?,
            construction_year_band: ctx.parse_enum("construction_year_band")?,
            department: ctx.raw("department")?.trim().to_string(),
            is_south: BTreeMap::new(),
            heater_power_w: BTreeMap::new(),
            heater_type: BTreeMap::new(),
            controller_type: BTreeMap::new(),
            setpoint_c: BTreeMap::new(),
            presence: BTreeMap::new(),
            window_open: BTreeMap::new(),
            // blank heating dates fall back to Oct 15 / Apr 15
            heating_on: ctx.parse_or("heating_on", MonthDay::new(10, 15))?,
            heating_off: ctx.parse_or("heating_off", MonthDay::new(4, 15))?,
            aux_heater_power_w: ctx.parse("aux_heater_power_w")?,
            aux_heater_hours: ctx.parse_hours("aux_heater_hours")?,
            wood_reload_hours: ctx.parse_hours("wood_reload_hours")?,
            comfort_answer: ctx.parse_enum("comfort_answer")?,
            avg_age: ctx.parse("avg_age")?,
            gender_ratio: ctx.parse("gender_ratio")?,
        };

        for &room in record.template_rooms() {
            record
                .is_south
                .insert(room, ctx.parse::<u8>(&format!("is_south_{room}"))? != 0);
        }
        let occupied = record.occupied_rooms();
        for &room in &occupied {
            record
                .heater_power_w
                .insert(room, ctx.parse(&format!("heater_power_{room}"))?);
            record
                .heater_type
                .insert(room, ctx.parse_enum(&format!("heater_type_{room}"))?);
            record
                .controller_type
                .insert(room, ctx.parse_enum(&format!("controller_{room}"))?);
            record.setpoint_c.insert(room, ctx.parse_week_f64("setpoint", room)?);
            record.presence.insert(room, ctx.parse_week_bool("presence", room)?);
            record.window_open.insert(room, ctx.parse_week_bool("window", room)?);
        }

        record.validate().map_err(|detail| SurveyError::InvalidRecord {
            dwelling_id: record.dwelling_id.clone(),
            detail,
        })?;
        out.push(record);
    }
    Ok(out)
}

fn fmt_day_values(vals: &[f64; 24]) -> String {
    vals.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn fmt_day_bools(vals: &[bool; 24]) -> String {
    vals.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn fmt_hours(hours: &[u8]) -> String {
    hours
        .iter()
        .map(|h| h.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Serialize records with the documented schema; `parse_survey` of the output
/// reproduces the input list exactly.
pub fn write_survey<W: Write>(writer: W, records: &[SurveyRecord]) -> Result<(), SurveyError> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(survey_columns())?;
    for r in records {
        let mut row: Vec<String> = vec![
            r.dwelling_id.clone(),
            r.dwelling_type.to_string(),
            r.n_rooms.to_string(),
            r.floor_area_m2.to_string(),
            r.construction_year_band.to_string(),
            r.department.clone(),
            r.heating_on.to_string(),
            r.heating_off.to_string(),
            r.aux_heater_power_w.to_string(),
            fmt_hours(&r.aux_heater_hours),
            fmt_hours(&r.wood_reload_hours),
            r.comfort_answer.to_string(),
            r.avg_age.to_string(),
            r.gender_ratio.to_string(),
        ];
        for room in RoomId::ALL {
            row.push(
                r.is_south
                    .get(&room)
                    .map(|&b| if b { "1" } else { "0" }.to_string())
                    .unwrap_or_default(),
            );
            row.push(r.heater_power_w.get(&room).map(|p| p.to_string()).unwrap_or_default());
            row.push(r.heater_type.get(&room).map(|t| t.to_string()).unwrap_or_default());
            row.push(
                r.controller_type
                    .get(&room)
                    .map(|c| c.to_string())
                    .unwrap_or_default(),
            );
            let sp = r.setpoint_c.get(&room);
            let pr = r.presence.get(&room);
            let wi = r.window_open.get(&room);
            for day in 0..3 {
                row.push(sp.map(|w| fmt_day_values(week_day_f64(w, day))).unwrap_or_default());
            }
            for day in 0..3 {
                row.push(pr.map(|w| fmt_day_bools(week_day_bool(w, day))).unwrap_or_default());
            }
            for day in 0..3 {
                row.push(wi.map(|w| fmt_day_bools(week_day_bool(w, day))).unwrap_or_default());
            }
        }
        wtr.write_record(&row)?;
    }
    wtr.flush()?;
    Ok(())
}

fn week_day_f64(w: &TypicalWeek<f64>, day: usize) -> &[f64; 24] {
    match day {
        0 => &w.weekday,
        1 => &w.saturday,
        _ => &w.sunday,
    }
}

fn week_day_bool(w: &TypicalWeek<bool>, day: usize) -> &[bool; 24] {
    match day {
        0 => &w.weekday,
        1 => &w.saturday,
        _ => &w.sunday,
    }
}
