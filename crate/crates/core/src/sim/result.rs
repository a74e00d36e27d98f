//! Per-dwelling simulation output on the 1800 s grid, and its CSV form.
//!
//! Temperatures are written rounded to 1e-9 °C; the operative temperature is
//! recomputed from the rounded air and radiant values before writing, so the
//! identity `t_op = (t_air + t_mr) / 2` holds bit-exactly on the file.

use std::io::{Read, Write};
use std::path::Path;

use chrono::{DateTime, Utc};

use super::SimError;
use crate::grid::{TimeGrid, STEP_S};
use crate::survey::RoomId;

#[derive(Debug, Clone, PartialEq)]
pub struct ZoneSeries {
    pub room: RoomId,
    pub t_air_c: Vec<f64>,
    pub t_mr_c: Vec<f64>,
    pub t_op_c: Vec<f64>,
    pub q_conv_w: Vec<f64>,
    pub q_rad_w: Vec<f64>,
    pub window_open: Vec<bool>,
    pub presence: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationResult {
    pub dwelling_id: String,
    pub grid: TimeGrid,
    pub t_out_c: Vec<f64>,
    pub zones: Vec<ZoneSeries>,
}

fn round9(x: f64) -> f64 {
    (x * 1e9).round() / 1e9
}

fn round3(x: f64) -> f64 {
    (x * 1e3).round() / 1e3
}

impl SimulationResult {
    pub fn zone(&self, room: RoomId) -> Option<&ZoneSeries> {
        self.zones.iter().find(|z| z.room == room)
    }

    pub fn columns(&self) -> Vec<String> {
        let mut cols = vec!["timestamp".to_string(), "t_out_c".to_string()];
        for z in &self.zones {
            let r = z.room;
            cols.extend([
                format!("t_air_{r}"),
                format!("t_mr_{r}"),
                format!("t_op_{r}"),
                format!("q_conv_{r}"),
                format!("q_rad_{r}"),
                format!("window_{r}"),
                format!("presence_{r}"),
            ]);
        }
        cols
    }

    pub fn save(&self, path: &Path) -> Result<(), SimError> {
        let file = std::fs::File::create(path).map_err(|e| SimError::Io {
            detail: format!("{}: {e}", path.display()),
        })?;
        self.write(std::io::BufWriter::new(file))
    }

    pub fn write<W: Write>(&self, writer: W) -> Result<(), SimError> {
        let mut wtr = csv::Writer::from_writer(writer);
        wtr.write_record(self.columns())
            .map_err(|e| SimError::Io { detail: e.to_string() })?;
        let n = self.grid.len();
        let mut row: Vec<String> = Vec::with_capacity(2 + self.zones.len() * 7);
        for k in 0..n {
            row.clear();
            row.push(self.grid.timestamp(k).to_rfc3339());
            row.push(round9(self.t_out_c[k]).to_string());
            for z in &self.zones {
                let air = round9(z.t_air_c[k]);
                let mr = round9(z.t_mr_c[k]);
                row.push(air.to_string());
                row.push(mr.to_string());
                row.push(((air + mr) / 2.0).to_string());
                row.push(round3(z.q_conv_w[k]).to_string());
                row.push(round3(z.q_rad_w[k]).to_string());
                row.push(if z.window_open[k] { "1" } else { "0" }.to_string());
                row.push(if z.presence[k] { "1" } else { "0" }.to_string());
            }
            wtr.write_record(&row)
                .map_err(|e| SimError::Io { detail: e.to_string() })?;
        }
        wtr.flush().map_err(|e| SimError::Io { detail: e.to_string() })?;
        Ok(())
    }

    pub fn load(path: &Path, dwelling_id: &str) -> Result<Self, SimError> {
        let file = std::fs::File::open(path).map_err(|e| SimError::Io {
            detail: format!("{}: {e}", path.display()),
        })?;
        Self::read(std::io::BufReader::new(file), dwelling_id)
    }

    pub fn read<R: Read>(reader: R, dwelling_id: &str) -> Result<Self, SimError> {
        let mut rdr = csv::Reader::from_reader(reader);
        let headers = rdr.headers().map_err(|e| SimError::Io { detail: e.to_string() })?.clone();
        let mut rooms: Vec<RoomId> = Vec::new();
        for h in headers.iter() {
            if let Some(name) = h.strip_prefix("t_air_") {
                rooms.push(name.parse().map_err(|e| SimError::Io { detail: e })?);
            }
        }
        let col = |name: &str| -> Result<usize, SimError> {
            headers
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| SimError::Io { detail: format!("missing column `{name}`") })
        };

        let t_out_idx = col("t_out_c")?;
        let ts_idx = col("timestamp")?;
        struct ZoneCols {
            air: usize,
            mr: usize,
            op: usize,
            qc: usize,
            qr: usize,
            win: usize,
            pres: usize,
        }
        let mut zone_cols = Vec::new();
        for &r in &rooms {
            zone_cols.push(ZoneCols {
                air: col(&format!("t_air_{r}"))?,
                mr: col(&format!("t_mr_{r}"))?,
                op: col(&format!("t_op_{r}"))?,
                qc: col(&format!("q_conv_{r}"))?,
                qr: col(&format!("q_rad_{r}"))?,
                win: col(&format!("window_{r}"))?,
                pres: col(&format!("presence_{r}"))?,
            });
        }

        let mut timestamps: Vec<DateTime<Utc>> = Vec::new();
        let mut t_out_c = Vec::new();
        let mut zones: Vec<ZoneSeries> = rooms
            .iter()
            .map(|&room| ZoneSeries {
                room,
                t_air_c: Vec::new(),
                t_mr_c: Vec::new(),
                t_op_c: Vec::new(),
                q_conv_w: Vec::new(),
                q_rad_w: Vec::new(),
                window_open: Vec::new(),
                presence: Vec::new(),
            })
            .collect();

        for rec in rdr.records() {
            let rec = rec.map_err(|e| SimError::Io { detail: e.to_string() })?;
            let get_f = |i: usize| -> Result<f64, SimError> {
                rec.get(i)
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| SimError::Io { detail: format!("bad value in column {i}") })
            };
            let ts = rec
                .get(ts_idx)
                .and_then(|s| DateTime::parse_from_rfc3339(s).ok())
                .map(|t| t.with_timezone(&Utc))
                .ok_or_else(|| SimError::Io { detail: "bad timestamp".into() })?;
            timestamps.push(ts);
            t_out_c.push(get_f(t_out_idx)?);
            for (z, c) in zones.iter_mut().zip(&zone_cols) {
                z.t_air_c.push(get_f(c.air)?);
                z.t_mr_c.push(get_f(c.mr)?);
                z.t_op_c.push(get_f(c.op)?);
                z.q_conv_w.push(get_f(c.qc)?);
                z.q_rad_w.push(get_f(c.qr)?);
                z.window_open.push(rec.get(c.win) == Some("1"));
                z.presence.push(rec.get(c.pres) == Some("1"));
            }
        }
        let start = *timestamps
            .first()
            .ok_or_else(|| SimError::Io { detail: "empty result file".into() })?;
        Ok(SimulationResult {
            dwelling_id: dwelling_id.to_string(),
            grid: TimeGrid::new(start, STEP_S, timestamps.len()),
            t_out_c,
            zones,
        })
    }
}
