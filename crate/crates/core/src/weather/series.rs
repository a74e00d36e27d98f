//! Exterior-condition series: CSV format, validation and a seeded synthesizer.
//!
//! The file format is plain CSV with a single `#` metadata line carrying the
//! site coordinates, then one row per 30-minute sample. Beam and diffuse
//! horizontal irradiance are stored explicitly so no decomposition model is
//! needed downstream.

use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use chrono::{DateTime, Utc};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use super::solar::solar_position;
use super::zones::ClimateZone;
use super::WeatherError;
use crate::grid::{TimeGrid, STEP_S};

pub const WEATHER_COLUMNS: [&str; 8] = [
    "timestamp",
    "t_out_c",
    "rh_pct",
    "wind_speed_ms",
    "wind_dir_deg",
    "beam_horiz_wm2",
    "diffuse_horiz_wm2",
    "albedo",
];

/// 30-minute exterior conditions for one site.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeatherSeries {
    pub grid: TimeGrid,
    pub latitude_deg: f64,
    pub longitude_deg: f64,
    pub t_out_c: Vec<f64>,
    pub rh_pct: Vec<f64>,
    pub wind_speed_ms: Vec<f64>,
    pub wind_dir_deg: Vec<f64>,
    pub beam_horiz_wm2: Vec<f64>,
    pub diffuse_horiz_wm2: Vec<f64>,
    pub albedo: Vec<f64>,
}

impl WeatherSeries {
    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn validate(&self) -> Result<(), WeatherError> {
        if self.grid.step_s() != STEP_S {
            return Err(WeatherError::BadStep { step_s: self.grid.step_s() });
        }
        let n = self.grid.len();
        for (name, series) in [
            ("t_out_c", &self.t_out_c),
            ("rh_pct", &self.rh_pct),
            ("wind_speed_ms", &self.wind_speed_ms),
            ("wind_dir_deg", &self.wind_dir_deg),
            ("beam_horiz_wm2", &self.beam_horiz_wm2),
            ("diffuse_horiz_wm2", &self.diffuse_horiz_wm2),
            ("albedo", &self.albedo),
        ] {
            if series.len() != n {
                return Err(WeatherError::LengthMismatch {
                    column: name.to_string(),
                    expected: n,
                    got: series.len(),
                });
            }
        }
        for (row, (&b, &d)) in self
            .beam_horiz_wm2
            .iter()
            .zip(&self.diffuse_horiz_wm2)
            .enumerate()
        {
            if b < 0.0 || d < 0.0 {
                return Err(WeatherError::NegativeIrradiance { row });
            }
        }
        if let Some(row) = self.rh_pct.iter().position(|&r| !(0.0..=100.0).contains(&r)) {
            return Err(WeatherError::OutOfRange { row, column: "rh_pct".into() });
        }
        if let Some(row) = self.albedo.iter().position(|&a| !(0.0..=1.0).contains(&a)) {
            return Err(WeatherError::OutOfRange { row, column: "albedo".into() });
        }
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<(), WeatherError> {
        let file = std::fs::File::create(path)?;
        self.write(file)
    }

    pub fn write<W: Write>(&self, mut writer: W) -> Result<(), WeatherError> {
        writeln!(
            writer,
            "# latitude_deg={} longitude_deg={}",
            self.latitude_deg, self.longitude_deg
        )?;
        let mut wtr = csv::Writer::from_writer(writer);
        wtr.write_record(WEATHER_COLUMNS)?;
        for k in 0..self.len() {
            wtr.write_record([
                self.grid.timestamp(k).to_rfc3339(),
                self.t_out_c[k].to_string(),
                self.rh_pct[k].to_string(),
                self.wind_speed_ms[k].to_string(),
                self.wind_dir_deg[k].to_string(),
                self.beam_horiz_wm2[k].to_string(),
                self.diffuse_horiz_wm2[k].to_string(),
                self.albedo[k].to_string(),
            ])?;
        }
        wtr.flush()?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, WeatherError> {
        let file = std::fs::File::open(path)?;
        Self::read(file)
    }

    pub fn read<R: Read>(reader: R) -> Result<Self, WeatherError> {
        let mut reader = BufReader::new(reader);
        let mut meta = String::new();
        reader.read_line(&mut meta)?;
        let meta = meta.trim();
        if !meta.starts_with('#') {
            return Err(WeatherError::MissingMetadata);
        }
        let mut latitude_deg = None;
        let mut longitude_deg = None;
        for token in meta.trim_start_matches('#').split_whitespace() {
            if let Some((key, value)) = token.split_once('=') {
                let parsed: f64 = value
                    .parse()
                    .map_err(|_| WeatherError::BadMetadata { token: token.to_string() })?;
                match key {
                    "latitude_deg" => latitude_deg = Some(parsed),
                    "longitude_deg" => longitude_deg = Some(parsed),
                    _ => {}
                }
            }
        }
        let (latitude_deg, longitude_deg) = latitude_deg
            .zip(longitude_deg)
            .ok_or(WeatherError::MissingMetadata)?;

        let mut rdr = csv::ReaderBuilder::new().from_reader(reader);
        let headers = rdr.headers()?.clone();
        for col in WEATHER_COLUMNS {
            if !headers.iter().any(|h| h == col) {
                return Err(WeatherError::SchemaMismatch { column: col.to_string() });
            }
        }
        let idx = |name: &str| headers.iter().position(|h| h == name).unwrap();
        let cols: Vec<usize> = WEATHER_COLUMNS.iter().map(|c| idx(c)).collect();

        let mut timestamps: Vec<DateTime<Utc>> = Vec::new();
        let mut data: [Vec<f64>; 7] = Default::default();
        for (row, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let ts_raw = rec.get(cols[0]).unwrap_or("");
            let ts = DateTime::parse_from_rfc3339(ts_raw)
                .map_err(|_| WeatherError::BadTimestamp { row, value: ts_raw.to_string() })?
                .with_timezone(&Utc);
            if let Some(prev) = timestamps.last() {
                let dt = (ts - *prev).num_seconds();
                if dt <= 0 {
                    return Err(WeatherError::NonMonotonicTimestamps { row });
                }
                if dt != STEP_S {
                    return Err(WeatherError::BadStep { step_s: dt });
                }
            }
            timestamps.push(ts);
            for (j, &col) in cols[1..].iter().enumerate() {
                let raw = rec.get(col).unwrap_or("");
                let v: f64 = raw.parse().map_err(|_| WeatherError::BadValue {
                    row,
                    column: WEATHER_COLUMNS[1 + j].to_string(),
                    value: raw.to_string(),
                })?;
                data[j].push(v);
            }
        }
        let start = timestamps.first().copied().ok_or(WeatherError::EmptySeries)?;
        let [t_out_c, rh_pct, wind_speed_ms, wind_dir_deg, beam, diffuse, albedo] = data;
        let series = WeatherSeries {
            grid: TimeGrid::new(start, STEP_S, timestamps.len()),
            latitude_deg,
            longitude_deg,
            t_out_c,
            rh_pct,
            wind_speed_ms,
            wind_dir_deg,
            beam_horiz_wm2: beam,
            diffuse_horiz_wm2: diffuse,
            albedo,
        };
        series.validate()?;
        Ok(series)
    }
}

/// Deterministic synthetic weather for a zone: seasonal and diurnal cycles,
/// AR(1) synoptic noise, and a cloud process driving the beam/diffuse split
/// (clear-sky attenuation per Meinel, cloud attenuation per Kasten-Czeplak).
pub fn synth_weather(zone: &ClimateZone, seed: u64, grid: &TimeGrid) -> WeatherSeries {
    assert_eq!(grid.step_s(), STEP_S, "weather grid must use the 30-min step");
    let mut rng = ChaCha20Rng::seed_from_u64(seed ^ (zone.id as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let n = grid.len();
    let steps_per_day = grid.steps_per_day();
    let n_days = n.div_ceil(steps_per_day);

    // Daily synoptic offsets and cloudiness, AR(1).
    let mut t_offset = Vec::with_capacity(n_days);
    let mut clouds = Vec::with_capacity(n_days);
    let mut off = 0.0f64;
    let mut cloud_z = 0.0f64;
    for _ in 0..n_days {
        off = 0.85 * off + gauss(&mut rng) * 1.8;
        cloud_z = 0.70 * cloud_z + gauss(&mut rng) * 0.35;
        t_offset.push(off);
        clouds.push((zone.cloud_mean + cloud_z).clamp(0.02, 1.0));
    }

    let mut out = WeatherSeries {
        grid: grid.clone(),
        latitude_deg: zone.latitude_deg,
        longitude_deg: zone.longitude_deg,
        t_out_c: Vec::with_capacity(n),
        rh_pct: Vec::with_capacity(n),
        wind_speed_ms: Vec::with_capacity(n),
        wind_dir_deg: Vec::with_capacity(n),
        beam_horiz_wm2: Vec::with_capacity(n),
        diffuse_horiz_wm2: Vec::with_capacity(n),
        albedo: Vec::with_capacity(n),
    };

    let mut wind_dir = rng.gen_range(0.0..360.0);
    for k in 0..n {
        let t = grid.timestamp(k);
        let day = k / steps_per_day;
        let doy = chrono::Datelike::ordinal(&t) as f64;
        let hour = grid.second_of_day(k) as f64 / 3600.0;

        let annual = (2.0 * std::f64::consts::PI * (doy - 15.0) / 365.0).cos();
        let daily_mean = zone.t_jan_mean_c + zone.annual_swing_c * (1.0 - annual) / 2.0;
        let diurnal = -0.5
            * zone.diurnal_swing_c
            * (2.0 * std::f64::consts::PI * (hour - 15.0) / 24.0).cos();
        let t_out = daily_mean + diurnal + t_offset[day] + gauss(&mut rng) * 0.3;

        let pos = solar_position(zone.latitude_deg, zone.longitude_deg, t);
        let (beam, diffuse) = if pos.is_up() {
            let cos_z = pos.zenith_deg.to_radians().cos().max(0.0);
            let air_mass_term = if cos_z > 1e-3 {
                0.7f64.powf((1.0 / cos_z).powf(0.678))
            } else {
                0.0
            };
            let ghi_clear = pos.e0_normal_wm2 * cos_z * air_mass_term;
            let c = clouds[day];
            let ghi = ghi_clear * (1.0 - 0.75 * c.powf(3.4));
            let diffuse_fraction = (0.20 + 0.78 * c.powf(1.2)).min(1.0);
            let diffuse = ghi * diffuse_fraction;
            (ghi - diffuse, diffuse)
        } else {
            (0.0, 0.0)
        };

        let rh = (70.0 + 18.0 * clouds[day] - 1.2 * diurnal + gauss(&mut rng) * 3.0)
            .clamp(20.0, 100.0);
        let wind = (3.5 + 0.6 * t_offset[day].abs() + gauss(&mut rng)).max(0.0);
        wind_dir = (wind_dir + gauss(&mut rng) * 10.0).rem_euclid(360.0);

        out.t_out_c.push(t_out);
        out.rh_pct.push(rh);
        out.wind_speed_ms.push(wind);
        out.wind_dir_deg.push(wind_dir);
        out.beam_horiz_wm2.push(beam.max(0.0));
        out.diffuse_horiz_wm2.push(diffuse.max(0.0));
        out.albedo.push(0.2);
    }
    debug_assert!(out.validate().is_ok());
    out
}

/// Standard normal via Box-Muller; two uniform draws per call keeps the
/// stream layout independent of caller state.
fn gauss<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}
