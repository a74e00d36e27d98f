//! Uniform time grid shared by schedules, weather series and simulation results.
//!
//! All clock times in the toolkit are UTC. A season grid starts at midnight on
//! the season start date and advances in fixed steps (30 minutes for weather
//! and results, shorter for solver sub-steps).

use chrono::{DateTime, Datelike, Duration, NaiveDate, TimeZone, Timelike, Utc, Weekday};
use serde::{Deserialize, Serialize};

/// Result/weather step in seconds.
pub const STEP_S: i64 = 1800;

/// Default solver sub-step in seconds.
pub const SUBSTEP_S: i64 = 300;

/// A uniform UTC time grid: `start + k * step_s` for `k = 0..len`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimeGrid {
    start: DateTime<Utc>,
    step_s: i64,
    len: usize,
}

impl TimeGrid {
    pub fn new(start: DateTime<Utc>, step_s: i64, len: usize) -> Self {
        assert!(step_s > 0, "grid step must be positive");
        Self { start, step_s, len }
    }

    /// The canonical heating-season grid: Oct 1 of `start_year` through
    /// Apr 30 of the following year, at the 1800 s result step.
    pub fn heating_season(start_year: i32) -> Self {
        let start = Utc
            .with_ymd_and_hms(start_year, 10, 1, 0, 0, 0)
            .single()
            .expect("valid season start");
        let end_day = NaiveDate::from_ymd_opt(start_year + 1, 4, 30).expect("valid season end");
        let days = (end_day - start.date_naive()).num_days() + 1;
        let len = (days * 86_400 / STEP_S) as usize;
        Self::new(start, STEP_S, len)
    }

    pub fn start(&self) -> DateTime<Utc> {
        self.start
    }

    pub fn step_s(&self) -> i64 {
        self.step_s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn timestamp(&self, k: usize) -> DateTime<Utc> {
        self.start + Duration::seconds(self.step_s * k as i64)
    }

    /// Seconds elapsed from the grid start at sample `k`.
    pub fn offset_s(&self, k: usize) -> i64 {
        self.step_s * k as i64
    }

    /// Index of the first sample at or after `t`, if within the grid.
    pub fn index_at(&self, t: DateTime<Utc>) -> Option<usize> {
        let dt = (t - self.start).num_seconds();
        if dt < 0 {
            return None;
        }
        let k = (dt + self.step_s - 1) / self.step_s;
        let k = k as usize;
        (k < self.len).then_some(k)
    }

    pub fn weekday(&self, k: usize) -> Weekday {
        self.timestamp(k).weekday()
    }

    /// Hour of day (0..24) of sample `k`.
    pub fn hour(&self, k: usize) -> u32 {
        self.timestamp(k).hour()
    }

    /// Seconds since the sample's midnight.
    pub fn second_of_day(&self, k: usize) -> u32 {
        let t = self.timestamp(k);
        t.num_seconds_from_midnight()
    }

    pub fn date(&self, k: usize) -> NaiveDate {
        self.timestamp(k).date_naive()
    }

    /// Number of whole days spanned by the grid.
    pub fn n_days(&self) -> usize {
        (self.len as i64 * self.step_s / 86_400) as usize
    }

    /// Samples per day (grid steps are assumed to divide a day evenly).
    pub fn steps_per_day(&self) -> usize {
        (86_400 / self.step_s) as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = DateTime<Utc>> + '_ {
        (0..self.len).map(|k| self.timestamp(k))
    }
}

/// Linear interpolation over a series sampled on a grid, evaluated at an
/// arbitrary second offset from the grid start. Clamps outside the span.
pub fn interp_series(grid: &TimeGrid, values: &[f64], offset_s: i64) -> f64 {
    debug_assert_eq!(values.len(), grid.len());
    if values.is_empty() {
        return f64::NAN;
    }
    let step = grid.step_s();
    if offset_s <= 0 {
        return values[0];
    }
    let last = (values.len() - 1) as i64 * step;
    if offset_s >= last {
        return values[values.len() - 1];
    }
    let k = (offset_s / step) as usize;
    let frac = (offset_s - k as i64 * step) as f64 / step as f64;
    values[k] * (1.0 - frac) + values[k + 1] * frac
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heating_season_has_expected_length() {
        let g = TimeGrid::heating_season(2018);
        // Oct(31)+Nov(30)+Dec(31)+Jan(31)+Feb(28)+Mar(31)+Apr(30) = 212 days
        assert_eq!(g.n_days(), 212);
        assert_eq!(g.len(), 212 * 48);
        assert_eq!(g.timestamp(0).to_rfc3339(), "2018-10-01T00:00:00+00:00");
        assert_eq!(
            g.timestamp(g.len() - 1).to_rfc3339(),
            "2019-04-30T23:30:00+00:00"
        );
    }

    #[test]
    fn offsets_are_exact_multiples_of_step() {
        let g = TimeGrid::heating_season(2020);
        for k in [0usize, 1, 47, 48, 4999, g.len() - 1] {
            assert_eq!(g.offset_s(k) % STEP_S, 0);
        }
    }

    #[test]
    fn interpolation_hits_nodes_exactly() {
        let g = TimeGrid::new(Utc.with_ymd_and_hms(2018, 10, 1, 0, 0, 0).unwrap(), 1800, 4);
        let v = [1.0, 3.0, -2.0, 0.5];
        for (k, &x) in v.iter().enumerate() {
            assert_eq!(interp_series(&g, &v, k as i64 * 1800), x);
        }
        assert_eq!(interp_series(&g, &v, 900), 2.0);
        // clamped outside
        assert_eq!(interp_series(&g, &v, -5), 1.0);
        assert_eq!(interp_series(&g, &v, 1800 * 10), 0.5);
    }

    #[test]
    fn index_at_rounds_up() {
        let g = TimeGrid::heating_season(2018);
        let t = g.timestamp(10) + Duration::seconds(1);
        assert_eq!(g.index_at(t), Some(11));
        assert_eq!(g.index_at(g.timestamp(10)), Some(10));
        assert_eq!(g.index_at(g.start() - Duration::seconds(1)), None);
    }
}
