//! Season-long schedules on the 1800 s grid: typical weeks tiled by weekday,
//! shutter opening/closing from presence and sunset, heating-season window,
//! auxiliary-heater and wood-stove firing series.

use std::collections::BTreeMap;

use chrono::{DateTime, Datelike, NaiveDate, Utc};
use serde::{Deserialize, Serialize};

use super::ModelError;
use crate::grid::TimeGrid;
use crate::survey::{MonthDay, RoomId, TypicalWeek};

/// Per-room series, all on the shared season grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoomSchedule {
    pub setpoint_c: Vec<f64>,
    pub presence: Vec<bool>,
    pub window_open_instruction: Vec<bool>,
    pub shutter_closed: Vec<bool>,
    /// True while a wood stove in this room is burning.
    pub wood_burning: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduleSet {
    pub grid: TimeGrid,
    /// Heating season active (between the on and off dates).
    pub heating_active: Vec<bool>,
    /// Auxiliary (mobile) heater firing; power lives on the building model.
    pub aux_heater_on: Vec<bool>,
    pub rooms: BTreeMap<RoomId, RoomSchedule>,
}

impl ScheduleSet {
    pub fn validate(&self) -> Result<(), ModelError> {
        let n = self.grid.len();
        if self.heating_active.len() != n || self.aux_heater_on.len() != n {
            return Err(ModelError::GridMismatch {
                detail: "global schedule length differs from grid".into(),
            });
        }
        for (room, s) in &self.rooms {
            for (name, len) in [
                ("setpoint", s.setpoint_c.len()),
                ("presence", s.presence.len()),
                ("window", s.window_open_instruction.len()),
                ("shutter", s.shutter_closed.len()),
                ("wood", s.wood_burning.len()),
            ] {
                if len != n {
                    return Err(ModelError::GridMismatch {
                        detail: format!("{room}/{name} has {len} samples, grid has {n}"),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Expand a typical week onto the grid by weekday and hour.
pub fn tile_week<T: Copy>(week: &TypicalWeek<T>, grid: &TimeGrid) -> Vec<T> {
    (0..grid.len())
        .map(|k| week.at(grid.weekday(k), grid.hour(k)))
        .collect()
}

/// True for grid samples whose date lies in the heating season
/// [on date .. off date], which wraps across the new year.
pub fn heating_season_mask(grid: &TimeGrid, on: MonthDay, off: MonthDay) -> Vec<bool> {
    let start_year = grid.timestamp(0).year();
    let on_date = NaiveDate::from_ymd_opt(start_year, on.month, on.day);
    let off_date = NaiveDate::from_ymd_opt(start_year + 1, off.month, off.day);
    (0..grid.len())
        .map(|k| {
            let d = grid.date(k);
            match (on_date, off_date) {
                (Some(on), Some(off)) => d >= on && d <= off,
                _ => false,
            }
        })
        .collect()
}

/// Firing mask from reload hours: each reload starts a burn of
/// `burn_duration_s`, repeated daily, within the heating season only.
/// The routine is daily-periodic, so burns crossing midnight carry into the
/// early steps of the next day.
pub fn firing_mask(
    grid: &TimeGrid,
    hours: &[u8],
    burn_duration_s: i64,
    heating_active: &[bool],
) -> Vec<bool> {
    let mut mask = vec![false; grid.len()];
    if hours.is_empty() {
        return mask;
    }
    for k in 0..grid.len() {
        if !heating_active[k] {
            continue;
        }
        let sod = grid.second_of_day(k) as i64;
        mask[k] = hours
            .iter()
            .any(|&h| (sod - h as i64 * 3600).rem_euclid(86_400) < burn_duration_s);
    }
    mask
}

/// Shutter state per step (true = closed) from presence and daily sunsets.
///
/// Per day: shutters open at the first occupied-to-empty transition (or at
/// first occupancy if the room never empties), and close at the occupied
/// step whose clock time is nearest the sunset; closed persists overnight.
/// A day without occupancy keeps them closed.
pub fn shutter_schedule(
    presence: &[bool],
    grid: &TimeGrid,
    sunsets: &[DateTime<Utc>],
) -> Result<Vec<bool>, ModelError> {
    if presence.len() != grid.len() {
        return Err(ModelError::GridMismatch {
            detail: format!(
                "presence has {} samples, grid has {}",
                presence.len(),
                grid.len()
            ),
        });
    }
    let steps_per_day = grid.steps_per_day();
    let n_days = grid.len().div_ceil(steps_per_day);
    if sunsets.len() != n_days {
        return Err(ModelError::GridMismatch {
            detail: format!("{} sunsets for {} days", sunsets.len(), n_days),
        });
    }

    let mut closed = vec![true; grid.len()];
    for day in 0..n_days {
        let begin = day * steps_per_day;
        let end = (begin + steps_per_day).min(grid.len());
        let day_steps = begin..end;

        let open_at = day_steps
            .clone()
            .skip(1)
            .find(|&k| presence[k - 1] && !presence[k])
            .or_else(|| day_steps.clone().find(|&k| presence[k]));
        let Some(open_at) = open_at else {
            continue; // nobody home all day
        };

        let sunset = sunsets[day];
        let close_at = day_steps
            .clone()
            .filter(|&k| presence[k])
            .min_by_key(|&k| ((grid.timestamp(k) - sunset).num_seconds().abs(), k));
        let Some(close_at) = close_at else { continue };

        for k in open_at..close_at.max(open_at) {
            closed[k] = false;
        }
    }
    Ok(closed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::STEP_S;
    use chrono::TimeZone;

    fn day_grid(days: usize) -> TimeGrid {
        TimeGrid::new(
            Utc.with_ymd_and_hms(2018, 10, 1, 0, 0, 0).unwrap(),
            STEP_S,
            days * 48,
        )
    }

    fn sunset_at(grid: &TimeGrid, day: usize, hour: u32, minute: u32) -> DateTime<Utc> {
        let date = grid.date(day * grid.steps_per_day());
        Utc.with_ymd_and_hms(
            date.year(),
            date.month(),
            chrono::Datelike::day(&date),
            hour,
            minute,
            0,
        )
        .unwrap()
    }

    #[test]
    fn never_occupied_day_stays_closed() {
        let grid = day_grid(1);
        let presence = vec![false; 48];
        let closed = shutter_schedule(&presence, &grid, &[sunset_at(&grid, 0, 17, 30)]).unwrap();
        assert!(closed.iter().all(|&c| c));
    }

    #[test]
    fn opens_on_departure_and_closes_nearest_sunset() {
        // Occupied 00:00-08:00, empty, re-occupied 17:00-24:00; sunset 17:30.
        let grid = day_grid(1);
        let mut presence = vec![false; 48];
        for k in 0..16 {
            presence[k] = true; // 00:00..08:00
        }
        for k in 34..48 {
            presence[k] = true; // 17:00..24:00
        }
        let closed = shutter_schedule(&presence, &grid, &[sunset_at(&grid, 0, 17, 30)]).unwrap();
        // open exactly at 08:00 (step 16), close at the occupied step nearest
        // 17:30, i.e. 17:30 itself (step 35)
        for (k, &c) in closed.iter().enumerate() {
            let expect_open = (16..35).contains(&k);
            assert_eq!(!c, expect_open, "step {k}");
        }
    }

    #[test]
    fn continuously_occupied_day_opens_at_first_occupancy() {
        let grid = day_grid(1);
        let presence = vec![true; 48];
        let closed = shutter_schedule(&presence, &grid, &[sunset_at(&grid, 0, 16, 0)]).unwrap();
        // open from 00:00 to the step nearest 16:00
        assert!(!closed[0]);
        assert!(!closed[31]);
        assert!(closed[32]);
    }

    #[test]
    fn identical_days_give_identical_rows() {
        let grid = day_grid(2);
        let mut presence = vec![false; 96];
        for day in 0..2 {
            for k in 0..14 {
                presence[day * 48 + k] = true;
            }
            for k in 36..48 {
                presence[day * 48 + k] = true;
            }
        }
        let sunsets = vec![sunset_at(&grid, 0, 17, 15), sunset_at(&grid, 1, 17, 15)];
        let closed = shutter_schedule(&presence, &grid, &sunsets).unwrap();
        assert_eq!(&closed[..48], &closed[48..]);
    }

    #[test]
    fn open_interval_is_within_open_close_window() {
        let grid = day_grid(1);
        let mut presence = vec![false; 48];
        for k in 10..20 {
            presence[k] = true;
        }
        let closed = shutter_schedule(&presence, &grid, &[sunset_at(&grid, 0, 18, 0)]).unwrap();
        let first_open = closed.iter().position(|&c| !c);
        let last_open = closed.iter().rposition(|&c| !c);
        if let (Some(a), Some(b)) = (first_open, last_open) {
            assert!(closed[..a].iter().all(|&c| c));
            assert!(closed[b + 1..].iter().all(|&c| c));
        }
    }

    #[test]
    fn heating_mask_wraps_new_year() {
        let grid = TimeGrid::heating_season(2018);
        let mask = heating_season_mask(&grid, MonthDay::new(10, 15), MonthDay::new(4, 15));
        let idx_of = |m: u32, d: u32| {
            (0..grid.len())
                .find(|&k| {
                    let date = grid.date(k);
                    date.month() == m && date.day() == d
                })
                .unwrap()
        };
        assert!(!mask[idx_of(10, 14)]);
        assert!(mask[idx_of(10, 15)]);
        assert!(mask[idx_of(1, 1)]);
        assert!(mask[idx_of(4, 15)]);
        assert!(!mask[idx_of(4, 16)]);
    }

    #[test]
    fn tiled_week_has_seven_day_period() {
        let grid = TimeGrid::heating_season(2018);
        let mut week = TypicalWeek::uniform(19.0f64);
        week.saturday = [21.0; 24];
        week.sunday = [22.0; 24];
        week.weekday[7] = 20.5;
        let tiled = tile_week(&week, &grid);
        let week_steps = 7 * grid.steps_per_day();
        for k in 0..grid.len() - week_steps {
            assert_eq!(tiled[k], tiled[k + week_steps]);
        }
    }

    #[test]
    fn firing_mask_burns_after_each_reload() {
        let grid = day_grid(1);
        let active = vec![true; 48];
        let mask = firing_mask(&grid, &[7, 18], 4 * 3600, &active);
        // 07:00-11:00 and 18:00-22:00
        for (k, &on) in mask.iter().enumerate() {
            let hour = k / 2;
            let expect = (7..11).contains(&hour) || (18..22).contains(&hour);
            assert_eq!(on, expect, "step {k}");
        }
    }
}
