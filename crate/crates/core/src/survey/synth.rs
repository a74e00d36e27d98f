//! Synthetic survey generator: a desk-scale stand-in for a real campaign.
//!
//! Records are drawn from plausible ranges for French housing stock and are
//! deterministic for a fixed seed. Comfort answers follow fixed category
//! weights (0.846 / 0.069 / 0.052 / 0.019 / 0.014) allocated by largest
//! remainder, then shuffled, so every class is populated once `n` is large
//! enough to earn it a slot.

use std::collections::BTreeMap;

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use super::record::{
    ComfortAnswer, ControllerKind, DwellingType, EraBand, HeaterType, MonthDay, RoomId,
    SurveyRecord, TypicalWeek,
};

/// Comfort-answer shares used by the generator.
pub const COMFORT_WEIGHTS: [f64; 5] = [0.846, 0.069, 0.052, 0.019, 0.014];

/// Departments the generator draws from; all resolve in the shipped
/// department -> climate-zone table.
const DEPARTMENTS: [&str; 18] = [
    "75", "62", "54", "67", "69", "21", "35", "29", "86", "44", "31", "33", "26", "07", "13",
    "06", "83", "34",
];

fn hours(ranges: &[(u32, u32)]) -> [bool; 24] {
    let mut out = [false; 24];
    for &(start, end) in ranges {
        for h in start..end {
            out[(h % 24) as usize] = true;
        }
    }
    out
}

fn ones(profile: &mut [bool; 24], ranges: &[(u32, u32)]) {
    for &(start, end) in ranges {
        for h in start..end {
            profile[(h % 24) as usize] = true;
        }
    }
}

/// Largest-remainder allocation of `n` items over `COMFORT_WEIGHTS`.
fn comfort_allocation(n: usize) -> [usize; 5] {
    let mut counts = [0usize; 5];
    let mut remainders: Vec<(usize, f64)> = Vec::with_capacity(5);
    let mut assigned = 0;
    for (i, w) in COMFORT_WEIGHTS.iter().enumerate() {
        let exact = w * n as f64;
        counts[i] = exact.floor() as usize;
        assigned += counts[i];
        remainders.push((i, exact - exact.floor()));
    }
    remainders.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    for (i, _) in remainders.iter().take(n - assigned) {
        counts[*i] += 1;
    }
    counts
}

/// Generate `n` valid survey records, deterministic for a fixed seed.
pub fn synth_survey(n: usize, seed: u64) -> Vec<SurveyRecord> {
    assert!(n >= 1, "synth_survey needs n >= 1");
    let mut rng = ChaCha20Rng::seed_from_u64(seed);

    let mut answers: Vec<ComfortAnswer> = Vec::with_capacity(n);
    for (i, count) in comfort_allocation(n).into_iter().enumerate() {
        answers.extend(std::iter::repeat(ComfortAnswer::ALL[i]).take(count));
    }
    answers.shuffle(&mut rng);

    let heater_dist = WeightedIndex::new([0.30, 0.20, 0.12, 0.08, 0.25, 0.05]).unwrap();
    let heater_types = [
        HeaterType::Convector,
        HeaterType::RadiantPanel,
        HeaterType::SoftHeat,
        HeaterType::Accumulation,
        HeaterType::Water,
        HeaterType::Wood,
    ];
    let era_dist = WeightedIndex::new([0.18, 0.25, 0.18, 0.14, 0.13, 0.12]).unwrap();

    (0..n)
        .map(|i| {
            let dwelling_type = if rng.gen_bool(0.55) {
                DwellingType::MozartHouse
            } else {
                DwellingType::MatisseApartment
            };
            let (n_rooms, floor_area_m2) = match dwelling_type {
                DwellingType::MozartHouse => (
                    if rng.gen_bool(0.70) { 4 } else { 3 },
                    rng.gen_range(75.0..145.0),
                ),
                DwellingType::MatisseApartment => (
                    if rng.gen_bool(0.65) { 3 } else { 2 },
                    rng.gen_range(42.0..92.0),
                ),
            };

            let home_all_day = rng.gen_bool(0.30);
            let wake = rng.gen_range(6..9);
            let sleep = rng.gen_range(22..24);
            let dwelling_heater = heater_types[heater_dist.sample(&mut rng)];
            let controller = match rng.gen_range(0..10) {
                0..=3 => ControllerKind::Pid,
                4..=8 => ControllerKind::Deadband,
                _ => ControllerKind::NoControl,
            };
            let base_setpoint = rng.gen_range(17.5..21.5);
            let night_setback = rng.gen_bool(0.5);
            let airs_bedrooms = rng.gen_bool(0.25);

            let mut record = SurveyRecord {
                dwelling_id: format!("syn{i:05}"),
                dwelling_type,
                n_rooms,
                floor_area_m2,
                construction_year_band: EraBand::ALL[era_dist.sample(&mut rng)],
                department: DEPARTMENTS[rng.gen_range(0..DEPARTMENTS.len())].to_string(),
                is_south: BTreeMap::new(),
                heater_power_w: BTreeMap::new(),
                heater_type: BTreeMap::new(),
                controller_type: BTreeMap::new(),
                setpoint_c: BTreeMap::new(),
                presence: BTreeMap::new(),
                window_open: BTreeMap::new(),
                heating_on: MonthDay::new(10, rng.gen_range(5..26)),
                heating_off: MonthDay::new(4, rng.gen_range(8..23)),
                aux_heater_power_w: 0.0,
                aux_heater_hours: Vec::new(),
                wood_reload_hours: Vec::new(),
                comfort_answer: answers[i],
                avg_age: rng.gen_range(22.0..78.0),
                gender_ratio: rng.gen_range(0.15..0.85),
            };
            if rng.gen_bool(0.15) {
                record.aux_heater_power_w = (rng.gen_range(8..21) * 100) as f64;
                record.aux_heater_hours = vec![18, 19, 20, 21];
            }

            for &room in record.template_rooms() {
                record.is_south.insert(room, rng.gen_bool(0.45));
            }

            let area_frac = |room: RoomId| match room {
                RoomId::Living => 0.30,
                RoomId::Kitchen => 0.12,
                RoomId::Bedroom1 | RoomId::Bedroom2 | RoomId::Bedroom3 => 0.15,
                RoomId::Bathroom => 0.08,
            };
            let watts_per_m2 = rng.gen_range(70.0..130.0);

            for room in record.occupied_rooms() {
                let heater = if dwelling_heater == HeaterType::Wood && room != RoomId::Living {
                    HeaterType::Convector
                } else {
                    dwelling_heater
                };
                let power = if controller == ControllerKind::NoControl {
                    0.0
                } else {
                    (watts_per_m2 * floor_area_m2 * area_frac(room) / 50.0).round() * 50.0
                };
                record.heater_type.insert(room, heater);
                record.heater_power_w.insert(room, power.max(0.0));
                record.controller_type.insert(room, controller);

                // Presence
                let mut weekday = [false; 24];
                let mut weekend = [false; 24];
                match room {
                    RoomId::Living => {
                        ones(&mut weekday, &[(wake, wake + 2), (18, sleep)]);
                        if home_all_day {
                            ones(&mut weekday, &[(wake, sleep)]);
                        }
                        ones(&mut weekend, &[(wake + 1, sleep)]);
                    }
                    RoomId::Kitchen => {
                        ones(&mut weekday, &[(wake, wake + 1), (19, 21)]);
                        if home_all_day {
                            ones(&mut weekday, &[(12, 13)]);
                        }
                        ones(&mut weekend, &[(wake + 1, wake + 2), (12, 13), (19, 21)]);
                    }
                    RoomId::Bathroom => {
                        ones(&mut weekday, &[(wake, wake + 1), (21, 22)]);
                        ones(&mut weekend, &[(wake + 1, wake + 2), (21, 22)]);
                    }
                    _ => {
                        // bedrooms: night occupancy wrapping midnight
                        ones(&mut weekday, &[(sleep, 24), (0, wake)]);
                        ones(&mut weekend, &[(sleep, 24), (0, wake + 1)]);
                    }
                }
                record.presence.insert(
                    room,
                    TypicalWeek { weekday, saturday: weekend, sunday: weekend },
                );

                // Setpoint
                let room_base = match room {
                    RoomId::Living | RoomId::Kitchen => base_setpoint,
                    RoomId::Bathroom => base_setpoint + 0.5,
                    _ => base_setpoint - 1.0,
                };
                let mut day = [room_base; 24];
                if night_setback {
                    for h in 0..6 {
                        day[h] = room_base - 2.0;
                    }
                }
                let mut weekday_sp = day;
                if !home_all_day {
                    for h in 9..18 {
                        weekday_sp[h] = room_base - 1.5;
                    }
                }
                record.setpoint_c.insert(
                    room,
                    TypicalWeek { weekday: weekday_sp, saturday: day, sunday: day },
                );

                // Window-open instruction: short morning airing in bedrooms.
                let window = if airs_bedrooms
                    && matches!(room, RoomId::Bedroom1 | RoomId::Bedroom2 | RoomId::Bedroom3)
                {
                    hours(&[(wake, wake + 1)])
                } else {
                    [false; 24]
                };
                record
                    .window_open
                    .insert(room, TypicalWeek { weekday: window, saturday: window, sunday: window });
            }

            if record.heater_type.values().any(|&t| t == HeaterType::Wood) {
                record.wood_reload_hours = vec![7, 18];
            }

            debug_assert!(record.validate().is_ok(), "{:?}", record.validate());
            record
        })
        .collect()
}
