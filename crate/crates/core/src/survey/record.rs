//! Survey domain types: one record per household, with typed per-room answers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Canonical room identifiers shared by both dwelling templates.
///
/// Ordering is significant: iteration over room maps must be deterministic,
/// so rooms are always visited in this declaration order.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "snake_case")]
pub enum RoomId {
    Living,
    Kitchen,
    Bedroom1,
    Bedroom2,
    Bedroom3,
    Bathroom,
}

impl RoomId {
    pub const ALL: [RoomId; 6] = [
        RoomId::Living,
        RoomId::Kitchen,
        RoomId::Bedroom1,
        RoomId::Bedroom2,
        RoomId::Bedroom3,
        RoomId::Bathroom,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            RoomId::Living => "living",
            RoomId::Kitchen => "kitchen",
            RoomId::Bedroom1 => "bedroom1",
            RoomId::Bedroom2 => "bedroom2",
            RoomId::Bedroom3 => "bedroom3",
            RoomId::Bathroom => "bathroom",
        }
    }
}

impl fmt::Display for RoomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RoomId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RoomId::ALL
            .iter()
            .copied()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| format!("unknown room `{s}`"))
    }
}

macro_rules! string_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $lit:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(&self) -> &'static str {
                match self { $($name::$variant => $lit),+ }
            }
        }

        // Serialized as the survey literal so CSV, RON and JSON agree.
        impl Serialize for $name {
            fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.serialize_str(self.as_str())
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($lit => Ok($name::$variant),)+
                    other => Err(format!(concat!("unknown ", stringify!($name), " `{}`"), other)),
                }
            }
        }
    };
}

string_enum! {
    /// The two building templates a survey answer can map onto.
    DwellingType {
        MozartHouse => "mozart_house",
        MatisseApartment => "matisse_apartment",
    }
}

string_enum! {
    /// Construction-year band, used to pick a construction record.
    EraBand {
        Pre1948 => "pre1948",
        Y1949To1974 => "1949-1974",
        Y1975To1989 => "1975-1989",
        Y1990To2000 => "1990-2000",
        Y2001To2012 => "2001-2012",
        Post2012 => "post2012",
    }
}

string_enum! {
    /// Heater families; the convective/radiative split is constant per family.
    HeaterType {
        Convector => "convector",
        RadiantPanel => "radiant_panel",
        SoftHeat => "soft_heat",
        Accumulation => "accumulation",
        Water => "water",
        Wood => "wood",
    }
}

string_enum! {
    /// Room-level heater control.
    ControllerKind {
        Pid => "pid",
        Deadband => "deadband",
        NoControl => "none",
    }
}

string_enum! {
    /// The five survey answers to the winter-comfort question.
    ComfortAnswer {
        Comfortable => "comfortable",
        ColdAtLeast24h => "cold_at_least_24h",
        ColdFewDays => "cold_few_days",
        ColdAlmostAlways => "cold_almost_always",
        ColdAlways => "cold_always",
    }
}

/// A weekly profile given as three typical days of 24 hourly values:
/// weekday (Mon-Fri), Saturday, Sunday.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TypicalWeek<T> {
    pub weekday: [T; 24],
    pub saturday: [T; 24],
    pub sunday: [T; 24],
}

impl<T: Copy> TypicalWeek<T> {
    pub fn uniform(value: T) -> Self {
        Self {
            weekday: [value; 24],
            saturday: [value; 24],
            sunday: [value; 24],
        }
    }

    pub fn day_profile(&self, weekday: chrono::Weekday) -> &[T; 24] {
        use chrono::Weekday::*;
        match weekday {
            Sat => &self.saturday,
            Sun => &self.sunday,
            Mon | Tue | Wed | Thu | Fri => &self.weekday,
        }
    }

    /// Hourly value at a given weekday and hour of day.
    pub fn at(&self, weekday: chrono::Weekday, hour: u32) -> T {
        self.day_profile(weekday)[hour as usize % 24]
    }
}

/// A recurring calendar date (month, day), e.g. the heating switch-on date.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonthDay {
    pub month: u32,
    pub day: u32,
}

impl MonthDay {
    pub fn new(month: u32, day: u32) -> Self {
        Self { month, day }
    }
}

impl fmt::Display for MonthDay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:02}-{:02}", self.month, self.day)
    }
}

impl FromStr for MonthDay {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (m, d) = s
            .split_once('-')
            .ok_or_else(|| format!("expected MM-DD, got `{s}`"))?;
        let month: u32 = m.parse().map_err(|_| format!("bad month in `{s}`"))?;
        let day: u32 = d.parse().map_err(|_| format!("bad day in `{s}`"))?;
        if !(1..=12).contains(&month) || !(1..=31).contains(&day) {
            return Err(format!("out-of-range date `{s}`"));
        }
        Ok(Self { month, day })
    }
}

/// One household's survey answers, mapped to typed fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyRecord {
    pub dwelling_id: String,
    pub dwelling_type: DwellingType,
    /// Main-room count (living room + bedrooms). Mozart: 3 or 4, Matisse: 2 or 3;
    /// the smaller value means Bedroom 2 is unoccupied.
    pub n_rooms: u8,
    pub floor_area_m2: f64,
    pub construction_year_band: EraBand,
    /// French department code ("01".."95", "2A", "2B"); resolves the climate zone.
    pub department: String,
    /// Whether a room's windows are predominantly south-facing; covers the
    /// template's full room list (geometry does not depend on occupancy).
    pub is_south: BTreeMap<RoomId, bool>,
    pub heater_power_w: BTreeMap<RoomId, f64>,
    pub heater_type: BTreeMap<RoomId, HeaterType>,
    pub controller_type: BTreeMap<RoomId, ControllerKind>,
    pub setpoint_c: BTreeMap<RoomId, TypicalWeek<f64>>,
    pub presence: BTreeMap<RoomId, TypicalWeek<bool>>,
    pub window_open: BTreeMap<RoomId, TypicalWeek<bool>>,
    pub heating_on: MonthDay,
    pub heating_off: MonthDay,
    pub aux_heater_power_w: f64,
    /// Hours of day (0..24) the auxiliary heater runs.
    pub aux_heater_hours: Vec<u8>,
    /// Hours of day a wood stove is reloaded (empty unless a room heats with wood).
    pub wood_reload_hours: Vec<u8>,
    pub comfort_answer: ComfortAnswer,
    pub avg_age: f64,
    /// Female fraction of the household, in [0, 1].
    pub gender_ratio: f64,
}

impl SurveyRecord {
    /// Geometric room list of the record's template.
    pub fn template_rooms(&self) -> &'static [RoomId] {
        match self.dwelling_type {
            DwellingType::MozartHouse => &[
                RoomId::Living,
                RoomId::Kitchen,
                RoomId::Bedroom1,
                RoomId::Bedroom2,
                RoomId::Bedroom3,
                RoomId::Bathroom,
            ],
            DwellingType::MatisseApartment => &[
                RoomId::Living,
                RoomId::Kitchen,
                RoomId::Bedroom1,
                RoomId::Bedroom2,
                RoomId::Bathroom,
            ],
        }
    }

    /// Whether Bedroom 2 is declared unoccupied (smaller main-room count).
    pub fn bedroom2_empty(&self) -> bool {
        match self.dwelling_type {
            DwellingType::MozartHouse => self.n_rooms == 3,
            DwellingType::MatisseApartment => self.n_rooms == 2,
        }
    }

    /// Rooms that are lived in (heated, scheduled).
    pub fn occupied_rooms(&self) -> Vec<RoomId> {
        self.template_rooms()
            .iter()
            .copied()
            .filter(|&r| !(r == RoomId::Bedroom2 && self.bedroom2_empty()))
            .collect()
    }

    /// Check every record invariant; returns a human-readable violation.
    pub fn validate(&self) -> Result<(), String> {
        if !(self.floor_area_m2 > 0.0) {
            return Err(format!("floor_area_m2 must be > 0, got {}", self.floor_area_m2));
        }
        let valid_n = match self.dwelling_type {
            DwellingType::MozartHouse => [3u8, 4],
            DwellingType::MatisseApartment => [2u8, 3],
        };
        if !valid_n.contains(&self.n_rooms) {
            return Err(format!(
                "n_rooms {} inconsistent with {}",
                self.n_rooms, self.dwelling_type
            ));
        }
        for room in self.template_rooms() {
            if !self.is_south.contains_key(room) {
                return Err(format!("missing is_south flag for {room}"));
            }
        }
        for room in self.occupied_rooms() {
            for (name, present) in [
                ("heater_power", self.heater_power_w.contains_key(&room)),
                ("heater_type", self.heater_type.contains_key(&room)),
                ("controller_type", self.controller_type.contains_key(&room)),
                ("setpoint", self.setpoint_c.contains_key(&room)),
                ("presence", self.presence.contains_key(&room)),
                ("window", self.window_open.contains_key(&room)),
            ] {
                if !present {
                    return Err(format!("missing {name} for occupied room {room}"));
                }
            }
        }
        if let Some((room, p)) = self.heater_power_w.iter().find(|(_, &p)| !(p >= 0.0)) {
            return Err(format!("heater_power for {room} must be >= 0, got {p}"));
        }
        if !(0.0..=1.0).contains(&self.gender_ratio) {
            return Err(format!("gender_ratio must be in [0,1], got {}", self.gender_ratio));
        }
        if self.avg_age <= 0.0 {
            return Err(format!("avg_age must be positive, got {}", self.avg_age));
        }
        Ok(())
    }
}
