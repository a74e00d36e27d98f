//! Building orientation from the per-room "windows predominantly south"
//! survey flags.
//!
//! Orientation is 0 when north is at the top of the template plan; a facade
//! with plan offset `o` ends up at absolute azimuth `(o + orientation) % 360`.
//! The Mozart house uses a fixed decision tree; the Matisse apartment picks
//! the rotation maximizing flagged south-facing window area.

use std::collections::BTreeMap;

use super::templates::BuildingTemplate;
use super::ModelError;
use crate::survey::RoomId;

pub const CARDINAL_ORIENTATIONS: [f64; 4] = [0.0, 90.0, 180.0, 270.0];

fn flag(is_south: &BTreeMap<RoomId, bool>, room: RoomId) -> Result<bool, ModelError> {
    is_south
        .get(&room)
        .copied()
        .ok_or(ModelError::MissingSouthFlag { room })
}

/// Decision tree for the Mozart house.
pub fn orientation_mozart(is_south: &BTreeMap<RoomId, bool>) -> Result<f64, ModelError> {
    let living = flag(is_south, RoomId::Living)?;
    let bedroom2 = flag(is_south, RoomId::Bedroom2)?;
    let bedroom3 = flag(is_south, RoomId::Bedroom3)?;
    Ok(if living {
        if bedroom3 {
            0.0
        } else {
            90.0
        }
    } else if bedroom2 && bedroom3 {
        270.0
    } else {
        180.0
    })
}

/// South-facing window area of flagged rooms at a candidate rotation.
fn south_window_area(
    template: &BuildingTemplate,
    is_south: &BTreeMap<RoomId, bool>,
    orientation_deg: f64,
) -> f64 {
    template
        .rooms
        .iter()
        .filter(|room| is_south.get(&room.name).copied().unwrap_or(false))
        .flat_map(|room| &room.facades)
        .filter(|f| (f.azimuth_offset_deg + orientation_deg).rem_euclid(360.0) == 180.0)
        .map(|f| f.window_area_m2)
        .sum()
}

/// Exhaustive maximization over the four cardinal rotations for the Matisse
/// apartment; ties resolve to the smallest angle.
pub fn orientation_matisse(
    template: &BuildingTemplate,
    is_south: &BTreeMap<RoomId, bool>,
) -> Result<f64, ModelError> {
    for room in &template.rooms {
        if !is_south.contains_key(&room.name) {
            return Err(ModelError::MissingSouthFlag { room: room.name });
        }
    }
    let mut best = (0.0f64, f64::NEG_INFINITY);
    for &candidate in &CARDINAL_ORIENTATIONS {
        let score = south_window_area(template, is_south, candidate);
        if score > best.1 {
            best = (candidate, score);
        }
    }
    Ok(best.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::housing::templates::TemplateSet;
    use crate::survey::DwellingType;

    fn flags(living: bool, bedroom2: bool, bedroom3: bool) -> BTreeMap<RoomId, bool> {
        BTreeMap::from([
            (RoomId::Living, living),
            (RoomId::Bedroom2, bedroom2),
            (RoomId::Bedroom3, bedroom3),
        ])
    }

    #[test]
    fn mozart_tree_all_eight_combinations() {
        // (living, bedroom2, bedroom3) -> orientation
        let cases = [
            ((true, true, true), 0.0),
            ((true, false, true), 0.0),
            ((true, true, false), 90.0),
            ((true, false, false), 90.0),
            ((false, true, true), 270.0),
            ((false, false, true), 180.0),
            ((false, true, false), 180.0),
            ((false, false, false), 180.0),
        ];
        for ((l, b2, b3), expected) in cases {
            let got = orientation_mozart(&flags(l, b2, b3)).unwrap();
            assert_eq!(got, expected, "living={l} bedroom2={b2} bedroom3={b3}");
        }
    }

    #[test]
    fn mozart_missing_flag_errors() {
        let mut f = flags(true, true, true);
        f.remove(&RoomId::Bedroom3);
        assert!(matches!(
            orientation_mozart(&f),
            Err(ModelError::MissingSouthFlag { room: RoomId::Bedroom3 })
        ));
    }

    fn matisse_flags(rooms: &[RoomId]) -> BTreeMap<RoomId, bool> {
        let set = TemplateSet::bundled();
        let t = set.get(DwellingType::MatisseApartment).unwrap();
        t.rooms
            .iter()
            .map(|r| (r.name, rooms.contains(&r.name)))
            .collect()
    }

    #[test]
    fn matisse_no_flags_ties_to_zero() {
        let set = TemplateSet::bundled();
        let t = set.get(DwellingType::MatisseApartment).unwrap();
        assert_eq!(orientation_matisse(t, &matisse_flags(&[])).unwrap(), 0.0);
    }

    #[test]
    fn matisse_single_flagged_room_faces_its_facade_south() {
        let set = TemplateSet::bundled();
        let t = set.get(DwellingType::MatisseApartment).unwrap();
        // Kitchen has one facade at plan offset 0: south at rotation 180.
        assert_eq!(
            orientation_matisse(t, &matisse_flags(&[RoomId::Kitchen])).unwrap(),
            180.0
        );
        // Living has one facade at plan offset 180: south at rotation 0.
        assert_eq!(
            orientation_matisse(t, &matisse_flags(&[RoomId::Living])).unwrap(),
            0.0
        );
    }

    #[test]
    fn matisse_conflicting_flags_match_bruteforce() {
        let set = TemplateSet::bundled();
        let t = set.get(DwellingType::MatisseApartment).unwrap();
        // Exhaustive oracle over the four candidates, independent arithmetic.
        let all_rooms: Vec<RoomId> = t.rooms.iter().map(|r| r.name).collect();
        for mask in 0u32..(1 << all_rooms.len()) {
            let chosen: Vec<RoomId> = all_rooms
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &r)| r)
                .collect();
            let f = matisse_flags(&chosen);
            let got = orientation_matisse(t, &f).unwrap();

            let mut best = (0.0f64, -1.0f64);
            for &theta in &CARDINAL_ORIENTATIONS {
                let mut score = 0.0;
                for room in &t.rooms {
                    if f[&room.name] {
                        for fac in &room.facades {
                            if (fac.azimuth_offset_deg + theta) % 360.0 == 180.0 {
                                score += fac.window_area_m2;
                            }
                        }
                    }
                }
                if score > best.1 {
                    best = (theta, score);
                }
            }
            assert_eq!(got, best.0, "flags {chosen:?}");
        }
    }

    #[test]
    fn mozart_template_geometry_agrees_with_the_tree() {
        // At each tree outcome, every room whose flag drove the decision
        // really gets a south-facing window with the bundled geometry.
        let set = TemplateSet::bundled();
        let t = set.get(DwellingType::MozartHouse).unwrap();
        let south_at = |room: RoomId, theta: f64| {
            t.room(room)
                .unwrap()
                .facades
                .iter()
                .any(|f| (f.azimuth_offset_deg + theta) % 360.0 == 180.0)
        };
        assert!(south_at(RoomId::Living, 0.0) && south_at(RoomId::Bedroom3, 0.0));
        assert!(south_at(RoomId::Living, 90.0) && !south_at(RoomId::Bedroom3, 90.0));
        assert!(south_at(RoomId::Bedroom2, 270.0) && south_at(RoomId::Bedroom3, 270.0));
        assert!(!south_at(RoomId::Living, 270.0));
        assert!(!south_at(RoomId::Living, 180.0));
    }
}
