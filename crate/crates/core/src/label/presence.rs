//! Presence operative temperature: the operative temperature averaged over
//! occupied rooms, defined only while someone is home.

use super::LabelError;

/// Per-step presence operative temperature; `None` marks steps with nobody
/// home (the Unknown state downstream).
#[derive(Debug, Clone, PartialEq)]
pub struct PresenceOpTempSeries {
    pub values: Vec<Option<f64>>,
}

impl PresenceOpTempSeries {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn defined_count(&self) -> usize {
        self.values.iter().flatten().count()
    }

    /// Defined values in time order plus their original step indices.
    pub fn compacted(&self) -> (Vec<f64>, Vec<usize>) {
        let mut vals = Vec::with_capacity(self.values.len());
        let mut idx = Vec::with_capacity(self.values.len());
        for (k, v) in self.values.iter().enumerate() {
            if let Some(v) = v {
                vals.push(*v);
                idx.push(k);
            }
        }
        (vals, idx)
    }
}

/// Presence-weighted mean of per-room operative temperatures; `None` at steps
/// where no room is occupied.
pub fn presence_op_temp(
    t_op_per_room: &[&[f64]],
    presence_per_room: &[&[bool]],
) -> Result<PresenceOpTempSeries, LabelError> {
    if t_op_per_room.len() != presence_per_room.len() {
        return Err(LabelError::LengthMismatch {
            detail: format!(
                "{} temperature rooms vs {} presence rooms",
                t_op_per_room.len(),
                presence_per_room.len()
            ),
        });
    }
    let n = t_op_per_room.first().map_or(0, |s| s.len());
    for (i, (t, p)) in t_op_per_room.iter().zip(presence_per_room).enumerate() {
        if t.len() != n || p.len() != n {
            return Err(LabelError::LengthMismatch {
                detail: format!("room {i} series length differs"),
            });
        }
    }

    let values = (0..n)
        .map(|k| {
            let mut sum = 0.0;
            let mut occupants = 0u32;
            for (t, p) in t_op_per_room.iter().zip(presence_per_room) {
                if p[k] {
                    sum += t[k];
                    occupants += 1;
                }
            }
            (occupants > 0).then(|| sum / occupants as f64)
        })
        .collect();
    Ok(PresenceOpTempSeries { values })
}
