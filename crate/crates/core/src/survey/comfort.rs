//! Mapping from the survey comfort answer to a target discomfort duration.
//!
//! Only the second category has a duration stated by the survey wording
//! ("cold for at least 24 hours"); the remaining categories are configurable.
//! The two "almost always"/"always" answers are fractions of the household's
//! occupied time, so the resolved duration is always achievable by a series
//! that is cold whenever someone is home.

use serde::{Deserialize, Serialize};

use super::record::ComfortAnswer;
use super::SurveyError;

/// Configurable answer -> duration table. Durations in seconds; fractions
/// apply to the dwelling's occupied (presence-defined) span.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ComfortDurationTable {
    pub cold_at_least_24h_s: i64,
    pub cold_few_days_s: i64,
    pub cold_almost_always_frac: f64,
    pub cold_always_frac: f64,
}

impl Default for ComfortDurationTable {
    fn default() -> Self {
        Self {
            cold_at_least_24h_s: 24 * 3600,
            cold_few_days_s: 72 * 3600,
            cold_almost_always_frac: 0.60,
            cold_always_frac: 0.90,
        }
    }
}

impl ComfortDurationTable {
    /// Resolve the survey answer into a discomfort duration in seconds, given
    /// the occupied span of the dwelling's season.
    pub fn resolve(&self, answer: ComfortAnswer, occupied_span_s: i64) -> i64 {
        match answer {
            ComfortAnswer::Comfortable => 0,
            ComfortAnswer::ColdAtLeast24h => self.cold_at_least_24h_s,
            ComfortAnswer::ColdFewDays => self.cold_few_days_s,
            ComfortAnswer::ColdAlmostAlways => {
                (self.cold_almost_always_frac * occupied_span_s as f64).round() as i64
            }
            ComfortAnswer::ColdAlways => {
                (self.cold_always_frac * occupied_span_s as f64).round() as i64
            }
        }
    }

    /// Durations must be strictly increasing across categories for the given
    /// occupied span (zero for Comfortable).
    pub fn validate(&self, occupied_span_s: i64) -> Result<(), SurveyError> {
        let durations: Vec<i64> = ComfortAnswer::ALL
            .iter()
            .map(|&a| self.resolve(a, occupied_span_s))
            .collect();
        if durations[0] != 0 {
            return Err(SurveyError::BadDurationTable {
                detail: "Comfortable must map to 0".into(),
            });
        }
        if !durations.windows(2).all(|w| w[0] < w[1]) {
            return Err(SurveyError::BadDurationTable {
                detail: format!("durations not strictly increasing: {durations:?}"),
            });
        }
        Ok(())
    }
}

/// Shorthand with the default table.
pub fn map_comfort_category(answer: ComfortAnswer, occupied_span_s: i64) -> i64 {
    ComfortDurationTable::default().resolve(answer, occupied_span_s)
}

#[cfg(test)]
mod tests {
    use super::*;

    const WEEK_S: i64 = 7 * 86_400;

    #[test]
    fn comfortable_maps_to_zero() {
        assert_eq!(map_comfort_category(ComfortAnswer::Comfortable, WEEK_S), 0);
    }

    #[test]
    fn cold_at_least_24h_maps_to_24h() {
        assert_eq!(
            map_comfort_category(ComfortAnswer::ColdAtLeast24h, WEEK_S),
            24 * 3600
        );
    }

    #[test]
    fn cold_few_days_default_is_72h() {
        assert_eq!(
            map_comfort_category(ComfortAnswer::ColdFewDays, WEEK_S),
            72 * 3600
        );
    }

    #[test]
    fn durations_strictly_increase() {
        // 7 occupied days: 0 < 24h < 72h < 0.6*7d (~100.8h) < 0.9*7d
        ComfortDurationTable::default().validate(WEEK_S).unwrap();
        let mut previous = -1;
        for &answer in ComfortAnswer::ALL {
            let d = map_comfort_category(answer, WEEK_S);
            assert!(d > previous, "{answer} gave {d} after {previous}");
            previous = d;
        }
    }

    #[test]
    fn too_short_span_fails_validation() {
        // With only 2 occupied days, 60% of span < 72 h: ordering breaks.
        let err = ComfortDurationTable::default().validate(2 * 86_400);
        assert!(err.is_err());
    }
}
