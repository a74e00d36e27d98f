//! Two-threshold hysteresis labeling of the presence operative temperature.
//!
//! Discomfort starts once the value falls to the lower threshold and only
//! ends once it recovers to the upper one, which suppresses label chatter
//! between adjacent steps. Unknown steps (nobody home) freeze the state.

use serde::{Deserialize, Serialize};

use super::presence::PresenceOpTempSeries;
use super::LabelError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComfortLabel {
    Comfort,
    Discomfort,
    Unknown,
}

impl ComfortLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            ComfortLabel::Comfort => "comfort",
            ComfortLabel::Discomfort => "discomfort",
            ComfortLabel::Unknown => "unknown",
        }
    }
}

/// The (lower, upper) hysteresis thresholds for one dwelling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdPair {
    pub eps_min_c: f64,
    pub eps_max_c: f64,
    /// Index of the originating candidate, when produced by the heuristic.
    pub candidate_index: Option<usize>,
}

impl ThresholdPair {
    pub fn new(eps_min_c: f64, eps_max_c: f64) -> Result<Self, LabelError> {
        if !(eps_max_c > eps_min_c) {
            return Err(LabelError::DegeneratePair { eps_min_c, eps_max_c });
        }
        Ok(Self { eps_min_c, eps_max_c, candidate_index: None })
    }

    pub fn with_index(mut self, index: usize) -> Self {
        self.candidate_index = Some(index);
        self
    }
}

/// Label sequence plus its switch count and discomfort episode lengths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelSeries {
    pub labels: Vec<ComfortLabel>,
    /// Comfort <-> Discomfort transitions, Unknown gaps ignored.
    pub n_switch: usize,
    /// Maximal runs of Discomfort in defined steps; runs bridge Unknown gaps.
    pub episode_steps: Vec<usize>,
    pub step_s: i64,
}

impl LabelSeries {
    pub fn max_episode_s(&self) -> i64 {
        self.episode_steps.iter().max().copied().unwrap_or(0) as i64 * self.step_s
    }
}

/// Run the hysteresis state machine over a series. Starts in Comfort.
pub fn apply_hysteresis(
    series: &PresenceOpTempSeries,
    pair: &ThresholdPair,
    step_s: i64,
) -> LabelSeries {
    debug_assert!(pair.eps_max_c > pair.eps_min_c);
    let mut labels = Vec::with_capacity(series.len());
    let mut discomfort = false;
    let mut n_switch = 0usize;
    let mut episode_steps = Vec::new();
    let mut current = 0usize;

    for value in &series.values {
        match value {
            None => labels.push(ComfortLabel::Unknown),
            Some(v) => {
                let next = if discomfort {
                    !(*v >= pair.eps_max_c)
                } else {
                    *v <= pair.eps_min_c
                };
                if next != discomfort {
                    n_switch += 1;
                    if !next {
                        episode_steps.push(current);
                        current = 0;
                    }
                }
                discomfort = next;
                if discomfort {
                    current += 1;
                }
                labels.push(if discomfort {
                    ComfortLabel::Discomfort
                } else {
                    ComfortLabel::Comfort
                });
            }
        }
    }
    if current > 0 {
        episode_steps.push(current);
    }
    LabelSeries { labels, n_switch, episode_steps, step_s }
}

/// Single-threshold labeling (the fallback): discomfort strictly below the
/// threshold, no hysteresis.
pub fn apply_single_threshold(
    series: &PresenceOpTempSeries,
    threshold_c: f64,
    step_s: i64,
) -> LabelSeries {
    let mut labels = Vec::with_capacity(series.len());
    let mut prev: Option<bool> = None;
    let mut n_switch = 0usize;
    let mut episode_steps = Vec::new();
    let mut current = 0usize;
    for value in &series.values {
        match value {
            None => labels.push(ComfortLabel::Unknown),
            Some(v) => {
                let discomfort = *v < threshold_c;
                if let Some(p) = prev {
                    if p != discomfort {
                        n_switch += 1;
                        if !discomfort {
                            episode_steps.push(current);
                            current = 0;
                        }
                    }
                } else if discomfort {
                    n_switch += 1;
                }
                prev = Some(discomfort);
                if discomfort {
                    current += 1;
                }
                labels.push(if discomfort {
                    ComfortLabel::Discomfort
                } else {
                    ComfortLabel::Comfort
                });
            }
        }
    }
    if current > 0 {
        episode_steps.push(current);
    }
    LabelSeries { labels, n_switch, episode_steps, step_s }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(vals: &[f64]) -> PresenceOpTempSeries {
        PresenceOpTempSeries { values: vals.iter().map(|&v| Some(v)).collect() }
    }

    fn pair(lo: f64, hi: f64) -> ThresholdPair {
        ThresholdPair::new(lo, hi).unwrap()
    }

    #[test]
    fn all_above_upper_is_all_comfort() {
        let out = apply_hysteresis(&series(&[20.0, 21.0, 22.0]), &pair(15.0, 18.0), 1800);
        assert!(out.labels.iter().all(|&l| l == ComfortLabel::Comfort));
        assert_eq!(out.n_switch, 0);
        assert!(out.episode_steps.is_empty());
    }

    #[test]
    fn one_dip_gives_two_switches_one_episode() {
        let out = apply_hysteresis(
            &series(&[20.0, 15.0, 16.0, 18.5, 20.0]),
            &pair(15.0, 18.5),
            1800,
        );
        assert_eq!(out.n_switch, 2);
        assert_eq!(out.episode_steps, vec![2]);
        assert_eq!(
            out.labels,
            vec![
                ComfortLabel::Comfort,
                ComfortLabel::Discomfort,
                ComfortLabel::Discomfort,
                ComfortLabel::Comfort,
                ComfortLabel::Comfort
            ]
        );
    }

    #[test]
    fn oscillation_inside_the_band_stays_in_discomfort() {
        // this is the point of having two thresholds
        let out = apply_hysteresis(
            &series(&[20.0, 14.0, 16.0, 15.0, 17.0, 16.5, 17.9]),
            &pair(14.0, 18.0),
            1800,
        );
        assert_eq!(out.n_switch, 1);
        assert_eq!(&out.labels[1..], &[ComfortLabel::Discomfort; 6]);
        assert_eq!(out.episode_steps, vec![6]);
    }

    #[test]
    fn unknown_freezes_the_state_and_bridges_episodes() {
        let values = vec![
            Some(20.0),
            Some(14.0),
            None,
            None,
            Some(15.0),
            Some(19.0),
            Some(20.0),
        ];
        let out = apply_hysteresis(
            &PresenceOpTempSeries { values },
            &pair(14.0, 19.0),
            1800,
        );
        assert_eq!(
            out.labels,
            vec![
                ComfortLabel::Comfort,
                ComfortLabel::Discomfort,
                ComfortLabel::Unknown,
                ComfortLabel::Unknown,
                ComfortLabel::Discomfort,
                ComfortLabel::Comfort,
                ComfortLabel::Comfort
            ]
        );
        // one episode of two defined steps, bridged across the gap
        assert_eq!(out.episode_steps, vec![2]);
        assert_eq!(out.n_switch, 2);
    }

    #[test]
    fn boundary_semantics_are_inclusive() {
        // entry at v == eps_min, exit at v == eps_max
        let out = apply_hysteresis(&series(&[16.0, 15.0, 17.0, 18.0]), &pair(15.0, 18.0), 1800);
        assert_eq!(
            out.labels,
            vec![
                ComfortLabel::Comfort,
                ComfortLabel::Discomfort,
                ComfortLabel::Discomfort,
                ComfortLabel::Comfort
            ]
        );
    }

    #[test]
    fn anti_chatter_no_adjacent_switches_when_band_exceeds_step_change() {
        // max single-step change is 1.0; band is 3.0: switches can never be
        // one step apart
        let vals: Vec<f64> = (0..40)
            .map(|i| 18.0 + ((i as f64) * 0.7).sin())
            .collect();
        let out = apply_hysteresis(&series(&vals), &pair(17.2, 20.2), 1800);
        let mut last_switch: Option<usize> = None;
        let mut prev = ComfortLabel::Comfort;
        for (k, &l) in out.labels.iter().enumerate() {
            if l != prev {
                if let Some(ls) = last_switch {
                    assert!(k - ls > 1, "switches at {ls} and {k}");
                }
                last_switch = Some(k);
                prev = l;
            }
        }
    }

    #[test]
    fn degenerate_pair_is_rejected() {
        assert!(ThresholdPair::new(18.0, 18.0).is_err());
        assert!(ThresholdPair::new(19.0, 18.0).is_err());
    }

    #[test]
    fn trailing_episode_is_counted() {
        let out = apply_hysteresis(&series(&[20.0, 14.0, 14.5]), &pair(14.0, 19.0), 1800);
        assert_eq!(out.n_switch, 1);
        assert_eq!(out.episode_steps, vec![2]);
        assert_eq!(out.max_episode_s(), 3600);
    }
}
