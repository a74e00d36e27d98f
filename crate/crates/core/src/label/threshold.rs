//! Per-dwelling threshold estimation: minimize comfort/discomfort switches
//! subject to reproducing the surveyed discomfort duration.
//!
//! Three-step heuristic: (1) find the smallest single threshold admitting a
//! discomfort run of the required duration; (2) build candidate threshold
//! pairs from the local minima of the sub-threshold series, pairing each dip
//! with the recovery maximum inside the required-duration window; (3) keep
//! the candidates that satisfy both constraints under hysteresis and pick the
//! lexicographically smallest (switch count, upper threshold, lower
//! threshold). Durations count occupied (defined) steps only; Unknown gaps
//! are skipped everywhere, consistent with the state-freezing labeler.

use serde::{Deserialize, Serialize};

use super::hysteresis::{
    apply_hysteresis, apply_single_threshold, ComfortLabel, LabelSeries, ThresholdPair,
};
use super::presence::PresenceOpTempSeries;
use super::LabelError;

/// Steps needed to cover a duration (rounded up).
fn steps_needed(duration_s: i64, step_s: i64) -> usize {
    debug_assert!(step_s > 0);
    (duration_s.max(0) as f64 / step_s as f64).ceil() as usize
}

/// Longest run of consecutive values `<= threshold` in a compacted series.
fn longest_run_leq(values: &[f64], threshold: f64) -> usize {
    let mut best = 0usize;
    let mut run = 0usize;
    for &v in values {
        if v <= threshold {
            run += 1;
            best = best.max(run);
        } else {
            run = 0;
        }
    }
    best
}

/// First threshold: the smallest observed value such that the series holds a
/// run of below-or-equal steps at least `t_discomfort_s` long.
pub fn epsilon0(
    series: &PresenceOpTempSeries,
    t_discomfort_s: i64,
    step_s: i64,
) -> Result<f64, LabelError> {
    let (values, _) = series.compacted();
    if values.is_empty() {
        return Err(LabelError::NoDefinedValues);
    }
    let needed = steps_needed(t_discomfort_s, step_s);
    let mut sorted = values.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite temperatures"));
    sorted.dedup();
    if needed == 0 {
        return Ok(sorted[0]);
    }
    if needed > values.len() {
        return Err(LabelError::Infeasible {
            required_s: t_discomfort_s,
            available_s: values.len() as i64 * step_s,
        });
    }
    // longest_run_leq is monotone in the threshold: binary search the
    // smallest qualifying observed value.
    let mut lo = 0usize;
    let mut hi = sorted.len() - 1;
    if longest_run_leq(&values, sorted[hi]) < needed {
        // can only happen when needed > len, handled above
        return Err(LabelError::Infeasible {
            required_s: t_discomfort_s,
            available_s: values.len() as i64 * step_s,
        });
    }
    while lo < hi {
        let mid = (lo + hi) / 2;
        if longest_run_leq(&values, sorted[mid]) >= needed {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(sorted[lo])
}

/// Raw outcome of the candidate enumeration, kept for reporting: the local
/// minima positions (compacted indices) and both threshold arrays before the
/// degenerate-pair discard.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateTrace {
    pub n_clu: usize,
    pub id_min: Vec<usize>,
    pub eps_min_raw: Vec<f64>,
    pub eps_max_raw: Vec<f64>,
}

/// Candidate pairs from the local minima of the below-epsilon0 series. Each
/// dip pairs its value with the maximum over the following `n_clu` window
/// (inclusive); pairs without a strictly larger maximum are discarded.
pub fn candidate_pairs(
    series: &PresenceOpTempSeries,
    eps0: f64,
    t_discomfort_s: i64,
    step_s: i64,
) -> (Vec<ThresholdPair>, CandidateTrace) {
    let (values, _) = series.compacted();
    let n_clu = steps_needed(t_discomfort_s, step_s);

    // positions (in compacted space) of values strictly below epsilon0
    let below: Vec<usize> = (0..values.len()).filter(|&i| values[i] < eps0).collect();

    // local minima of the filtered list, plateaus collapse to their first index
    let mut minima: Vec<usize> = Vec::new();
    let m = below.len();
    let mut j = 0usize;
    while j < m {
        let v = values[below[j]];
        let mut end = j;
        while end + 1 < m && values[below[end + 1]] == v {
            end += 1;
        }
        let left_higher = j == 0 || values[below[j - 1]] > v;
        let right_higher = end == m - 1 || values[below[end + 1]] > v;
        if left_higher && right_higher {
            minima.push(below[j]);
        }
        j = end + 1;
    }

    let mut trace = CandidateTrace {
        n_clu,
        id_min: Vec::with_capacity(minima.len()),
        eps_min_raw: Vec::with_capacity(minima.len()),
        eps_max_raw: Vec::with_capacity(minima.len()),
    };
    let mut pairs = Vec::new();
    for &min_idx in &minima {
        let eps_min = values[min_idx];
        let window_end = (min_idx + n_clu).min(values.len() - 1);
        let eps_max = values[min_idx..=window_end]
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max);
        trace.id_min.push(min_idx);
        trace.eps_min_raw.push(eps_min);
        trace.eps_max_raw.push(eps_max);
        if eps_max > eps_min {
            let index = trace.id_min.len() - 1;
            pairs.push(ThresholdPair { eps_min_c: eps_min, eps_max_c: eps_max, candidate_index: Some(index) });
        }
    }
    (pairs, trace)
}

/// How the final thresholds were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChosenThresholds {
    Pair(ThresholdPair),
    /// No feasible candidate: single-threshold labeling at epsilon0.
    SingleThreshold { eps0_c: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CandidateEval {
    pub eps_min_c: f64,
    pub eps_max_c: f64,
    pub n_switch: usize,
    pub max_episode_s: i64,
    pub feasible: bool,
}

/// Full account of one dwelling's threshold optimization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationReport {
    pub eps0_c: f64,
    pub t_discomfort_s: i64,
    pub step_s: i64,
    pub trace: CandidateTrace,
    pub evaluations: Vec<CandidateEval>,
    pub chosen: ChosenThresholds,
    pub fallback: bool,
    /// Both constraints verified on the chosen labeling.
    pub constraints_ok: bool,
}

/// Evaluate the candidates, keep the feasible ones and choose the
/// lexicographically minimal (n_switch, eps_max, eps_min). Falls back to
/// single-threshold labeling when no candidate survives, or when the single
/// threshold would switch strictly less than every feasible pair (so the
/// chosen labeling never switches more than the single-threshold baseline).
pub fn select_pair(
    series: &PresenceOpTempSeries,
    candidates: &[ThresholdPair],
    trace: CandidateTrace,
    eps0: f64,
    t_discomfort_s: i64,
    step_s: i64,
) -> (ChosenThresholds, LabelSeries, OptimizationReport) {
    let mut evaluations = Vec::with_capacity(candidates.len());
    let mut best: Option<(usize, f64, f64, usize, LabelSeries)> = None;

    for (i, pair) in candidates.iter().enumerate() {
        let labeled = apply_hysteresis(series, pair, step_s);
        let feasible = labeled.max_episode_s() >= t_discomfort_s;
        evaluations.push(CandidateEval {
            eps_min_c: pair.eps_min_c,
            eps_max_c: pair.eps_max_c,
            n_switch: labeled.n_switch,
            max_episode_s: labeled.max_episode_s(),
            feasible,
        });
        if feasible {
            let better = match &best {
                None => true,
                Some((n, emax, emin, _, _)) => {
                    (labeled.n_switch, pair.eps_max_c, pair.eps_min_c) < (*n, *emax, *emin)
                }
            };
            if better {
                best = Some((labeled.n_switch, pair.eps_max_c, pair.eps_min_c, i, labeled));
            }
        }
    }

    let single = apply_single_threshold(series, eps0, step_s);
    let single_feasible = single.max_episode_s() >= t_discomfort_s;
    let use_single = match &best {
        None => true,
        Some((n_switch, ..)) => single_feasible && single.n_switch < *n_switch,
    };

    if use_single {
        let chosen = ChosenThresholds::SingleThreshold { eps0_c: eps0 };
        let constraints_ok = single_feasible;
        let report = OptimizationReport {
            eps0_c: eps0,
            t_discomfort_s,
            step_s,
            trace,
            evaluations,
            chosen,
            fallback: true,
            constraints_ok,
        };
        (chosen, single, report)
    } else {
        let (_, _, _, index, labels) = best.expect("use_single is true when no pair is feasible");
        let pair = candidates[index];
        let chosen = ChosenThresholds::Pair(pair);
        let constraints_ok =
            pair.eps_max_c > pair.eps_min_c && labels.max_episode_s() >= t_discomfort_s;
        let report = OptimizationReport {
            eps0_c: eps0,
            t_discomfort_s,
            step_s,
            trace,
            evaluations,
            chosen,
            fallback: false,
            constraints_ok,
        };
        (chosen, labels, report)
    }
}

/// End-to-end labeling of one dwelling's series.
pub fn label_dwelling(
    series: &PresenceOpTempSeries,
    t_discomfort_s: i64,
    step_s: i64,
) -> Result<(LabelSeries, OptimizationReport), LabelError> {
    let eps0 = epsilon0(series, t_discomfort_s, step_s)?;
    let (candidates, trace) = candidate_pairs(series, eps0, t_discomfort_s, step_s);
    let (_, labels, report) = select_pair(series, &candidates, trace, eps0, t_discomfort_s, step_s);
    Ok((labels, report))
}

/// Exhaustive oracle: search all ordered pairs of observed values and return
/// the lexicographic (n_switch, eps_max, eps_min) optimum under the
/// constraints. Desk-scale only.
pub fn brute_force_thresholds(
    series: &PresenceOpTempSeries,
    t_discomfort_s: i64,
    step_s: i64,
) -> Result<(ThresholdPair, LabelSeries), LabelError> {
    let (values, _) = series.compacted();
    if values.is_empty() {
        return Err(LabelError::NoDefinedValues);
    }
    if values.len() > 2000 {
        return Err(LabelError::OracleBudget { len: values.len() });
    }
    let mut unique = values.clone();
    unique.sort_by(|a, b| a.partial_cmp(b).expect("finite temperatures"));
    unique.dedup();

    let mut best: Option<(usize, f64, f64, ThresholdPair, LabelSeries)> = None;
    for i in 0..unique.len() {
        for j in (i + 1)..unique.len() {
            let pair = ThresholdPair {
                eps_min_c: unique[i],
                eps_max_c: unique[j],
                candidate_index: None,
            };
            let labeled = apply_hysteresis(series, &pair, step_s);
            if labeled.max_episode_s() < t_discomfort_s {
                continue;
            }
            let key = (labeled.n_switch, pair.eps_max_c, pair.eps_min_c);
            let better = match &best {
                None => true,
                Some((n, emax, emin, _, _)) => key < (*n, *emax, *emin),
            };
            if better {
                best = Some((key.0, key.1, key.2, pair, labeled));
            }
        }
    }
    best.map(|(_, _, _, pair, labels)| (pair, labels))
        .ok_or(LabelError::Infeasible {
            required_s: t_discomfort_s,
            available_s: values.len() as i64 * step_s,
        })
}

/// Count the Unknown labels that must sit exactly where nobody is home.
pub fn unknown_matches_presence(series: &PresenceOpTempSeries, labels: &LabelSeries) -> bool {
    series
        .values
        .iter()
        .zip(&labels.labels)
        .all(|(v, l)| (v.is_none()) == (*l == ComfortLabel::Unknown))
}
