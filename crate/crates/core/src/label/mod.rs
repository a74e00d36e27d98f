//! Comfort labeling: presence operative temperature, hysteresis labeling and
//! the two-threshold optimization with its exhaustive oracle.

mod hysteresis;
mod io;
mod presence;
mod threshold;

pub use hysteresis::{
    apply_hysteresis, apply_single_threshold, ComfortLabel, LabelSeries, ThresholdPair,
};
pub use io::{
    load_labels, read_labels, save_labels, save_report, write_labels, DwellingLabelReport,
    LoadedLabels, LABEL_COLUMNS,
};
pub use presence::{presence_op_temp, PresenceOpTempSeries};
pub use threshold::{
    brute_force_thresholds, candidate_pairs, epsilon0, label_dwelling, select_pair,
    unknown_matches_presence, CandidateEval, CandidateTrace, ChosenThresholds, OptimizationReport,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabelError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("aligned series have mismatched lengths: {detail}")]
    LengthMismatch { detail: String },
    #[error("series has no defined values (nobody is ever home)")]
    NoDefinedValues,
    #[error("thresholds must satisfy eps_max > eps_min, got ({eps_min_c}, {eps_max_c})")]
    DegeneratePair { eps_min_c: f64, eps_max_c: f64 },
    #[error(
        "required discomfort duration {required_s} s exceeds the occupied span {available_s} s"
    )]
    Infeasible { required_s: i64, available_s: i64 },
    #[error("series of {len} defined values exceeds the oracle budget (2000)")]
    OracleBudget { len: usize },
}
