//! Core library for the dwelling thermal-comfort pipeline: survey ingestion,
//! building-model generation, season simulation, comfort labeling and the
//! classifier benchmark.

pub mod grid;
pub mod survey;
pub mod housing;
pub mod label;
pub mod sim;
pub mod weather;
