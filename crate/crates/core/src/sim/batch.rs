//! Deterministic batch runner: many dwellings simulated on a fixed-size
//! worker pool. Outputs are a pure function of the inputs, independent of the
//! worker count and of scheduling; per-dwelling failures are isolated.

use rayon::prelude::*;

use super::engine::{simulate, SimConfig};
use super::result::SimulationResult;
use super::SimError;
use crate::housing::{BuildingModel, ScheduleSet};
use crate::weather::WeatherSeries;

/// One simulation job. Weather is shared per climate zone.
pub struct SimJob<'a> {
    pub model: &'a BuildingModel,
    pub schedules: &'a ScheduleSet,
    pub weather: &'a WeatherSeries,
}

/// Simulate all jobs on `workers` threads; the result order matches the job
/// order regardless of scheduling.
pub fn batch_simulate(
    jobs: &[SimJob<'_>],
    config: &SimConfig,
    workers: usize,
) -> Result<Vec<Result<SimulationResult, SimError>>, SimError> {
    if workers < 1 {
        return Err(SimError::BadConfig { detail: "workers must be >= 1".into() });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| SimError::BadConfig { detail: e.to_string() })?;
    Ok(pool.install(|| {
        jobs.par_iter()
            .map(|job| simulate(job.model, job.schedules, job.weather, config))
            .collect()
    }))
}
