//! Thermal simulation: wall discretization, the RC-network integrator,
//! window/controller switching logic and the deterministic batch runner.

mod batch;
mod controller;
mod engine;
mod heater;
mod result;
mod wall;
mod window;

pub use batch::{batch_simulate, SimJob};
pub use controller::{control, ControllerSpec, ControllerState, PidGains};
pub use engine::{simulate, SimConfig};
pub use heater::{default_radiative_fraction, HeaterSpec};
pub use result::{SimulationResult, ZoneSeries};
pub use wall::{discretize_wall, discretize_wall_with, WallAssembly, WallCell, MAX_CELL_THICKNESS_M};
pub use window::window_state;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("non-physical material: {detail}")]
    NonPhysicalMaterial { detail: String },
    #[error("grid mismatch: {detail}")]
    GridMismatch { detail: String },
    #[error("bad simulation config: {detail}")]
    BadConfig { detail: String },
    #[error("simulation diverged for dwelling `{dwelling_id}` at step {step}")]
    Diverged { dwelling_id: String, step: usize },
    #[error("i/o error: {detail}")]
    Io { detail: String },
}
