//! Room heater controllers: positional PID with anti-windup, symmetric
//! deadband with hysteresis, or no control at all (unheated room).

use serde::{Deserialize, Serialize};

use crate::survey::ControllerKind;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PidGains {
    /// W per K of error.
    pub kp: f64,
    /// W per (K * s) of accumulated error.
    pub ki: f64,
    /// W per (K / s) of error rate.
    pub kd: f64,
}

impl Default for PidGains {
    fn default() -> Self {
        Self { kp: 500.0, ki: 0.28, kd: 0.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ControllerSpec {
    pub kind: ControllerKind,
    pub gains: PidGains,
    /// Half-width of the deadband, K.
    pub deadband_halfwidth_k: f64,
}

impl ControllerSpec {
    pub fn new(kind: ControllerKind) -> Self {
        Self { kind, gains: PidGains::default(), deadband_halfwidth_k: 0.25 }
    }

    pub fn none() -> Self {
        Self::new(ControllerKind::NoControl)
    }
}

/// Mutable controller memory carried across steps.
#[derive(Debug, Clone, Copy, Default)]
pub struct ControllerState {
    /// Integral of error, K*s (PID).
    pub integral: f64,
    /// Previous error, K (PID derivative).
    pub prev_error: f64,
    /// Deadband relay state.
    pub relay_on: bool,
}

/// Commanded heater power in [0, p_nom] for one sub-step.
pub fn control(
    spec: &ControllerSpec,
    state: &mut ControllerState,
    setpoint_c: f64,
    t_air_c: f64,
    p_nom_w: f64,
    dt_s: f64,
) -> f64 {
    match spec.kind {
        ControllerKind::NoControl => 0.0,
        ControllerKind::Deadband => {
            let h = spec.deadband_halfwidth_k;
            if t_air_c < setpoint_c - h {
                state.relay_on = true;
            } else if t_air_c > setpoint_c + h {
                state.relay_on = false;
            }
            if state.relay_on {
                p_nom_w
            } else {
                0.0
            }
        }
        ControllerKind::Pid => {
            let error = setpoint_c - t_air_c;
            let g = spec.gains;
            state.integral += error * dt_s;
            // anti-windup: keep the integral contribution inside the clamp
            if g.ki > 0.0 {
                state.integral = state.integral.clamp(0.0, p_nom_w / g.ki);
            }
            let derivative = (error - state.prev_error) / dt_s;
            state.prev_error = error;
            (g.kp * error + g.ki * state.integral + g.kd * derivative).clamp(0.0, p_nom_w)
        }
    }
}
