//! Semi-implicit integrator for the dwelling RC network.
//!
//! All wall cells, surface nodes and zone air nodes form one linear system
//! advanced with backward Euler at a fixed sub-step. Switching logic
//! (windows, shutters, controllers, stove firing) is evaluated explicitly
//! from the previous state, so within a sub-step the system is linear with a
//! constant matrix; the LU factorization is reused until a switching change
//! alters a coupling. Conduction is one-dimensional per assembly; surface
//! convection follows Newton's law; air is not exchanged between rooms.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::controller::{control, ControllerState};
use super::result::{SimulationResult, ZoneSeries};
use super::wall::discretize_wall_with;
use super::window::window_state;
use super::SimError;
use crate::grid::{interp_series, STEP_S};
use crate::housing::{BuildingModel, ScheduleSet, SurfaceBoundary};
use crate::survey::HeaterType;
use crate::weather::{hdkr_tilted_irradiance, solar_position, WeatherSeries};

const AIR_DENSITY_KG_M3: f64 = 1.204;
const AIR_SPECIFIC_HEAT_J_KGK: f64 = 1006.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SimConfig {
    /// Integrator sub-step, s; must divide the 1800 s output step.
    pub substep_s: i64,
    /// Temperature of unmodeled neighbor dwellings behind party surfaces.
    pub neighbor_temp_c: f64,
    /// Extra air-change rate while a window is open, 1/h.
    pub window_open_ach: f64,
    /// Multiplier on the zone air heat capacity (furniture).
    pub furniture_multiplier: f64,
    pub init_temp_c: f64,
    /// Window solar transmission multiplier while shutters are closed.
    pub shutter_solar_factor: f64,
    /// Window U multiplier while shutters are closed.
    pub shutter_u_factor: f64,
    /// Air must cool this far below the setpoint for an open window to close.
    pub window_close_delta_k: f64,
    /// Radiative share of the auxiliary (mobile) heater.
    pub aux_radiative_fraction: f64,
    /// Maximum wall cell thickness, m.
    pub max_wall_cell_m: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            substep_s: 300,
            neighbor_temp_c: 19.0,
            window_open_ach: 10.0,
            furniture_multiplier: 1.0,
            init_temp_c: 19.0,
            shutter_solar_factor: 0.1,
            shutter_u_factor: 0.85,
            window_close_delta_k: 3.0,
            aux_radiative_fraction: 0.2,
            max_wall_cell_m: 0.05,
        }
    }
}

struct SurfaceNodes {
    /// Far-side surface node; None for adiabatic backs.
    outer: Option<usize>,
    inner: usize,
    first_cell: usize,
    n_cells: usize,
}

/// Assembled constant structure of one dwelling's network.
struct Network {
    n: usize,
    zone_air: Vec<usize>,
    /// diag(M/dt) + constant conductances
    base_a: DMatrix<f64>,
    cap_over_dt: DVector<f64>,
    /// (node, conductance) pairs coupled to the current outdoor temperature
    exterior_nodes: Vec<(usize, f64)>,
    /// (node, conductance) pairs coupled to the fixed neighbor temperature
    neighbor_nodes: Vec<(usize, f64)>,
    /// per zone: infiltration conductance to outdoors, W/K
    infiltration_g: Vec<f64>,
    /// per zone: additional venting conductance while a window is open
    venting_g: Vec<f64>,
    /// per zone: window U*A without shutter reduction
    window_ua: Vec<f64>,
    /// per zone: interior (node, area) pairs for radiant distribution and MRT
    interior: Vec<Vec<(usize, f64)>>,
    interior_area: Vec<f64>,
    /// per zone: (azimuth_deg, shgc*area) of windows collecting solar
    solar_windows: Vec<Vec<(f64, f64)>>,
}

fn build_network(model: &BuildingModel, config: &SimConfig) -> Result<Network, SimError> {
    let n_zones = model.zones.len();
    let zone_index = |room| model.zones.iter().position(|z| z.room == room).unwrap();

    // Discretize and lay out nodes: per surface [outer?, cells.., inner], then airs.
    let mut surface_nodes = Vec::with_capacity(model.surfaces.len());
    let mut assemblies = Vec::with_capacity(model.surfaces.len());
    let mut next = 0usize;
    for s in &model.surfaces {
        let assembly = discretize_wall_with(&s.layers, s.area_m2, config.max_wall_cell_m)?;
        let has_outer = !matches!(s.boundary, SurfaceBoundary::Adiabatic { .. });
        let outer = has_outer.then(|| {
            let i = next;
            next += 1;
            i
        });
        let first_cell = next;
        next += assembly.cells.len();
        let inner = next;
        next += 1;
        surface_nodes.push(SurfaceNodes { outer, inner, first_cell, n_cells: assembly.cells.len() });
        assemblies.push(assembly);
    }
    let zone_air: Vec<usize> = (0..n_zones).map(|z| next + z).collect();
    let n = next + n_zones;

    let dt = config.substep_s as f64;
    let mut cap_over_dt = DVector::zeros(n);
    let mut base_k = DMatrix::zeros(n, n);
    let couple = |k: &mut DMatrix<f64>, i: usize, j: usize, g: f64| {
        k[(i, i)] += g;
        k[(j, j)] += g;
        k[(i, j)] -= g;
        k[(j, i)] -= g;
    };

    let mut exterior_nodes = Vec::new();
    let mut neighbor_nodes = Vec::new();
    let mut interior: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n_zones];
    let mut solar_windows: Vec<Vec<(f64, f64)>> = vec![Vec::new(); n_zones];
    let mut window_ua = vec![0.0; n_zones];

    for ((s, nodes), assembly) in model.surfaces.iter().zip(&surface_nodes).zip(&assemblies) {
        for (c, cell) in assembly.cells.iter().enumerate() {
            cap_over_dt[nodes.first_cell + c] += cell.capacity_j_k / dt;
        }
        // conduction chain
        let g = &assembly.conductances_w_k;
        if let Some(outer) = nodes.outer {
            couple(&mut base_k, outer, nodes.first_cell, g[0]);
        }
        for c in 0..nodes.n_cells - 1 {
            couple(&mut base_k, nodes.first_cell + c, nodes.first_cell + c + 1, g[c + 1]);
        }
        couple(&mut base_k, nodes.first_cell + nodes.n_cells - 1, nodes.inner, g[nodes.n_cells]);

        let (zone_a, zone_b) = s.zones();
        let za = zone_index(zone_a);
        couple(&mut base_k, nodes.inner, zone_air[za], s.h_in_w_m2k * s.area_m2);
        interior[za].push((nodes.inner, s.area_m2));

        match s.boundary {
            SurfaceBoundary::Exterior { azimuth_deg, .. } => {
                let outer = nodes.outer.expect("exterior surfaces have an outer node");
                let g_out = s.h_out_w_m2k * s.area_m2;
                base_k[(outer, outer)] += g_out;
                exterior_nodes.push((outer, g_out));
                if let Some(w) = &s.window {
                    window_ua[za] += w.u_w_m2k * w.area_m2;
                    solar_windows[za].push((azimuth_deg, w.shgc * w.area_m2));
                }
            }
            SurfaceBoundary::Neighbor { .. } => {
                let outer = nodes.outer.expect("neighbor surfaces have an outer node");
                let g_out = s.h_out_w_m2k * s.area_m2;
                base_k[(outer, outer)] += g_out;
                neighbor_nodes.push((outer, g_out));
            }
            SurfaceBoundary::Partition { .. } => {
                let outer = nodes.outer.expect("partitions have a far-side node");
                let zb = zone_index(zone_b.expect("partition has two zones"));
                couple(&mut base_k, outer, zone_air[zb], s.h_out_w_m2k * s.area_m2);
                interior[zb].push((outer, s.area_m2));
            }
            SurfaceBoundary::Adiabatic { .. } => {}
        }
    }

    let mut infiltration_g = vec![0.0; n_zones];
    let mut venting_g = vec![0.0; n_zones];
    for (z, zone) in model.zones.iter().enumerate() {
        let air = zone_air[z];
        cap_over_dt[air] += AIR_DENSITY_KG_M3
            * AIR_SPECIFIC_HEAT_J_KGK
            * zone.volume_m3
            * config.furniture_multiplier
            / dt;
        let g_inf = zone.infiltration_ach / 3600.0
            * zone.volume_m3
            * AIR_DENSITY_KG_M3
            * AIR_SPECIFIC_HEAT_J_KGK;
        infiltration_g[z] = g_inf;
        base_k[(air, air)] += g_inf;
        venting_g[z] = config.window_open_ach / 3600.0
            * zone.volume_m3
            * AIR_DENSITY_KG_M3
            * AIR_SPECIFIC_HEAT_J_KGK;
    }

    let mut base_a = base_k;
    for i in 0..n {
        base_a[(i, i)] += cap_over_dt[i];
    }
    let interior_area = interior
        .iter()
        .map(|v| v.iter().map(|(_, a)| a).sum())
        .collect();

    Ok(Network {
        n,
        zone_air,
        base_a,
        cap_over_dt,
        exterior_nodes,
        neighbor_nodes,
        infiltration_g,
        venting_g,
        window_ua,
        interior,
        interior_area,
        solar_windows,
    })
}

/// Per-sub-step switching outcome.
struct Switching {
    window_open: Vec<bool>,
    shutter_closed: Vec<bool>,
    q_conv_w: Vec<f64>,
    q_rad_w: Vec<f64>,
}

/// Simulate one dwelling over the common schedule/weather grid.
pub fn simulate(
    model: &BuildingModel,
    schedules: &ScheduleSet,
    weather: &WeatherSeries,
    config: &SimConfig,
) -> Result<SimulationResult, SimError> {
    if schedules.grid != weather.grid {
        return Err(SimError::GridMismatch {
            detail: format!(
                "schedule grid ({} steps from {}) differs from weather grid ({} steps from {})",
                schedules.grid.len(),
                schedules.grid.start(),
                weather.grid.len(),
                weather.grid.start()
            ),
        });
    }
    if config.substep_s <= 0 || STEP_S % config.substep_s != 0 {
        return Err(SimError::BadConfig {
            detail: format!("sub-step {} s must divide {STEP_S} s", config.substep_s),
        });
    }
    schedules
        .validate()
        .map_err(|e| SimError::GridMismatch { detail: e.to_string() })?;

    let grid = &schedules.grid;
    let n_out = grid.len();
    let substeps = (STEP_S / config.substep_s) as usize;
    let dt = config.substep_s as f64;

    let net = build_network(model, config)?;
    let n_zones = model.zones.len();
    let room_schedules: Vec<&crate::housing::RoomSchedule> = model
        .zones
        .iter()
        .map(|z| &schedules.rooms[&z.room])
        .collect();

    let mut x = DVector::from_element(net.n, config.init_temp_c);
    let mut controller_states = vec![ControllerState::default(); n_zones];
    let mut window_now = vec![false; n_zones];

    // LU cache keyed by the per-zone (window, shutter) coupling state.
    let mut factored: Option<(Vec<(bool, bool)>, nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>)> =
        None;

    let mut out_zones: Vec<ZoneSeries> = model
        .zones
        .iter()
        .map(|z| ZoneSeries {
            room: z.room,
            t_air_c: Vec::with_capacity(n_out),
            t_mr_c: Vec::with_capacity(n_out),
            t_op_c: Vec::with_capacity(n_out),
            q_conv_w: Vec::with_capacity(n_out),
            q_rad_w: Vec::with_capacity(n_out),
            window_open: Vec::with_capacity(n_out),
            presence: Vec::with_capacity(n_out),
        })
        .collect();
    let mut t_out_series = Vec::with_capacity(n_out);

    let mut rhs = DVector::zeros(net.n);
    for k in 0..n_out {
        for sub in 0..substeps {
            // Explicit switching from the previous state.
            let heating = schedules.heating_active[k];
            let mut sw = Switching {
                window_open: vec![false; n_zones],
                shutter_closed: vec![false; n_zones],
                q_conv_w: vec![0.0; n_zones],
                q_rad_w: vec![0.0; n_zones],
            };
            for (z, zone) in model.zones.iter().enumerate() {
                let sched = room_schedules[z];
                let t_air = x[net.zone_air[z]];
                let setpoint = sched.setpoint_c[k];
                window_now[z] = window_state(
                    window_now[z],
                    sched.window_open_instruction[k],
                    t_air,
                    setpoint,
                    config.window_close_delta_k,
                );
                sw.window_open[z] = window_now[z];
                sw.shutter_closed[z] = sched.shutter_closed[k];

                let command = if !heating {
                    0.0
                } else if zone.heater.kind == HeaterType::Wood {
                    if sched.wood_burning[k] {
                        zone.heater.p_nom_w
                    } else {
                        0.0
                    }
                } else {
                    control(
                        &zone.controller,
                        &mut controller_states[z],
                        setpoint,
                        t_air,
                        zone.heater.p_nom_w,
                        dt,
                    )
                };
                let (conv, rad) = zone.heater.split(command);
                sw.q_conv_w[z] += conv;
                sw.q_rad_w[z] += rad;
                if zone.room == model.aux_heater_room && schedules.aux_heater_on[k] {
                    let aux = model.aux_heater_power_w;
                    sw.q_conv_w[z] += aux * (1.0 - config.aux_radiative_fraction);
                    sw.q_rad_w[z] += aux * config.aux_radiative_fraction;
                }
            }

            if sub == 0 {
                emit(&mut out_zones, &mut t_out_series, &net, &x, &sw, room_schedules.as_slice(), weather, k);
                if k == n_out - 1 {
                    break;
                }
            }

            // Refactor on coupling change.
            let key: Vec<(bool, bool)> = sw
                .window_open
                .iter()
                .zip(&sw.shutter_closed)
                .map(|(&w, &s)| (w, s))
                .collect();
            let needs_factor = match &factored {
                Some((cached, _)) => *cached != key,
                None => true,
            };
            if needs_factor {
                let mut a = net.base_a.clone();
                for z in 0..n_zones {
                    let air = net.zone_air[z];
                    a[(air, air)] += variable_g(&net, config, z, &key[z]);
                }
                factored = Some((key.clone(), a.lu()));
            }

            // RHS at the end of the sub-step.
            let t_end = grid.offset_s(k) + (sub as i64 + 1) * config.substep_s;
            let t_out = interp_series(grid, &weather.t_out_c, t_end);
            let beam = interp_series(grid, &weather.beam_horiz_wm2, t_end).max(0.0);
            let diffuse = interp_series(grid, &weather.diffuse_horiz_wm2, t_end).max(0.0);
            let albedo = interp_series(grid, &weather.albedo, t_end).clamp(0.0, 1.0);
            let sun = solar_position(
                weather.latitude_deg,
                weather.longitude_deg,
                grid.start() + chrono::Duration::seconds(t_end),
            );

            for i in 0..net.n {
                rhs[i] = net.cap_over_dt[i] * x[i];
            }
            for &(node, g) in &net.exterior_nodes {
                rhs[node] += g * t_out;
            }
            for &(node, g) in &net.neighbor_nodes {
                rhs[node] += g * config.neighbor_temp_c;
            }
            for z in 0..n_zones {
                let air = net.zone_air[z];
                rhs[air] += (variable_g(&net, config, z, &key[z]) + net.infiltration_g[z]) * t_out;
                rhs[air] += sw.q_conv_w[z];

                let mut solar = 0.0;
                if beam + diffuse > 0.0 {
                    let factor = if sw.shutter_closed[z] { config.shutter_solar_factor } else { 1.0 };
                    for &(azimuth, shgc_area) in &net.solar_windows[z] {
                        solar += factor
                            * shgc_area
                            * hdkr_tilted_irradiance(beam, diffuse, albedo, 90.0, azimuth, &sun);
                    }
                }
                let radiant = sw.q_rad_w[z] + solar;
                if radiant != 0.0 {
                    if net.interior_area[z] > 0.0 {
                        for &(node, area) in &net.interior[z] {
                            rhs[node] += radiant * area / net.interior_area[z];
                        }
                    } else {
                        rhs[air] += radiant;
                    }
                }
            }

            let (_, lu) = factored.as_ref().expect("factorized above");
            match lu.solve(&rhs) {
                Some(next) => x = next,
                None => {
                    return Err(SimError::Diverged {
                        dwelling_id: model.dwelling_id.clone(),
                        step: k,
                    })
                }
            }
            if !x.iter().all(|v| v.is_finite()) {
                return Err(SimError::Diverged { dwelling_id: model.dwelling_id.clone(), step: k });
            }
        }
    }

    Ok(SimulationResult {
        dwelling_id: model.dwelling_id.clone(),
        grid: grid.clone(),
        t_out_c: t_out_series,
        zones: out_zones,
    })
}

/// Window-dependent conductance between a zone's air node and outdoors.
fn variable_g(net: &Network, config: &SimConfig, z: usize, key: &(bool, bool)) -> f64 {
    let (window_open, shutter_closed) = *key;
    let ua = net.window_ua[z] * if shutter_closed { config.shutter_u_factor } else { 1.0 };
    let vent = if window_open { net.venting_g[z] } else { 0.0 };
    ua + vent
}

#[allow(clippy::too_many_arguments)]
fn emit(
    out_zones: &mut [ZoneSeries],
    t_out_series: &mut Vec<f64>,
    net: &Network,
    x: &DVector<f64>,
    sw: &Switching,
    room_schedules: &[&crate::housing::RoomSchedule],
    weather: &WeatherSeries,
    k: usize,
) {
    t_out_series.push(weather.t_out_c[k]);
    for (z, series) in out_zones.iter_mut().enumerate() {
        let t_air = x[net.zone_air[z]];
        let t_mr = if net.interior_area[z] > 0.0 {
            net.interior[z]
                .iter()
                .map(|&(node, area)| x[node] * area)
                .sum::<f64>()
                / net.interior_area[z]
        } else {
            t_air
        };
        series.t_air_c.push(t_air);
        series.t_mr_c.push(t_mr);
        series.t_op_c.push((t_air + t_mr) / 2.0);
        series.q_conv_w.push(sw.q_conv_w[z]);
        series.q_rad_w.push(sw.q_rad_w[z]);
        series.window_open.push(sw.window_open[z]);
        series.presence.push(room_schedules[z].presence[k]);
    }
}
