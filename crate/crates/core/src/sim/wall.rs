//! 1-D finite-volume discretization of layered wall assemblies.
//!
//! Cells split at every material change and never exceed the maximum cell
//! thickness (5 cm by default). Conductances connect cell centers; half-cell
//! conductances close the chain at both surfaces, so the discrete series
//! resistance equals the analytic sum of layer resistances exactly.

use crate::housing::MaterialLayer;

use super::SimError;

/// Default maximum cell thickness, m.
pub const MAX_CELL_THICKNESS_M: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct WallCell {
    pub thickness_m: f64,
    /// Heat capacity of the cell for the assembly area, J/K.
    pub capacity_j_k: f64,
}

/// A discretized assembly: cells ordered outside -> inside, with the
/// conductance chain `outer surface <-> c0 <-> .. <-> cN-1 <-> inner surface`.
#[derive(Debug, Clone, PartialEq)]
pub struct WallAssembly {
    pub area_m2: f64,
    pub cells: Vec<WallCell>,
    /// Length `cells.len() + 1`: conductance between consecutive nodes of the
    /// chain, surface nodes included, W/K.
    pub conductances_w_k: Vec<f64>,
}

impl WallAssembly {
    /// Series resistance of the discrete chain (surface to surface), K/W.
    pub fn chain_resistance_k_w(&self) -> f64 {
        self.conductances_w_k.iter().map(|g| 1.0 / g).sum()
    }
}

/// Discretize a layer stack over a given area.
pub fn discretize_wall(layers: &[MaterialLayer], area_m2: f64) -> Result<WallAssembly, SimError> {
    discretize_wall_with(layers, area_m2, MAX_CELL_THICKNESS_M)
}

pub fn discretize_wall_with(
    layers: &[MaterialLayer],
    area_m2: f64,
    max_cell_m: f64,
) -> Result<WallAssembly, SimError> {
    if layers.is_empty() {
        return Err(SimError::NonPhysicalMaterial { detail: "empty layer stack".into() });
    }
    if !(area_m2 > 0.0) {
        return Err(SimError::NonPhysicalMaterial { detail: format!("area {area_m2}") });
    }
    for l in layers {
        if !(l.thickness_m > 0.0
            && l.conductivity_w_mk > 0.0
            && l.density_kg_m3 > 0.0
            && l.specific_heat_j_kgk > 0.0)
        {
            return Err(SimError::NonPhysicalMaterial {
                detail: format!("layer `{}` has non-positive properties", l.name),
            });
        }
    }

    let mut cells = Vec::new();
    // (conductance from cell center to its own face, W/K) per cell, used to
    // join consecutive cells across faces
    let mut half_conductances = Vec::new();
    for layer in layers {
        let n = (layer.thickness_m / max_cell_m).ceil().max(1.0) as usize;
        let dx = layer.thickness_m / n as f64;
        let g_half = 2.0 * layer.conductivity_w_mk * area_m2 / dx;
        for _ in 0..n {
            cells.push(WallCell {
                thickness_m: dx,
                capacity_j_k: layer.density_kg_m3 * layer.specific_heat_j_kgk * dx * area_m2,
            });
            half_conductances.push(g_half);
        }
    }

    let mut conductances = Vec::with_capacity(cells.len() + 1);
    conductances.push(half_conductances[0]);
    for i in 0..cells.len() - 1 {
        // series of the two half-cells meeting at the face
        let g = 1.0 / (1.0 / half_conductances[i] + 1.0 / half_conductances[i + 1]);
        conductances.push(g);
    }
    conductances.push(half_conductances[cells.len() - 1]);

    Ok(WallAssembly { area_m2, cells, conductances_w_k: conductances })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layer(name: &str, lambda: f64, thickness: f64) -> MaterialLayer {
        MaterialLayer {
            name: name.into(),
            conductivity_w_mk: lambda,
            density_kg_m3: 1000.0,
            specific_heat_j_kgk: 1000.0,
            thickness_m: thickness,
        }
    }

    #[test]
    fn thin_layer_is_one_cell() {
        let w = discretize_wall(&[layer("a", 1.0, 0.04)], 2.0).unwrap();
        assert_eq!(w.cells.len(), 1);
        assert_eq!(w.conductances_w_k.len(), 2);
    }

    #[test]
    fn twelve_cm_layer_splits_into_three_equal_cells() {
        let w = discretize_wall(&[layer("a", 1.0, 0.12)], 1.0).unwrap();
        assert_eq!(w.cells.len(), 3);
        for c in &w.cells {
            assert!((c.thickness_m - 0.04).abs() < 1e-15);
        }
    }

    #[test]
    fn material_change_forces_a_cell_boundary() {
        let w = discretize_wall(&[layer("a", 1.0, 0.03), layer("b", 0.04, 0.03)], 1.0).unwrap();
        assert_eq!(w.cells.len(), 2);
        assert!((w.cells[0].thickness_m - 0.03).abs() < 1e-15);
        assert!((w.cells[1].thickness_m - 0.03).abs() < 1e-15);
    }

    #[test]
    fn no_cell_exceeds_the_limit() {
        let stack = [layer("a", 2.3, 0.40), layer("b", 0.04, 0.16), layer("c", 0.35, 0.013)];
        let w = discretize_wall(&stack, 10.0).unwrap();
        for c in &w.cells {
            assert!(c.thickness_m <= MAX_CELL_THICKNESS_M + 1e-12);
        }
    }

    #[test]
    fn chain_resistance_matches_analytic_sum() {
        let stack = [layer("a", 2.3, 0.40), layer("b", 0.041, 0.16), layer("c", 0.35, 0.013)];
        let area = 12.5;
        let w = discretize_wall(&stack, area).unwrap();
        let analytic: f64 =
            stack.iter().map(|l| l.thickness_m / l.conductivity_w_mk).sum::<f64>() / area;
        let got = w.chain_resistance_k_w();
        assert!(
            ((got - analytic) / analytic).abs() < 1e-9,
            "chain {got}, analytic {analytic}"
        );
    }

    #[test]
    fn capacity_matches_material_volume() {
        let w = discretize_wall(&[layer("a", 1.0, 0.12)], 2.0).unwrap();
        let total: f64 = w.cells.iter().map(|c| c.capacity_j_k).sum();
        assert!((total - 1000.0 * 1000.0 * 0.12 * 2.0).abs() < 1e-6);
    }

    #[test]
    fn non_physical_layer_errors() {
        assert!(discretize_wall(&[layer("bad", -1.0, 0.1)], 1.0).is_err());
        assert!(discretize_wall(&[], 1.0).is_err());
    }
}
