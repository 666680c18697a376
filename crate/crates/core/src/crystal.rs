//! NPP crystallographic data and derived per-layer film geometry.

use crate::error::{Error, Result};
use crate::physics::units;

/// A monoclinic unit cell. Lengths in metres, `beta` in degrees.
///
/// `layers_per_cell` is the number of molecular layer planes the cell
/// contributes along the b axis; for NPP both molecules sit on their own
/// plane, so the cell stacks two layers and each layer carries
/// `z_molecules / layers_per_cell` molecules per a–c cross section.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct UnitCell {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub beta: f64,
    pub z_molecules: u32,
    pub layers_per_cell: u32,
    /// Molecular weight (g/mol)
    pub mol_weight: f64,
    /// Density (g/cm³)
    pub density: f64,
}

impl UnitCell {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        a: f64,
        b: f64,
        c: f64,
        beta: f64,
        z_molecules: u32,
        layers_per_cell: u32,
        mol_weight: f64,
        density: f64,
    ) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && c > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "lattice constants must be positive, got a={a}, b={b}, c={c}"
            )));
        }
        if !(beta > 90.0 && beta < 180.0) {
            return Err(Error::InvalidConfig(format!(
                "monoclinic beta must lie in (90, 180) degrees, got {beta}"
            )));
        }
        if z_molecules < 1 || layers_per_cell < 1 {
            return Err(Error::InvalidConfig(
                "z_molecules and layers_per_cell must be at least 1".into(),
            ));
        }
        Ok(UnitCell {
            a,
            b,
            c,
            beta,
            z_molecules,
            layers_per_cell,
            mol_weight,
            density,
        })
    }

    /// The published NPP cell: a=5.261 Å, b=14.908 Å, c=7.185 Å, β=105.18°,
    /// two molecules per cell on alternating layer planes along b.
    pub fn npp() -> Self {
        UnitCell {
            a: units::angstrom_to_m(5.261),
            b: units::angstrom_to_m(14.908),
            c: units::angstrom_to_m(7.185),
            beta: 105.18,
            z_molecules: 2,
            layers_per_cell: 2,
            mol_weight: 222.0,
            density: 1.36,
        }
    }

    /// Monoclinic cell volume a·b·c·sin β, in m³.
    pub fn volume(&self) -> f64 {
        self.a * self.b * self.c * self.beta.to_radians().sin()
    }

    /// Cross-sectional area per molecule transverse to b:
    /// a·c·sin β divided by the molecules sharing one layer plane. In m².
    pub fn molecule_area(&self) -> f64 {
        let ac = self.a * self.c * self.beta.to_radians().sin();
        ac * f64::from(self.layers_per_cell) / f64::from(self.z_molecules)
    }
}

/// Propagation direction through the film. Only the b axis is modeled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum PropagationAxis {
    B,
}

/// A thin single-crystal film traversed along a crystal axis.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CrystalFilm {
    pub cell: UnitCell,
    /// Propagation length L (m)
    pub thickness: f64,
    pub propagation_axis: PropagationAxis,
    /// Angle between the crystal b axis and the N(1)–N(2) charge-transfer
    /// axis (degrees).
    pub frame_angle: f64,
}

/// Crystal-frame angle between b and N(1)–N(2), degrees.
pub const NPP_FRAME_ANGLE_DEG: f64 = 58.6;

impl CrystalFilm {
    pub fn new(cell: UnitCell, thickness: f64) -> Result<Self> {
        if !(thickness > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "film thickness must be positive, got {thickness}"
            )));
        }
        Ok(CrystalFilm {
            cell,
            thickness,
            propagation_axis: PropagationAxis::B,
            frame_angle: NPP_FRAME_ANGLE_DEG,
        })
    }

    /// NPP film of the given thickness, propagating along b.
    pub fn npp(thickness: f64) -> Result<Self> {
        CrystalFilm::new(UnitCell::npp(), thickness)
    }

    /// Spacing between consecutive molecular layers along the propagation
    /// axis: b / layers_per_cell (7.454 Å for NPP).
    pub fn layer_spacing(&self) -> Result<f64> {
        match self.propagation_axis {
            PropagationAxis::B => Ok(self.cell.b / f64::from(self.cell.layers_per_cell)),
        }
    }

    /// Number of molecular layers the photon traverses:
    /// round(thickness / spacing), at least 1. A film thinner than one
    /// spacing still counts one layer; callers may warn on that case.
    pub fn layer_count(&self) -> Result<u64> {
        let spacing = self.layer_spacing()?;
        let count = (self.thickness / spacing).round() as u64;
        Ok(count.max(1))
    }
}

/// The built-in NPP dataset as a key=value text block.
pub fn npp_reference_block() -> String {
    let cell = UnitCell::npp();
    let film = CrystalFilm::npp(3e-6).unwrap();
    let mut s = String::new();
    s.push_str("material = NPP (N-(4-nitrophenyl)-L-prolinol)\n");
    s.push_str("space_group = P2_1\n");
    s.push_str(&format!("a_angstrom = {:.3}\n", units::m_to_angstrom(cell.a)));
    s.push_str(&format!("b_angstrom = {:.3}\n", units::m_to_angstrom(cell.b)));
    s.push_str(&format!("c_angstrom = {:.3}\n", units::m_to_angstrom(cell.c)));
    s.push_str(&format!("beta_deg = {}\n", cell.beta));
    s.push_str(&format!("z_molecules = {}\n", cell.z_molecules));
    s.push_str(&format!("layers_per_cell = {}\n", cell.layers_per_cell));
    s.push_str(&format!("mol_weight_g_mol = {}\n", cell.mol_weight));
    s.push_str(&format!("density_g_cm3 = {}\n", cell.density));
    s.push_str(&format!(
        "cell_volume_angstrom3 = {:.4}\n",
        cell.volume() * 1e30
    ));
    s.push_str(&format!(
        "molecule_area_angstrom2 = {:.4}\n",
        cell.molecule_area() * 1e20
    ));
    s.push_str(&format!(
        "layer_spacing_angstrom = {:.4}\n",
        film.layer_spacing().unwrap() * 1e10
    ));
    s.push_str(&format!("frame_angle_deg = {}\n", film.frame_angle));
    s.push_str("transparency_window_um = 0.48:2.0\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn npp_cell_volume_matches_published() {
        let v_a3 = UnitCell::npp().volume() * 1e30;
        assert!((v_a3 - 543.8).abs() / 543.8 < 0.01, "got {v_a3}");
    }

    #[test]
    fn unit_cube_volume() {
        // β→90° is outside the monoclinic validation range, so check the
        // formula against a hand value at β=90.000001 instead.
        let cell = UnitCell::new(1e-10, 1e-10, 1e-10, 90.000001, 1, 1, 1.0, 1.0).unwrap();
        assert!((cell.volume() * 1e30 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn volume_linear_in_a() {
        let base = UnitCell::npp();
        let mut doubled = base;
        doubled.a *= 2.0;
        assert!((doubled.volume() / base.volume() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn layer_spacing_is_half_b() {
        let film = CrystalFilm::npp(3e-6).unwrap();
        let spacing_a = film.layer_spacing().unwrap() * 1e10;
        assert!((spacing_a - 7.454).abs() < 1e-3, "got {spacing_a}");
    }

    #[test]
    fn layer_spacing_doubles_with_b() {
        let mut cell = UnitCell::npp();
        cell.b *= 2.0;
        let film = CrystalFilm::new(cell, 3e-6).unwrap();
        let base = CrystalFilm::npp(3e-6).unwrap();
        let ratio = film.layer_spacing().unwrap() / base.layer_spacing().unwrap();
        assert!((ratio - 2.0).abs() < 1e-12);
    }

    #[test]
    fn layer_count_3um_near_4024() {
        let count = CrystalFilm::npp(3e-6).unwrap().layer_count().unwrap();
        assert!((count as i64 - 4024).abs() <= 1, "got {count}");
    }

    #[test]
    fn layer_count_1um() {
        // Oracle: 1e-6 / 7.454e-10 = 1341.56 → 1342.
        let count = CrystalFilm::npp(1e-6).unwrap().layer_count().unwrap();
        assert!((count as i64 - 1342).abs() <= 1, "got {count}");
    }

    #[test]
    fn layer_count_single_spacing() {
        let film = CrystalFilm::npp(7.454e-10).unwrap();
        assert_eq!(film.layer_count().unwrap(), 1);
    }

    #[test]
    fn layer_count_below_one_spacing_clamps_to_one() {
        let film = CrystalFilm::npp(1e-10).unwrap();
        assert_eq!(film.layer_count().unwrap(), 1);
    }

    #[test]
    fn molecule_area_matches_published() {
        let area_a2 = UnitCell::npp().molecule_area() * 1e20;
        assert!((area_a2 - 36.5).abs() / 36.5 < 0.02, "got {area_a2}");
    }

    #[test]
    fn molecule_area_halves_when_z_doubles() {
        let mut cell = UnitCell::npp();
        cell.z_molecules *= 2;
        let ratio = cell.molecule_area() / UnitCell::npp().molecule_area();
        assert!((ratio - 0.5).abs() < 1e-12);
    }

    #[test]
    fn molecule_area_unit_cell() {
        let cell = UnitCell::new(1e-10, 1e-10, 1e-10, 90.000001, 1, 1, 1.0, 1.0).unwrap();
        assert!((cell.molecule_area() * 1e20 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn layer_count_times_spacing_brackets_thickness() {
        for &l in &[0.4e-6, 1e-6, 3e-6, 10e-6] {
            let film = CrystalFilm::npp(l).unwrap();
            let spacing = film.layer_spacing().unwrap();
            let total = film.layer_count().unwrap() as f64 * spacing;
            assert!(total >= l - spacing && total <= l + spacing);
        }
    }

    #[test]
    fn area_spacing_volume_consistency() {
        // area × spacing = volume / z_molecules, exactly by construction.
        let cell = UnitCell::npp();
        let film = CrystalFilm::new(cell, 3e-6).unwrap();
        let lhs = cell.molecule_area() * film.layer_spacing().unwrap();
        let rhs = cell.volume() / f64::from(cell.z_molecules);
        assert!((lhs - rhs).abs() / rhs < 0.02);
    }

    #[test]
    fn invalid_cells_rejected() {
        assert!(UnitCell::new(0.0, 1e-10, 1e-10, 105.0, 2, 2, 222.0, 1.36).is_err());
        assert!(UnitCell::new(1e-10, 1e-10, 1e-10, 90.0, 2, 2, 222.0, 1.36).is_err());
        assert!(UnitCell::new(1e-10, 1e-10, 1e-10, 185.0, 2, 2, 222.0, 1.36).is_err());
        assert!(CrystalFilm::npp(0.0).is_err());
    }

    #[test]
    fn reference_block_contains_key_values() {
        let block = npp_reference_block();
        assert!(block.contains("a_angstrom = 5.261"));
        assert!(block.contains("cell_volume_angstrom3 = 543.8"));
        assert!(block.contains("layer_spacing_angstrom = 7.454"));
    }
}
