//! Physical constants and photon/beam quantities.
//!
//! Everything internal works in SI units; nanometres, Ångströms and
//! electronvolts appear only through the explicit conversion helpers in
//! [`units`].

use crate::error::{Error, Result};

/// Fundamental constants, CODATA 2018 recommended values, SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    /// Planck constant (J·s)
    pub h: f64,
    /// Electron rest mass (kg)
    pub m_e: f64,
    /// Elementary charge (C)
    pub q_e: f64,
    /// Coulomb constant 1/(4πε₀) (N·m²/C²)
    pub k_c: f64,
    /// Vacuum light speed (m/s)
    pub c0: f64,
    /// Joules per electronvolt (J)
    pub ev: f64,
}

/// The one constant set used throughout the crate.
pub const CODATA_2018: Constants = Constants {
    h: 6.626_070_15e-34,
    m_e: 9.109_383_701_5e-31,
    q_e: 1.602_176_634e-19,
    k_c: 8.987_551_792_3e9,
    c0: 299_792_458.0,
    ev: 1.602_176_634e-19,
};

/// NPP transparency window, metres.
pub const TRANSPARENCY_WINDOW_M: (f64, f64) = (0.48e-6, 2.0e-6);

/// Unit conversions used at API and CLI boundaries.
pub mod units {
    pub fn nm_to_m(nm: f64) -> f64 {
        nm * 1e-9
    }

    pub fn m_to_nm(m: f64) -> f64 {
        m * 1e9
    }

    pub fn um_to_m(um: f64) -> f64 {
        um * 1e-6
    }

    pub fn m_to_um(m: f64) -> f64 {
        m * 1e6
    }

    pub fn angstrom_to_m(a: f64) -> f64 {
        a * 1e-10
    }

    pub fn m_to_angstrom(m: f64) -> f64 {
        m * 1e10
    }

    pub fn j_to_ev(j: f64) -> f64 {
        j / super::CODATA_2018.ev
    }

    pub fn ev_to_j(ev: f64) -> f64 {
        ev * super::CODATA_2018.ev
    }
}

/// A monochromatic top-hat beam. `beamwidth` is the diameter of the
/// circular cross section.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Beam {
    /// Vacuum wavelength (m)
    pub wavelength: f64,
    /// Average power (W)
    pub power: f64,
    /// Beam diameter (m)
    pub beamwidth: f64,
}

impl Beam {
    pub fn new(wavelength: f64, power: f64, beamwidth: f64) -> Result<Self> {
        if !(wavelength > 0.0) {
            return Err(Error::Domain(format!(
                "beam wavelength must be positive, got {wavelength}"
            )));
        }
        if !(power >= 0.0) {
            return Err(Error::Domain(format!(
                "beam power must be non-negative, got {power}"
            )));
        }
        if !(beamwidth > 0.0) {
            return Err(Error::Domain(format!(
                "beamwidth must be positive, got {beamwidth}"
            )));
        }
        Ok(Beam {
            wavelength,
            power,
            beamwidth,
        })
    }

    /// True when the wavelength lies inside the NPP transparency window
    /// (0.48 µm to 2.0 µm). Callers should warn when this is false.
    pub fn in_transparency_window(&self) -> bool {
        let (lo, hi) = TRANSPARENCY_WINDOW_M;
        self.wavelength >= lo && self.wavelength <= hi
    }
}

/// Photon energy hν = h·c0/λ in joules.
pub fn photon_energy(wavelength: f64) -> Result<f64> {
    if !(wavelength > 0.0) {
        return Err(Error::Domain(format!(
            "wavelength must be positive, got {wavelength}"
        )));
    }
    Ok(CODATA_2018.h * CODATA_2018.c0 / wavelength)
}

/// Photon energy in electronvolts.
pub fn photon_energy_ev(wavelength: f64) -> Result<f64> {
    Ok(units::j_to_ev(photon_energy(wavelength)?))
}

/// Beam intensity over the circular top-hat cross section, W/cm².
pub fn beam_intensity(beam: &Beam) -> f64 {
    let radius_cm = beam.beamwidth * 100.0 / 2.0;
    beam.power / (std::f64::consts::PI * radius_cm * radius_cm)
}

/// Average photon flux φ = I/(hν), photons/(s·cm²).
pub fn photon_flux(intensity: f64, wavelength: f64) -> Result<f64> {
    if !(intensity >= 0.0) {
        return Err(Error::Domain(format!(
            "intensity must be non-negative, got {intensity}"
        )));
    }
    Ok(intensity / photon_energy(wavelength)?)
}

/// Mean time between photon arrivals on one molecule's cross section:
/// 1/(φ·A) with the flux per cm² and the area in m².
pub fn per_molecule_interaction_period(flux: f64, molecule_area: f64) -> Result<f64> {
    if !(molecule_area > 0.0) {
        return Err(Error::Domain(format!(
            "molecule area must be positive, got {molecule_area}"
        )));
    }
    if !(flux > 0.0) {
        return Err(Error::Domain(
            "zero photon flux gives an infinite interaction period".into(),
        ));
    }
    let area_cm2 = molecule_area * 1e4;
    Ok(1.0 / (flux * area_cm2))
}
