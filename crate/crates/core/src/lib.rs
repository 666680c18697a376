//! Microscopic dispersion model for N-(4-nitrophenyl)-L-prolinol (NPP)
//! single-crystal films.
//!
//! A monochromatic beam is treated as a photon stream. In every molecular
//! layer along the crystal b axis the photon hands its energy to a bound
//! π-electron sitting at a random angle of an elliptical Kepler orbit and is
//! re-emitted after a delay τ. Summing the per-layer delays over the film
//! thickness gives the refractive index,
//!
//! ```text
//!     n - 1 = (c0 / L) · Σ τ_i
//! ```
//!
//! The crate provides the orbit statistics (time law, presence PDF/CDF,
//! inverse-CDF sampling), the per-interaction delay model, a seeded
//! Monte-Carlo engine with a deterministic quadrature twin, classical
//! Cauchy/Sellmeier reference models with the published NPP data, and a
//! derivative-free calibration of the three free orbit parameters
//! (eccentricity ε, effective charge Z, semimajor axis u).

// Validation guards are written `!(x > 0.0)` on purpose: the negation also
// rejects NaN, which `x <= 0.0` lets through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod calibration;
pub mod crystal;
pub mod engine;
pub mod error;
pub mod interaction;
pub mod numerics;
pub mod orbit;
pub mod physics;
pub mod refmodels;

pub use error::{Error, Result};

/// Optical axis label. The microscopic engine models x and y; z appears
/// only in the published Sellmeier coefficient sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

impl std::str::FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" | "X" => Ok(Axis::X),
            "y" | "Y" => Ok(Axis::Y),
            "z" | "Z" => Ok(Axis::Z),
            other => Err(Error::UnsupportedAxis(other.to_string())),
        }
    }
}
