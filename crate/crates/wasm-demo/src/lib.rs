//! Browser bindings for the dispersion model.
//!
//! Three interactive operations back the demo page in `www/`: the orbit
//! presence profile, the dispersion curves against the reference models, and
//! Monte-Carlo convergence toward the deterministic value. Each returns a
//! JSON string (an object with an `"error"` key on failure) so the page
//! needs no custom marshalling and the same functions run natively in tests.

use dispersim_core::crystal::CrystalFilm;
use dispersim_core::engine::{deterministic_point_raw, simulate_point_raw};
use dispersim_core::interaction::radius;
use dispersim_core::orbit::{cdf, pdf, Orbit};
use dispersim_core::physics::units;
use dispersim_core::refmodels::{experimental_rows, sellmeier_eval, sellmeier_model, SellmeierForm};
use dispersim_core::{Axis, Error};
use serde_json::json;
use std::f64::consts::TAU;
use wasm_bindgen::prelude::wasm_bindgen;

fn error_json(e: &Error) -> String {
    json!({ "error": e.to_string() }).to_string()
}

/// Presence PDF/CDF of the orbit electron plus the ellipse outline
/// (normalized to u = 1, charge center at the origin).
#[wasm_bindgen]
pub fn orbit_profile(eccentricity: f64, points: u32) -> String {
    let points = points.clamp(8, 4096) as usize;
    let orbit = match Orbit::new(eccentricity, 1.0, 1.0, 1.0) {
        Ok(o) => o,
        Err(e) => return error_json(&e),
    };
    let mut theta = Vec::with_capacity(points);
    let mut density = Vec::with_capacity(points);
    let mut cumulative = Vec::with_capacity(points);
    let mut ellipse_x = Vec::with_capacity(points);
    let mut ellipse_y = Vec::with_capacity(points);
    for i in 0..points {
        let t = (TAU * i as f64 / (points - 1) as f64).min(TAU);
        theta.push(t);
        density.push(pdf(t, eccentricity));
        match cdf(t, &orbit) {
            Ok(c) => cumulative.push(c),
            Err(e) => return error_json(&e),
        }
        let r = radius(t, &orbit);
        ellipse_x.push(r * t.cos());
        ellipse_y.push(r * t.sin());
    }
    json!({
        "eccentricity": eccentricity,
        "theta": theta,
        "pdf": density,
        "cdf": cumulative,
        "ellipse": { "x": ellipse_x, "y": ellipse_y },
    })
    .to_string()
}

/// Deterministic dispersion curves n_x(λ), n_y(λ) for the given orbit
/// parameters, with the Datta Sellmeier curves and the measured rows
/// alongside. `semimajor` in Å, `thickness` in µm, wavelengths in nm.
#[wasm_bindgen]
pub fn dispersion_curves(
    eccentricity: f64,
    charge: f64,
    semimajor_angstrom: f64,
    thickness_um: f64,
    lambda_min_nm: f64,
    lambda_max_nm: f64,
    points: u32,
) -> String {
    let points = points.clamp(2, 2048) as usize;
    let orbit = match Orbit::new(eccentricity, units::angstrom_to_m(semimajor_angstrom), charge, 1.0)
    {
        Ok(o) => o,
        Err(e) => return error_json(&e),
    };
    let film = match CrystalFilm::npp(units::um_to_m(thickness_um)) {
        Ok(f) => f,
        Err(e) => return error_json(&e),
    };
    if !(lambda_min_nm > 0.0 && lambda_max_nm > lambda_min_nm) {
        return error_json(&Error::Domain(format!(
            "wavelength range must satisfy 0 < min < max, got {lambda_min_nm}:{lambda_max_nm}"
        )));
    }

    let mut lambda = Vec::with_capacity(points);
    let mut n_x = Vec::with_capacity(points);
    let mut n_y = Vec::with_capacity(points);
    let mut sell_x = Vec::with_capacity(points);
    let mut sell_y = Vec::with_capacity(points);
    let datta_x = sellmeier_model(SellmeierForm::Datta, Axis::X);
    let datta_y = sellmeier_model(SellmeierForm::Datta, Axis::Y);
    for i in 0..points {
        let nm = lambda_min_nm + (lambda_max_nm - lambda_min_nm) * i as f64 / (points - 1) as f64;
        let m = units::nm_to_m(nm);
        let px = match deterministic_point_raw(&film, &orbit, 0.0, m, Axis::X) {
            Ok(p) => p,
            Err(e) => return error_json(&e),
        };
        let py = match deterministic_point_raw(&film, &orbit, 0.0, m, Axis::Y) {
            Ok(p) => p,
            Err(e) => return error_json(&e),
        };
        let sx = match sellmeier_eval(&datta_x, nm / 1000.0) {
            Ok(v) => v,
            Err(e) => return error_json(&e),
        };
        let sy = match sellmeier_eval(&datta_y, nm / 1000.0) {
            Ok(v) => v,
            Err(e) => return error_json(&e),
        };
        lambda.push(nm);
        n_x.push(px.n);
        n_y.push(py.n);
        sell_x.push(sx);
        sell_y.push(sy);
    }

    let exp_rows = experimental_rows();
    json!({
        "lambda_nm": lambda,
        "n_x": n_x,
        "n_y": n_y,
        "sellmeier_x": sell_x,
        "sellmeier_y": sell_y,
        "experimental": {
            "lambda_nm": exp_rows.iter().map(|r| r.wavelength_nm).collect::<Vec<_>>(),
            "n_x": exp_rows.iter().map(|r| r.n_x).collect::<Vec<_>>(),
            "n_y": exp_rows.iter().map(|r| r.n_y).collect::<Vec<_>>(),
        },
    })
    .to_string()
}

/// Monte-Carlo estimates at doubling sample counts up to `max_samples`,
/// next to the deterministic expectation they converge to. Same seed, same
/// numbers — the demo doubles as a reproducibility check.
#[allow(clippy::too_many_arguments)]
#[wasm_bindgen]
pub fn monte_carlo_convergence(
    eccentricity: f64,
    charge: f64,
    semimajor_angstrom: f64,
    thickness_um: f64,
    wavelength_nm: f64,
    axis: &str,
    max_samples: u32,
    seed: u64,
) -> String {
    let axis = match axis {
        "x" => Axis::X,
        "y" => Axis::Y,
        other => {
            return error_json(&Error::UnsupportedAxis(other.to_string()));
        }
    };
    let orbit = match Orbit::new(eccentricity, units::angstrom_to_m(semimajor_angstrom), charge, 1.0)
    {
        Ok(o) => o,
        Err(e) => return error_json(&e),
    };
    let film = match CrystalFilm::npp(units::um_to_m(thickness_um)) {
        Ok(f) => f,
        Err(e) => return error_json(&e),
    };
    let wavelength = units::nm_to_m(wavelength_nm);
    let det = match deterministic_point_raw(&film, &orbit, 0.0, wavelength, axis) {
        Ok(p) => p,
        Err(e) => return error_json(&e),
    };

    let max_samples = max_samples.clamp(8, 4096);
    let mut steps = Vec::new();
    let mut samples = 8u32;
    while samples <= max_samples {
        let point = match simulate_point_raw(&film, &orbit, 0.0, wavelength, axis, samples, seed) {
            Ok(p) => p,
            Err(e) => return error_json(&e),
        };
        steps.push(json!({
            "samples": samples,
            "n": point.n,
            "stderr": point.stderr,
        }));
        samples *= 2;
    }
    json!({
        "deterministic_n": det.n,
        "layers": det.layer_count,
        "steps": steps,
    })
    .to_string()
}
