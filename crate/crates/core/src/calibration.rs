//! Recovery of the three free orbit parameters (ε, Z, u) from measured
//! refractive indices.
//!
//! The objective is the sum of squared relative index errors over the
//! targets, evaluated with the deterministic quadrature engine so the
//! search is noise-free and reproducible. Minimization is derivative-free:
//! a coarse 20×20×20 grid scan over the bounds followed by iterated
//! coordinate-wise golden-section refinement.

use crate::crystal::CrystalFilm;
use crate::engine::deterministic_point_raw;
use crate::error::{Error, Result};
use crate::numerics::golden_section_min;
use crate::orbit::Orbit;
use crate::Axis;
use std::cell::Cell;

/// One (wavelength, axis, measured n) anchor.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CalibrationTarget {
    /// Vacuum wavelength (m).
    pub wavelength: f64,
    pub axis: Axis,
    pub n_exp: f64,
}

/// Search box for the three parameters.
///
/// Defaults follow the structural plausibility constraints: u brackets the
/// spread of the six benzene-ring bond lengths, ε is small but positive,
/// Z is a one-digit effective charge.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ParameterBounds {
    pub eccentricity: (f64, f64),
    pub effective_charge: (f64, f64),
    /// Metres.
    pub semimajor: (f64, f64),
}

impl Default for ParameterBounds {
    fn default() -> Self {
        ParameterBounds {
            eccentricity: (0.01, 0.6),
            effective_charge: (1.0, 10.0),
            semimajor: (1.33e-10, 1.47e-10),
        }
    }
}

impl ParameterBounds {
    fn validate(&self) -> Result<()> {
        let ranges = [
            ("eccentricity", self.eccentricity),
            ("effective_charge", self.effective_charge),
            ("semimajor", self.semimajor),
        ];
        for (name, (lo, hi)) in ranges {
            if !(lo < hi) {
                return Err(Error::InvalidConfig(format!(
                    "{name} bounds are infeasible: [{lo}, {hi}]"
                )));
            }
            if !(lo.is_finite() && hi.is_finite()) {
                return Err(Error::InvalidConfig(format!(
                    "{name} bounds must be finite"
                )));
            }
        }
        if self.eccentricity.0 < 0.0 || self.eccentricity.1 >= 1.0 {
            return Err(Error::InvalidConfig(
                "eccentricity bounds must lie inside [0, 1)".into(),
            ));
        }
        if self.effective_charge.0 <= 0.0 || self.semimajor.0 <= 0.0 {
            return Err(Error::InvalidConfig(
                "charge and semimajor bounds must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct CalibrationProblem {
    pub targets: Vec<CalibrationTarget>,
    pub bounds: ParameterBounds,
    pub film: CrystalFilm,
    pub frame_offset: f64,
}

impl CalibrationProblem {
    pub fn validate(&self) -> Result<()> {
        self.bounds.validate()?;
        if self.targets.len() < 2 {
            return Err(Error::InvalidConfig(
                "calibration needs at least two targets".into(),
            ));
        }
        let mut wavelengths: Vec<f64> = self.targets.iter().map(|t| t.wavelength).collect();
        wavelengths.sort_by(|a, b| a.partial_cmp(b).unwrap());
        wavelengths.dedup();
        if wavelengths.len() < 2 {
            return Err(Error::InvalidConfig(
                "calibration needs targets at two distinct wavelengths".into(),
            ));
        }
        for t in &self.targets {
            if !(t.wavelength > 0.0) || !(t.n_exp > 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "target ({} m, {}, {}) is not physical",
                    t.wavelength, t.axis, t.n_exp
                )));
            }
        }
        Ok(())
    }
}

/// One audited objective improvement.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct TracePoint {
    pub eccentricity: f64,
    pub effective_charge: f64,
    pub semimajor: f64,
    pub objective: f64,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct CalibrationResult {
    pub eccentricity: f64,
    pub effective_charge: f64,
    pub semimajor: f64,
    pub objective_value: f64,
    pub evaluations: u64,
    pub trace: Vec<TracePoint>,
}

impl CalibrationResult {
    /// The calibrated orbit (period 1 s; delays are period-free).
    pub fn orbit(&self) -> Result<Orbit> {
        Orbit::new(self.eccentricity, self.semimajor, self.effective_charge, 1.0)
    }
}

const GRID_POINTS: usize = 20;
const SWEEP_REL_TOL: f64 = 1e-4;
const MAX_SWEEPS: usize = 300;

/// Sum of squared relative index errors at the targets; +∞ where the model
/// cannot be evaluated.
fn objective(problem: &CalibrationProblem, ecc: f64, charge: f64, semimajor: f64) -> f64 {
    let orbit = match Orbit::new(ecc, semimajor, charge, 1.0) {
        Ok(o) => o,
        Err(_) => return f64::INFINITY,
    };
    let mut sum = 0.0;
    for t in &problem.targets {
        let point = match deterministic_point_raw(
            &problem.film,
            &orbit,
            problem.frame_offset,
            t.wavelength,
            t.axis,
        ) {
            Ok(p) => p,
            Err(_) => return f64::INFINITY,
        };
        let rel = (point.n - t.n_exp) / t.n_exp;
        sum += rel * rel;
    }
    sum
}

fn linspace(lo: f64, hi: f64, points: usize) -> impl Iterator<Item = f64> {
    let step = (hi - lo) / (points - 1) as f64;
    (0..points).map(move |i| lo + step * i as f64)
}

/// Grid scan plus coordinate-wise golden-section refinement.
pub fn calibrate(problem: &CalibrationProblem) -> Result<CalibrationResult> {
    problem.validate()?;
    let bounds = problem.bounds;
    let evaluations = Cell::new(0u64);
    let f = |params: [f64; 3]| {
        evaluations.set(evaluations.get() + 1);
        objective(problem, params[0], params[1], params[2])
    };

    let mut best_params = [f64::NAN; 3];
    let mut best = f64::INFINITY;
    let mut trace = Vec::new();

    for ecc in linspace(bounds.eccentricity.0, bounds.eccentricity.1, GRID_POINTS) {
        for charge in linspace(
            bounds.effective_charge.0,
            bounds.effective_charge.1,
            GRID_POINTS,
        ) {
            for semimajor in linspace(bounds.semimajor.0, bounds.semimajor.1, GRID_POINTS) {
                let params = [ecc, charge, semimajor];
                let value = f(params);
                if value < best {
                    best = value;
                    best_params = params;
                    trace.push(TracePoint {
                        eccentricity: ecc,
                        effective_charge: charge,
                        semimajor,
                        objective: value,
                    });
                }
            }
        }
    }
    if !best.is_finite() {
        return Err(Error::CalibrationFailed(
            "objective is non-finite everywhere on the bound grid".into(),
        ));
    }

    let ranges = [
        bounds.eccentricity,
        bounds.effective_charge,
        bounds.semimajor,
    ];
    let mut prev_best = best;
    for _ in 0..MAX_SWEEPS {
        let sweep_start = best_params;
        for coord in 0..3 {
            let (lo, hi) = ranges[coord];
            let line = |x: f64| {
                let mut params = best_params;
                params[coord] = x;
                f(params)
            };
            let (x_min, f_min) = golden_section_min(&line, lo, hi, (hi - lo) * 1e-8);
            if f_min < best {
                best = f_min;
                best_params[coord] = x_min;
                trace.push(TracePoint {
                    eccentricity: best_params[0],
                    effective_charge: best_params[1],
                    semimajor: best_params[2],
                    objective: best,
                });
            }
        }
        let rel_change = (0..3)
            .map(|i| {
                let scale = sweep_start[i].abs().max(ranges[i].1 - ranges[i].0);
                (best_params[i] - sweep_start[i]).abs() / scale
            })
            .fold(0.0, f64::max);
        // The coordinate path descends correlated valleys linearly, so the
        // parameter-change rule alone can fire while the objective is still
        // dropping fast; keep sweeping until the objective stagnates too.
        let improvement = prev_best - best;
        if rel_change < SWEEP_REL_TOL && improvement <= 1e-3 * best.max(1e-300) {
            break;
        }
        prev_best = best;
    }

    Ok(CalibrationResult {
        eccentricity: best_params[0],
        effective_charge: best_params[1],
        semimajor: best_params[2],
        objective_value: best,
        evaluations: evaluations.get(),
        trace,
    })
}

/// One holdout comparison row.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ValidationRow {
    /// Vacuum wavelength (m).
    pub wavelength: f64,
    pub axis: Axis,
    pub n_exp: f64,
    pub n_sim: f64,
    /// |n_sim − n_exp| / n_exp × 100.
    pub percent_error: f64,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ValidationReport {
    pub rows: Vec<ValidationRow>,
    pub max_percent_error: f64,
    pub min_percent_error: f64,
    pub mean_percent_error: f64,
}

/// Evaluates calibrated parameters against holdout rows.
pub fn validate(
    orbit: &Orbit,
    film: &CrystalFilm,
    frame_offset: f64,
    holdout: &[CalibrationTarget],
) -> Result<ValidationReport> {
    if holdout.is_empty() {
        return Err(Error::InvalidConfig("holdout set is empty".into()));
    }
    let mut rows = Vec::with_capacity(holdout.len());
    for t in holdout {
        let point = deterministic_point_raw(film, orbit, frame_offset, t.wavelength, t.axis)?;
        rows.push(ValidationRow {
            wavelength: t.wavelength,
            axis: t.axis,
            n_exp: t.n_exp,
            n_sim: point.n,
            percent_error: (point.n - t.n_exp).abs() / t.n_exp * 100.0,
        });
    }
    let max = rows.iter().map(|r| r.percent_error).fold(f64::MIN, f64::max);
    let min = rows.iter().map(|r| r.percent_error).fold(f64::MAX, f64::min);
    let mean = rows.iter().map(|r| r.percent_error).sum::<f64>() / rows.len() as f64;
    Ok(ValidationReport {
        rows,
        max_percent_error: max,
        min_percent_error: min,
        mean_percent_error: mean,
    })
}
