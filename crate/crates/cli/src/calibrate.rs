//! `dispersim calibrate`: fit (ε, Z, u) to measured targets and emit the
//! result with its audit trace as JSON.

use crate::errors::{CliError, CliResult};
use crate::manifest::{fresh_timestamp, load_config_layer, ConfigLayer, RunManifest};
use crate::output::emit;
use crate::simulate::parse_wavelength_list;
use clap::Args;
use dispersim_core::calibration::{
    calibrate, CalibrationProblem, CalibrationTarget, ParameterBounds,
};
use dispersim_core::crystal::CrystalFilm;
use dispersim_core::physics::units;
use dispersim_core::Axis;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Debug, Args)]
pub struct CalibrateArgs {
    /// Targets CSV with columns wavelength_nm,axis,n_exp
    #[arg(long)]
    targets: Option<PathBuf>,
    /// Restrict the fit to these wavelengths (nm, comma-separated)
    #[arg(long = "fit-wavelengths")]
    fit_wavelengths: Option<String>,
    /// Search box, e.g. eps=0.01:0.6,z=1:10,u=1.33e-10:1.47e-10
    #[arg(long)]
    bounds: Option<String>,
    /// Film thickness L in metres
    #[arg(long)]
    thickness: Option<f64>,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// key=value config file or a manifest JSON from a previous run
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResolvedCalibrate {
    pub targets_path: String,
    pub fit_wavelengths_nm: Vec<f64>,
    pub bounds_eps: (f64, f64),
    pub bounds_z: (f64, f64),
    pub bounds_u_m: (f64, f64),
    pub thickness_m: f64,
}

impl Default for ResolvedCalibrate {
    fn default() -> Self {
        let b = ParameterBounds::default();
        ResolvedCalibrate {
            targets_path: String::new(),
            fit_wavelengths_nm: vec![532.0, 1064.0],
            bounds_eps: b.eccentricity,
            bounds_z: b.effective_charge,
            bounds_u_m: b.semimajor,
            thickness_m: 3e-6,
        }
    }
}

/// Parses `eps=lo:hi,z=lo:hi,u=lo:hi`; omitted names keep their defaults.
fn apply_bounds_spec(resolved: &mut ResolvedCalibrate, spec: &str) -> CliResult<()> {
    for part in spec.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let Some((name, range)) = part.split_once('=') else {
            return Err(CliError::Usage(format!(
                "bounds entry '{part}' wants name=lo:hi"
            )));
        };
        let Some((lo, hi)) = range.split_once(':') else {
            return Err(CliError::Usage(format!(
                "bounds range '{range}' wants lo:hi"
            )));
        };
        let lo: f64 = lo
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad bound '{lo}'")))?;
        let hi: f64 = hi
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad bound '{hi}'")))?;
        match name.trim() {
            "eps" => resolved.bounds_eps = (lo, hi),
            "z" => resolved.bounds_z = (lo, hi),
            "u" => resolved.bounds_u_m = (lo, hi),
            other => {
                return Err(CliError::Usage(format!(
                    "unknown bounds name '{other}'; expected eps, z or u"
                )))
            }
        }
    }
    Ok(())
}

/// Reads a targets CSV (`wavelength_nm,axis,n_exp`), reporting the offending
/// line number on malformed input.
pub fn parse_targets_csv(path: &str) -> CliResult<Vec<CalibrationTarget>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {path}: {e}")))?;
    let mut targets = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if idx == 0 && line.starts_with("wavelength_nm") {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 3 {
            return Err(CliError::Io(format!(
                "{path}:{line_no}: expected wavelength_nm,axis,n_exp"
            )));
        }
        let wavelength_nm: f64 = cols[0].trim().parse().map_err(|_| {
            CliError::Io(format!("{path}:{line_no}: bad wavelength '{}'", cols[0]))
        })?;
        let axis = Axis::from_str(cols[1].trim())
            .map_err(|_| CliError::Io(format!("{path}:{line_no}: bad axis '{}'", cols[1])))?;
        let n_exp: f64 = cols[2]
            .trim()
            .parse()
            .map_err(|_| CliError::Io(format!("{path}:{line_no}: bad n '{}'", cols[2])))?;
        targets.push(CalibrationTarget {
            wavelength: units::nm_to_m(wavelength_nm),
            axis,
            n_exp,
        });
    }
    if targets.is_empty() {
        return Err(CliError::Io(format!("{path}: no target rows")));
    }
    Ok(targets)
}

pub fn run(args: CalibrateArgs) -> CliResult<()> {
    let mut resolved = ResolvedCalibrate::default();
    let mut timestamp = None;

    if let Some(path) = &args.config {
        match load_config_layer(path)? {
            ConfigLayer::KeyValue(pairs) => {
                for (key, value) in &pairs {
                    match key.as_str() {
                        "targets" => resolved.targets_path = value.clone(),
                        "fit_wavelengths" => {
                            resolved.fit_wavelengths_nm = parse_wavelength_list(value)?
                        }
                        "bounds" => apply_bounds_spec(&mut resolved, value)?,
                        "thickness" => {
                            resolved.thickness_m = value
                                .parse()
                                .map_err(|_| CliError::Io(format!("bad thickness '{value}'")))?
                        }
                        other => {
                            return Err(CliError::Io(format!(
                                "unknown config key '{other}' for calibrate"
                            )))
                        }
                    }
                }
            }
            ConfigLayer::Manifest(manifest) => {
                if manifest.command != "calibrate" {
                    return Err(CliError::Usage(format!(
                        "manifest was written by '{}', not calibrate",
                        manifest.command
                    )));
                }
                resolved = serde_json::from_value(manifest.config)
                    .map_err(|e| CliError::Io(e.to_string()))?;
                timestamp = Some(manifest.timestamp_unix);
            }
        }
    }

    if let Some(p) = &args.targets {
        resolved.targets_path = p.display().to_string();
    }
    if let Some(f) = &args.fit_wavelengths {
        resolved.fit_wavelengths_nm = parse_wavelength_list(f)?;
    }
    if let Some(b) = &args.bounds {
        apply_bounds_spec(&mut resolved, b)?;
    }
    if let Some(t) = args.thickness {
        resolved.thickness_m = t;
    }
    if resolved.targets_path.is_empty() {
        return Err(CliError::Usage("--targets PATH is required".into()));
    }

    let all_targets = parse_targets_csv(&resolved.targets_path)?;
    let targets: Vec<CalibrationTarget> = if resolved.fit_wavelengths_nm.is_empty() {
        all_targets
    } else {
        all_targets
            .into_iter()
            .filter(|t| {
                resolved
                    .fit_wavelengths_nm
                    .iter()
                    .any(|&nm| (units::nm_to_m(nm) - t.wavelength).abs() < 1e-15)
            })
            .collect()
    };
    if targets.len() < 2 {
        return Err(CliError::Usage(format!(
            "fit needs at least two targets after the wavelength filter, got {}",
            targets.len()
        )));
    }

    let problem = CalibrationProblem {
        targets,
        bounds: ParameterBounds {
            eccentricity: resolved.bounds_eps,
            effective_charge: resolved.bounds_z,
            semimajor: resolved.bounds_u_m,
        },
        film: CrystalFilm::npp(resolved.thickness_m)?,
        frame_offset: 0.0,
    };
    let result = calibrate(&problem)?;

    let manifest = RunManifest::new(
        "calibrate",
        &resolved,
        timestamp.unwrap_or_else(fresh_timestamp),
    )?;
    let doc = serde_json::json!({
        "manifest": &manifest,
        "result": result,
    });
    let text =
        serde_json::to_string_pretty(&doc).map_err(|e| CliError::Io(e.to_string()))? + "\n";
    emit(args.out.as_deref(), &text)?;
    if let Some(path) = &args.out {
        manifest.write_sidecar(path)?;
    }
    Ok(())
}
