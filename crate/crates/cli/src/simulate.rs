//! `dispersim simulate`: run the Monte-Carlo (or deterministic) dispersion
//! model over a wavelength grid and write a plot-ready table.

use crate::errors::{CliError, CliResult};
use crate::manifest::{fresh_timestamp, load_config_layer, ConfigLayer, RunManifest};
use crate::output::{emit, f17};
use clap::Args;
use dispersim_core::crystal::CrystalFilm;
use dispersim_core::engine::{simulate_dispersion, Mode, SimulationConfig};
use dispersim_core::orbit::Orbit;
use dispersim_core::physics::units;
use dispersim_core::Axis;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::str::FromStr;

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Comma-separated vacuum wavelengths in nm
    #[arg(long)]
    wavelengths: Option<String>,
    /// Film thickness L in metres
    #[arg(long)]
    thickness: Option<f64>,
    /// Orbit eccentricity ε
    #[arg(long)]
    eccentricity: Option<f64>,
    /// Effective positive charge Z (units of e)
    #[arg(long)]
    charge: Option<f64>,
    /// Orbit semimajor axis u in metres
    #[arg(long)]
    semimajor: Option<f64>,
    /// Axis selection: x, y or both
    #[arg(long)]
    axis: Option<String>,
    /// Monte-Carlo repetitions per (wavelength, axis)
    #[arg(long)]
    samples: Option<u32>,
    /// RNG seed
    #[arg(long)]
    seed: Option<u64>,
    /// mc (Monte-Carlo) or det (deterministic quadrature)
    #[arg(long)]
    mode: Option<String>,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json
    #[arg(long)]
    format: Option<String>,
    /// key=value config file or a manifest JSON from a previous run;
    /// explicit flags override file values
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Fully resolved run parameters; this is what the manifest records.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResolvedSimulate {
    pub wavelengths_nm: Vec<f64>,
    pub thickness_m: f64,
    pub eccentricity: f64,
    pub charge: f64,
    pub semimajor_m: f64,
    pub axis: String,
    pub samples: u32,
    pub seed: u64,
    pub mode: String,
    pub format: String,
}

impl Default for ResolvedSimulate {
    fn default() -> Self {
        ResolvedSimulate {
            wavelengths_nm: Vec::new(),
            thickness_m: 3e-6,
            eccentricity: 0.26,
            charge: 3.9,
            semimajor_m: 1.4e-10,
            axis: "both".into(),
            samples: 1000,
            seed: 0,
            mode: "mc".into(),
            format: "csv".into(),
        }
    }
}

pub fn parse_wavelength_list(text: &str) -> CliResult<Vec<f64>> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let nm: f64 = part
            .parse()
            .map_err(|_| CliError::Usage(format!("bad wavelength '{part}'")))?;
        out.push(nm);
    }
    if out.is_empty() {
        return Err(CliError::Usage(
            "--wavelengths must list at least one value in nm".into(),
        ));
    }
    Ok(out)
}

fn apply_key_value(resolved: &mut ResolvedSimulate, pairs: &[(String, String)]) -> CliResult<()> {
    for (key, value) in pairs {
        let bad = |e: String| CliError::Io(format!("config key '{key}': {e}"));
        match key.as_str() {
            "wavelengths" => resolved.wavelengths_nm = parse_wavelength_list(value)?,
            "thickness" => resolved.thickness_m = value.parse().map_err(|e: std::num::ParseFloatError| bad(e.to_string()))?,
            "eccentricity" => resolved.eccentricity = value.parse().map_err(|e: std::num::ParseFloatError| bad(e.to_string()))?,
            "charge" => resolved.charge = value.parse().map_err(|e: std::num::ParseFloatError| bad(e.to_string()))?,
            "semimajor" => resolved.semimajor_m = value.parse().map_err(|e: std::num::ParseFloatError| bad(e.to_string()))?,
            "axis" => resolved.axis = value.clone(),
            "samples" => resolved.samples = value.parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?,
            "seed" => resolved.seed = value.parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?,
            "mode" => resolved.mode = value.clone(),
            "format" => resolved.format = value.clone(),
            other => {
                return Err(CliError::Io(format!(
                    "unknown config key '{other}' for simulate"
                )))
            }
        }
    }
    Ok(())
}

fn axes_from_name(name: &str) -> CliResult<Vec<Axis>> {
    match name {
        "x" => Ok(vec![Axis::X]),
        "y" => Ok(vec![Axis::Y]),
        "both" => Ok(vec![Axis::X, Axis::Y]),
        other => Err(CliError::Usage(format!(
            "--axis must be x, y or both, got '{other}'"
        ))),
    }
}

pub fn run(args: SimulateArgs) -> CliResult<()> {
    let mut resolved = ResolvedSimulate::default();
    let mut timestamp = None;

    if let Some(path) = &args.config {
        match load_config_layer(path)? {
            ConfigLayer::KeyValue(pairs) => apply_key_value(&mut resolved, &pairs)?,
            ConfigLayer::Manifest(manifest) => {
                if manifest.command != "simulate" {
                    return Err(CliError::Usage(format!(
                        "manifest {} was written by '{}', not simulate",
                        path.display(),
                        manifest.command
                    )));
                }
                resolved = serde_json::from_value(manifest.config).map_err(|e| {
                    CliError::Io(format!("manifest {}: {e}", path.display()))
                })?;
                timestamp = Some(manifest.timestamp_unix);
            }
        }
    }

    if let Some(text) = &args.wavelengths {
        resolved.wavelengths_nm = parse_wavelength_list(text)?;
    }
    if let Some(v) = args.thickness {
        resolved.thickness_m = v;
    }
    if let Some(v) = args.eccentricity {
        resolved.eccentricity = v;
    }
    if let Some(v) = args.charge {
        resolved.charge = v;
    }
    if let Some(v) = args.semimajor {
        resolved.semimajor_m = v;
    }
    if let Some(v) = &args.axis {
        resolved.axis = v.clone();
    }
    if let Some(v) = args.samples {
        resolved.samples = v;
    }
    if let Some(v) = args.seed {
        resolved.seed = v;
    }
    if let Some(v) = &args.mode {
        resolved.mode = v.clone();
    }
    if let Some(v) = &args.format {
        resolved.format = v.clone();
    }

    if resolved.wavelengths_nm.is_empty() {
        return Err(CliError::Usage(
            "no wavelengths given; pass --wavelengths or a config file".into(),
        ));
    }

    let table = run_table(&resolved)?;
    let manifest = RunManifest::new(
        "simulate",
        &resolved,
        timestamp.unwrap_or_else(fresh_timestamp),
    )?;
    write_output(&resolved, &table, &manifest, args.out.as_deref())
}

pub fn run_table(
    resolved: &ResolvedSimulate,
) -> CliResult<dispersim_core::engine::DispersionTable> {
    let axes = axes_from_name(&resolved.axis)?;
    let mode = Mode::from_str(&resolved.mode)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let film = CrystalFilm::npp(resolved.thickness_m)?;
    let orbit = Orbit::new(resolved.eccentricity, resolved.semimajor_m, resolved.charge, 1.0)?;

    for &nm in &resolved.wavelengths_nm {
        let m = units::nm_to_m(nm);
        if !(m >= dispersim_core::physics::TRANSPARENCY_WINDOW_M.0
            && m <= dispersim_core::physics::TRANSPARENCY_WINDOW_M.1)
        {
            eprintln!("warning: {nm} nm lies outside the NPP transparency window (480-2000 nm)");
        }
    }

    let config = SimulationConfig {
        film,
        orbit,
        wavelengths: resolved
            .wavelengths_nm
            .iter()
            .map(|&nm| units::nm_to_m(nm))
            .collect(),
        axes,
        samples_per_point: resolved.samples,
        seed: resolved.seed,
        mode,
        frame_offset: 0.0,
    };
    Ok(simulate_dispersion(&config)?)
}

/// CSV schema: `wavelength_nm,axis,n,stderr,sum_tau_s,layers`.
pub fn table_to_csv(
    resolved: &ResolvedSimulate,
    table: &dispersim_core::engine::DispersionTable,
) -> String {
    let axes_per_wavelength = table.points.len() / resolved.wavelengths_nm.len();
    let mut csv = String::from("wavelength_nm,axis,n,stderr,sum_tau_s,layers\n");
    for (i, point) in table.points.iter().enumerate() {
        // Carry the user's nm values through verbatim so the text is exact.
        let nm = resolved.wavelengths_nm[i / axes_per_wavelength];
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            f17(nm),
            point.axis,
            f17(point.n),
            f17(point.stderr),
            f17(point.sum_tau),
            point.layer_count
        ));
    }
    csv
}

fn write_output(
    resolved: &ResolvedSimulate,
    table: &dispersim_core::engine::DispersionTable,
    manifest: &RunManifest,
    out: Option<&Path>,
) -> CliResult<()> {
    match resolved.format.as_str() {
        "csv" => {
            emit(out, &table_to_csv(resolved, table))?;
            if let Some(path) = out {
                manifest.write_sidecar(path)?;
            }
            Ok(())
        }
        "json" => {
            let axes_per_wavelength = table.points.len() / resolved.wavelengths_nm.len();
            let rows: Vec<serde_json::Value> = table
                .points
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    serde_json::json!({
                        "wavelength_nm": resolved.wavelengths_nm[i / axes_per_wavelength],
                        "axis": p.axis.to_string(),
                        "n": p.n,
                        "stderr": p.stderr,
                        "sum_tau_s": p.sum_tau,
                        "layers": p.layer_count,
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "manifest": manifest,
                "meta": table.meta,
                "rows": rows,
            });
            let text = serde_json::to_string_pretty(&doc)
                .map_err(|e| CliError::Io(e.to_string()))?
                + "\n";
            emit(out, &text)?;
            if let Some(path) = out {
                manifest.write_sidecar(path)?;
            }
            Ok(())
        }
        other => Err(CliError::Usage(format!(
            "--format must be csv or json, got '{other}'"
        ))),
    }
}
