//! `dispersim reference`: emit classical model curves, bundled datasets and
//! the orbit presence PDF/CDF as plot-ready CSV.

use crate::errors::{CliError, CliResult};
use crate::manifest::{fresh_timestamp, load_config_layer, ConfigLayer, RunManifest};
use crate::output::{emit, f17};
use crate::simulate::parse_wavelength_list;
use clap::Args;
use dispersim_core::crystal::npp_reference_block;
use dispersim_core::orbit::{cdf, pdf, Orbit};
use dispersim_core::refmodels::{
    cauchy_eval, cauchy_fit, experimental, experimental_rows, sellmeier_block, sellmeier_eval,
    sellmeier_model, SellmeierForm,
};
use dispersim_core::Axis;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Debug, Args)]
pub struct ReferenceArgs {
    /// datta | ledoux | cauchy | experimental | pdf
    #[arg(long)]
    model: Option<String>,
    /// Shorthand for --model pdf
    #[arg(long, default_value_t = false)]
    pdf: bool,
    /// Print the built-in crystal dataset as key=value text
    #[arg(long, default_value_t = false)]
    crystal: bool,
    /// Print the published Sellmeier coefficient table as key=value text
    #[arg(long = "sellmeier-coefficients", default_value_t = false)]
    sellmeier_coefficients: bool,
    /// x, y or z (z for Sellmeier models only)
    #[arg(long)]
    axis: Option<String>,
    /// Curve sample count
    #[arg(long)]
    points: Option<usize>,
    /// Wavelength range lo:hi in nm
    #[arg(long)]
    range: Option<String>,
    /// Orbit eccentricity for the pdf model
    #[arg(long)]
    eccentricity: Option<f64>,
    /// Wavelengths (nm) anchoring the Cauchy fit
    #[arg(long = "fit-wavelengths")]
    fit_wavelengths: Option<String>,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// key=value config file or a manifest JSON from a previous run
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResolvedReference {
    pub model: String,
    pub axis: String,
    pub points: usize,
    pub range_nm: (f64, f64),
    pub eccentricity: f64,
    pub fit_wavelengths_nm: Vec<f64>,
}

impl Default for ResolvedReference {
    fn default() -> Self {
        ResolvedReference {
            model: String::new(),
            axis: "x".into(),
            points: 100,
            range_nm: (480.0, 2000.0),
            eccentricity: 0.26,
            fit_wavelengths_nm: vec![509.0, 633.0, 1064.0],
        }
    }
}

fn parse_range(text: &str) -> CliResult<(f64, f64)> {
    let Some((lo, hi)) = text.split_once(':') else {
        return Err(CliError::Usage(format!(
            "--range wants lo:hi in nm, got '{text}'"
        )));
    };
    let lo: f64 = lo
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("bad range bound '{lo}'")))?;
    let hi: f64 = hi
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("bad range bound '{hi}'")))?;
    if !(lo > 0.0 && hi > lo) {
        return Err(CliError::Usage(format!(
            "range must satisfy 0 < lo < hi, got {lo}:{hi}"
        )));
    }
    Ok((lo, hi))
}

pub fn run(args: ReferenceArgs) -> CliResult<()> {
    if args.crystal {
        return emit(args.out.as_deref(), &npp_reference_block());
    }
    if args.sellmeier_coefficients {
        return emit(args.out.as_deref(), &sellmeier_block());
    }

    let mut resolved = ResolvedReference::default();
    let mut timestamp = None;
    if let Some(path) = &args.config {
        match load_config_layer(path)? {
            ConfigLayer::KeyValue(pairs) => {
                for (key, value) in &pairs {
                    match key.as_str() {
                        "model" => resolved.model = value.clone(),
                        "axis" => resolved.axis = value.clone(),
                        "points" => {
                            resolved.points = value
                                .parse()
                                .map_err(|_| CliError::Io(format!("bad points '{value}'")))?
                        }
                        "range" => resolved.range_nm = parse_range(value)?,
                        "eccentricity" => {
                            resolved.eccentricity = value
                                .parse()
                                .map_err(|_| CliError::Io(format!("bad eccentricity '{value}'")))?
                        }
                        other => {
                            return Err(CliError::Io(format!(
                                "unknown config key '{other}' for reference"
                            )))
                        }
                    }
                }
            }
            ConfigLayer::Manifest(manifest) => {
                if manifest.command != "reference" {
                    return Err(CliError::Usage(format!(
                        "manifest was written by '{}', not reference",
                        manifest.command
                    )));
                }
                resolved = serde_json::from_value(manifest.config)
                    .map_err(|e| CliError::Io(e.to_string()))?;
                timestamp = Some(manifest.timestamp_unix);
            }
        }
    }

    if args.pdf {
        resolved.model = "pdf".into();
    }
    if let Some(m) = &args.model {
        resolved.model = m.clone();
    }
    if let Some(a) = &args.axis {
        resolved.axis = a.clone();
    }
    if let Some(p) = args.points {
        resolved.points = p;
    }
    if let Some(r) = &args.range {
        resolved.range_nm = parse_range(r)?;
    }
    if let Some(e) = args.eccentricity {
        resolved.eccentricity = e;
    }
    if let Some(f) = &args.fit_wavelengths {
        resolved.fit_wavelengths_nm = parse_wavelength_list(f)?;
    }

    if resolved.model.is_empty() {
        return Err(CliError::Usage(
            "pick one of --model, --pdf, --crystal or --sellmeier-coefficients".into(),
        ));
    }
    if resolved.points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }

    let csv = render(&resolved)?;
    emit(args.out.as_deref(), &csv)?;
    if let Some(path) = &args.out {
        RunManifest::new(
            "reference",
            &resolved,
            timestamp.unwrap_or_else(fresh_timestamp),
        )?
        .write_sidecar(path)?;
    }
    Ok(())
}

fn wavelength_grid(range_nm: (f64, f64), points: usize) -> Vec<f64> {
    let (lo, hi) = range_nm;
    let step = (hi - lo) / (points - 1) as f64;
    (0..points).map(|i| lo + step * i as f64).collect()
}

pub fn render(resolved: &ResolvedReference) -> CliResult<String> {
    match resolved.model.as_str() {
        "experimental" => {
            let axis = Axis::from_str(&resolved.axis)?;
            let mut csv = String::from("wavelength_nm,n_exp\n");
            for row in experimental_rows() {
                let n = experimental(axis, row.wavelength_nm)?;
                csv.push_str(&format!("{},{}\n", f17(row.wavelength_nm), f17(n)));
            }
            Ok(csv)
        }
        "datta" | "ledoux" => {
            let axis = Axis::from_str(&resolved.axis)?;
            let form = if resolved.model == "datta" {
                SellmeierForm::Datta
            } else {
                SellmeierForm::Ledoux
            };
            let model = sellmeier_model(form, axis);
            if resolved.range_nm.1 > 2000.0 {
                eprintln!(
                    "warning: range extends beyond the 2000 nm transparency edge; Sellmeier \
                     values out there are extrapolation"
                );
            }
            let mut csv = String::from("wavelength_nm,n\n");
            for nm in wavelength_grid(resolved.range_nm, resolved.points) {
                let n = sellmeier_eval(&model, nm / 1000.0)?;
                csv.push_str(&format!("{},{}\n", f17(nm), f17(n)));
            }
            Ok(csv)
        }
        "cauchy" => {
            let axis = Axis::from_str(&resolved.axis)?;
            if resolved.fit_wavelengths_nm.len() != 3 {
                return Err(CliError::Usage(
                    "--fit-wavelengths wants exactly three values in nm".into(),
                ));
            }
            let mut anchors = [(0.0, 0.0); 3];
            for (slot, &nm) in anchors.iter_mut().zip(&resolved.fit_wavelengths_nm) {
                *slot = (nm / 1000.0, experimental(axis, nm)?);
            }
            let coeffs = cauchy_fit(&anchors)?;
            let mut csv = String::from("wavelength_nm,n\n");
            for nm in wavelength_grid(resolved.range_nm, resolved.points) {
                let n = cauchy_eval(&coeffs, nm / 1000.0)?;
                csv.push_str(&format!("{},{}\n", f17(nm), f17(n)));
            }
            Ok(csv)
        }
        "pdf" => {
            let orbit = Orbit::new(resolved.eccentricity, 1.4e-10, 3.9, 1.0)?;
            let mut csv = String::from("theta_rad,pdf,cdf\n");
            let n = resolved.points;
            for i in 0..n {
                let theta = std::f64::consts::TAU * i as f64 / (n - 1) as f64;
                // The domain is closed at 2π; clamp the last grid point onto it.
                let theta = theta.min(std::f64::consts::TAU);
                csv.push_str(&format!(
                    "{},{},{}\n",
                    f17(theta),
                    f17(pdf(theta, resolved.eccentricity)),
                    f17(cdf(theta, &orbit)?)
                ));
            }
            Ok(csv)
        }
        other => Err(CliError::Usage(format!(
            "unknown model '{other}'; expected datta, ledoux, cauchy, experimental or pdf"
        ))),
    }
}

/// Used by `compare` to pull a Sellmeier column.
pub fn sellmeier_at(form: SellmeierForm, axis: Axis, nm: f64) -> CliResult<f64> {
    Ok(sellmeier_eval(&sellmeier_model(form, axis), nm / 1000.0)?)
}
