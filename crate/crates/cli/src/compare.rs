//! `dispersim compare`: join a simulated table against the measured dataset
//! and a Sellmeier column, with per-wavelength percent errors.

use crate::errors::{CliError, CliResult};
use crate::manifest::{fresh_timestamp, load_config_layer, ConfigLayer, RunManifest};
use crate::output::{emit, f17};
use clap::Args;
use dispersim_core::refmodels::{experimental, SellmeierForm};
use dispersim_core::Axis;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Simulated CSV written by `dispersim simulate`
    #[arg(long)]
    sim: Option<PathBuf>,
    /// Axis column to compare: x or y
    #[arg(long)]
    axis: Option<String>,
    /// Sellmeier column form: datta (default) or ledoux
    #[arg(long)]
    form: Option<String>,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// key=value config file or a manifest JSON from a previous run
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResolvedCompare {
    pub sim_path: String,
    pub axis: String,
    pub form: String,
}

/// A parsed row of a simulate CSV.
struct SimRow {
    wavelength_nm: f64,
    axis: Axis,
    n: f64,
}

fn parse_sim_csv(path: &str) -> CliResult<Vec<SimRow>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {path}: {e}")))?;
    let mut lines = text.lines().enumerate();
    let Some((_, header)) = lines.next() else {
        return Err(CliError::Io(format!("{path}: empty file")));
    };
    if !header.starts_with("wavelength_nm,axis,n,") {
        return Err(CliError::Io(format!(
            "{path}: not a simulate table (header '{header}')"
        )));
    }
    let mut rows = Vec::new();
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() < 3 {
            return Err(CliError::Io(format!(
                "{path}:{}: expected at least 3 columns",
                idx + 1
            )));
        }
        let parse_f = |text: &str, what: &str| -> CliResult<f64> {
            text.parse()
                .map_err(|_| CliError::Io(format!("{path}:{}: bad {what} '{text}'", idx + 1)))
        };
        rows.push(SimRow {
            wavelength_nm: parse_f(cols[0], "wavelength")?,
            axis: Axis::from_str(cols[1])
                .map_err(|_| CliError::Io(format!("{path}:{}: bad axis '{}'", idx + 1, cols[1])))?,
            n: parse_f(cols[2], "n")?,
        });
    }
    Ok(rows)
}

pub fn run(args: CompareArgs) -> CliResult<()> {
    let mut resolved = ResolvedCompare {
        sim_path: String::new(),
        axis: "x".into(),
        form: "datta".into(),
    };
    let mut timestamp = None;

    if let Some(path) = &args.config {
        match load_config_layer(path)? {
            ConfigLayer::KeyValue(pairs) => {
                for (key, value) in &pairs {
                    match key.as_str() {
                        "sim" => resolved.sim_path = value.clone(),
                        "axis" => resolved.axis = value.clone(),
                        "form" => resolved.form = value.clone(),
                        other => {
                            return Err(CliError::Io(format!(
                                "unknown config key '{other}' for compare"
                            )))
                        }
                    }
                }
            }
            ConfigLayer::Manifest(manifest) => {
                if manifest.command != "compare" {
                    return Err(CliError::Usage(format!(
                        "manifest was written by '{}', not compare",
                        manifest.command
                    )));
                }
                resolved = serde_json::from_value(manifest.config)
                    .map_err(|e| CliError::Io(e.to_string()))?;
                timestamp = Some(manifest.timestamp_unix);
            }
        }
    }

    if let Some(p) = &args.sim {
        resolved.sim_path = p.display().to_string();
    }
    if let Some(a) = &args.axis {
        resolved.axis = a.clone();
    }
    if let Some(f) = &args.form {
        resolved.form = f.clone();
    }
    if resolved.sim_path.is_empty() {
        return Err(CliError::Usage("--sim PATH is required".into()));
    }

    let csv = render(&resolved)?;
    emit(args.out.as_deref(), &csv)?;
    if let Some(path) = &args.out {
        RunManifest::new(
            "compare",
            &resolved,
            timestamp.unwrap_or_else(fresh_timestamp),
        )?
        .write_sidecar(path)?;
    }
    Ok(())
}

/// Columns: `wavelength_nm,n_exp,n_sim,n_sellmeier,percent_error`, then
/// `max`/`min` summary rows over the error column.
pub fn render(resolved: &ResolvedCompare) -> CliResult<String> {
    let axis = Axis::from_str(&resolved.axis)?;
    if axis == Axis::Z {
        return Err(CliError::Usage(
            "compare joins the measured dataset, which covers x and y only".into(),
        ));
    }
    let form = match resolved.form.as_str() {
        "datta" => SellmeierForm::Datta,
        "ledoux" => SellmeierForm::Ledoux,
        other => {
            return Err(CliError::Usage(format!(
                "--form must be datta or ledoux, got '{other}'"
            )))
        }
    };

    let rows = parse_sim_csv(&resolved.sim_path)?;
    let rows: Vec<&SimRow> = rows.iter().filter(|r| r.axis == axis).collect();
    if rows.is_empty() {
        return Err(CliError::Usage(format!(
            "simulated table has no rows for axis {axis}"
        )));
    }

    let mismatched: Vec<f64> = rows
        .iter()
        .filter(|r| experimental(axis, r.wavelength_nm).is_err())
        .map(|r| r.wavelength_nm)
        .collect();
    if !mismatched.is_empty() {
        return Err(CliError::Usage(format!(
            "join error: no experimental rows at {mismatched:?} nm; the published grid is \
             509, 532, 546, 577, 589, 633, 644, 690, 1064, 1340"
        )));
    }

    let mut csv = String::from("wavelength_nm,n_exp,n_sim,n_sellmeier,percent_error\n");
    let mut max_err = f64::MIN;
    let mut min_err = f64::MAX;
    for row in &rows {
        let n_exp = experimental(axis, row.wavelength_nm)?;
        let n_sellmeier = crate::reference::sellmeier_at(form, axis, row.wavelength_nm)?;
        let percent = (row.n - n_exp).abs() / n_exp * 100.0;
        max_err = max_err.max(percent);
        min_err = min_err.min(percent);
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            f17(row.wavelength_nm),
            f17(n_exp),
            f17(row.n),
            f17(n_sellmeier),
            f17(percent)
        ));
    }
    csv.push_str(&format!("max,,,,{}\n", f17(max_err)));
    csv.push_str(&format!("min,,,,{}\n", f17(min_err)));
    Ok(csv)
}
