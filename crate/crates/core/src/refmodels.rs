//! Classical reference models: the three-term Cauchy series, the two
//! published Sellmeier coefficient sets for NPP, and the measured
//! refractive-index dataset the simulation is compared against.

use crate::error::{Error, Result};
use crate::numerics::solve3;
use crate::Axis;
use sha2::{Digest, Sha256};
use std::sync::LazyLock;

/// Measured n_x / n_y rows, bundled verbatim.
pub const EXPERIMENTAL_CSV: &str = include_str!("../data/npp_experimental.csv");

/// SHA-256 of the bundled dataset; pinned so any edit to the published
/// numbers fails loudly.
pub const EXPERIMENTAL_SHA256: &str =
    "c969402db5382a7375b48f31bae073258bd8d6dbc643658485261740f80e2574";

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ExperimentalRow {
    pub wavelength_nm: f64,
    pub n_x: f64,
    pub n_y: f64,
}

static EXPERIMENTAL_ROWS: LazyLock<Vec<ExperimentalRow>> = LazyLock::new(|| {
    EXPERIMENTAL_CSV
        .lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let mut cols = line.split(',');
            let mut next = || cols.next().expect("bundled csv column").trim();
            ExperimentalRow {
                wavelength_nm: next().parse().expect("bundled csv number"),
                n_x: next().parse().expect("bundled csv number"),
                n_y: next().parse().expect("bundled csv number"),
            }
        })
        .collect()
});

/// All measured rows in wavelength order.
pub fn experimental_rows() -> &'static [ExperimentalRow] {
    &EXPERIMENTAL_ROWS
}

/// Hex SHA-256 of the bundled dataset bytes.
pub fn dataset_sha256() -> String {
    hex::encode(Sha256::digest(EXPERIMENTAL_CSV.as_bytes()))
}

/// Measured index at one of the published wavelengths.
pub fn experimental(axis: Axis, wavelength_nm: f64) -> Result<f64> {
    let row = experimental_rows()
        .iter()
        .find(|r| r.wavelength_nm == wavelength_nm)
        .ok_or_else(|| {
            Error::Lookup(format!(
                "no experimental row at {wavelength_nm} nm; published grid is {:?}",
                experimental_rows()
                    .iter()
                    .map(|r| r.wavelength_nm)
                    .collect::<Vec<_>>()
            ))
        })?;
    match axis {
        Axis::X => Ok(row.n_x),
        Axis::Y => Ok(row.n_y),
        Axis::Z => Err(Error::Lookup(
            "the measured dataset covers axes x and y only".into(),
        )),
    }
}

/// Three-term Cauchy coefficients, wavelength in µm:
/// n = 1 + A/λ² + B/λ⁴ + C/λ⁶.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CauchyCoeffs {
    /// µm²
    pub a: f64,
    /// µm⁴
    pub b: f64,
    /// µm⁶
    pub c: f64,
}

pub fn cauchy_eval(coeffs: &CauchyCoeffs, wavelength_um: f64) -> Result<f64> {
    if !(wavelength_um > 0.0) {
        return Err(Error::Domain(format!(
            "wavelength must be positive, got {wavelength_um} um"
        )));
    }
    let inv2 = 1.0 / (wavelength_um * wavelength_um);
    Ok(1.0 + coeffs.a * inv2 + coeffs.b * inv2 * inv2 + coeffs.c * inv2 * inv2 * inv2)
}

/// Fits the three Cauchy coefficients through three (λ in µm, n) points —
/// the unique solution of the linear system in (1/λ², 1/λ⁴, 1/λ⁶).
pub fn cauchy_fit(points: &[(f64, f64); 3]) -> Result<CauchyCoeffs> {
    for &(lambda, _) in points {
        if !(lambda > 0.0) {
            return Err(Error::Domain(format!(
                "fit wavelengths must be positive, got {lambda} um"
            )));
        }
    }
    if points[0].0 == points[1].0 || points[0].0 == points[2].0 || points[1].0 == points[2].0 {
        return Err(Error::Domain(
            "cauchy fit requires three distinct wavelengths".into(),
        ));
    }
    let mut matrix = [[0.0; 3]; 3];
    let mut rhs = [0.0; 3];
    for (i, &(lambda, n)) in points.iter().enumerate() {
        let x = 1.0 / (lambda * lambda);
        matrix[i] = [x, x * x, x * x * x];
        rhs[i] = n - 1.0;
    }
    let [a, b, c] = solve3(matrix, rhs)
        .map_err(|_| Error::Domain("cauchy fit system is singular".into()))?;
    Ok(CauchyCoeffs { a, b, c })
}

/// Published Sellmeier functional forms for NPP.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SellmeierForm {
    /// n² = A + B/(1 − C/λ²) + D·λ²
    Ledoux,
    /// n² = A + B/(1 − C/λ²) + D/(1 − E/λ²)
    Datta,
}

impl std::fmt::Display for SellmeierForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SellmeierForm::Ledoux => "ledoux",
            SellmeierForm::Datta => "datta",
        })
    }
}

/// One published coefficient row; λ in µm throughout.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SellmeierModel {
    pub form: SellmeierForm,
    pub axis: Axis,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    /// Second pole (µm²); Datta form only, 0 for Ledoux.
    pub e: f64,
}

/// The six published coefficient rows.
pub const SELLMEIER_TABLE: [SellmeierModel; 6] = [
    SellmeierModel { form: SellmeierForm::Ledoux, axis: Axis::X, a: 2.3532, b: 1.1299, c: 0.1678, d: 0.0392, e: 0.0 },
    SellmeierModel { form: SellmeierForm::Ledoux, axis: Axis::Y, a: 2.8137, b: 0.3655, c: 0.2030, d: -0.0816, e: 0.0 },
    SellmeierModel { form: SellmeierForm::Ledoux, axis: Axis::Z, a: 2.1268, b: 0.0527, c: 0.1550, d: -0.0608, e: 0.0 },
    SellmeierModel { form: SellmeierForm::Datta, axis: Axis::X, a: 2.41704, b: 1.08674, c: 0.16933, d: -0.34200, e: 10.0 },
    SellmeierModel { form: SellmeierForm::Datta, axis: Axis::Y, a: 2.76667, b: 0.37156, c: 0.20289, d: 0.47880, e: 10.0 },
    SellmeierModel { form: SellmeierForm::Datta, axis: Axis::Z, a: 2.19965, b: 0.00457, c: 0.17160, d: 0.59363, e: 10.0 },
];

/// Looks up the published coefficient row for a form and axis.
pub fn sellmeier_model(form: SellmeierForm, axis: Axis) -> SellmeierModel {
    *SELLMEIER_TABLE
        .iter()
        .find(|m| m.form == form && m.axis == axis)
        .expect("all six rows are bundled")
}

const POLE_TOL: f64 = 1e-9;

/// Evaluates a Sellmeier model at λ (µm).
///
/// The Datta second pole sits at λ ≈ 3.16 µm, outside the transparency
/// window; evaluation beyond 2 µm is allowed (callers may warn), only the
/// poles themselves are errors.
pub fn sellmeier_eval(model: &SellmeierModel, wavelength_um: f64) -> Result<f64> {
    if !(wavelength_um > 0.0) {
        return Err(Error::Domain(format!(
            "wavelength must be positive, got {wavelength_um} um"
        )));
    }
    let l2 = wavelength_um * wavelength_um;
    let first_pole = 1.0 - model.c / l2;
    if first_pole.abs() < POLE_TOL {
        return Err(Error::Domain(format!(
            "wavelength {wavelength_um} um sits on the λ²={} µm² Sellmeier pole",
            model.c
        )));
    }
    let n2 = match model.form {
        SellmeierForm::Ledoux => model.a + model.b / first_pole + model.d * l2,
        SellmeierForm::Datta => {
            let second_pole = 1.0 - model.e / l2;
            if second_pole.abs() < POLE_TOL {
                return Err(Error::Domain(format!(
                    "wavelength {wavelength_um} um sits on the λ²={} µm² Sellmeier pole",
                    model.e
                )));
            }
            model.a + model.b / first_pole + model.d / second_pole
        }
    };
    if n2 < 0.0 {
        return Err(Error::Domain(format!(
            "Sellmeier n² = {n2} is negative at {wavelength_um} um"
        )));
    }
    Ok(n2.sqrt())
}

/// The published coefficient table as a key=value text block.
pub fn sellmeier_block() -> String {
    let mut s = String::from("# NPP Sellmeier coefficients, lambda in micrometres\n");
    for m in &SELLMEIER_TABLE {
        let prefix = format!("sellmeier.{}.{}", m.form, m.axis);
        s.push_str(&format!("{prefix}.A = {}\n", m.a));
        s.push_str(&format!("{prefix}.B = {}\n", m.b));
        s.push_str(&format!("{prefix}.C = {}\n", m.c));
        s.push_str(&format!("{prefix}.D = {}\n", m.d));
        if m.form == SellmeierForm::Datta {
            s.push_str(&format!("{prefix}.E = {}\n", m.e));
        }
    }
    s
}
