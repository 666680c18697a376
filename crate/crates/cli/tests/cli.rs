//! CLI contract tests: column schemas, exit codes, config-file layering.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_dispersim");

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dispersim-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn dispersim(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN)
        .current_dir(dir)
        .args(args)
        .output()
        .expect("spawn dispersim")
}

fn stdout_of(dir: &Path, args: &[&str]) -> String {
    let out = dispersim(dir, args);
    assert!(
        out.status.success(),
        "dispersim {args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn simulate_csv_schema_is_stable() {
    let dir = tmp_dir("schema");
    let text = stdout_of(
        &dir,
        &[
            "simulate",
            "--wavelengths",
            "633",
            "--samples",
            "10",
            "--seed",
            "1",
            "--mode",
            "det",
        ],
    );
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "wavelength_nm,axis,n,stderr,sum_tau_s,layers"
    );
    let first = lines.next().unwrap();
    assert!(first.starts_with("6.3300000000000000e2,x,"), "{first}");
    let second = lines.next().unwrap();
    assert!(second.starts_with("6.3300000000000000e2,y,"), "{second}");
    assert_eq!(lines.next(), None);
}

#[test]
fn compare_csv_schema_and_summary_rows() {
    let dir = tmp_dir("compare");
    let sim = stdout_of(
        &dir,
        &[
            "simulate",
            "--wavelengths",
            "509,633",
            "--samples",
            "10",
            "--seed",
            "1",
            "--mode",
            "det",
        ],
    );
    std::fs::write(dir.join("sim.csv"), sim).unwrap();
    let text = stdout_of(&dir, &["compare", "--sim", "sim.csv", "--axis", "x"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "wavelength_nm,n_exp,n_sim,n_sellmeier,percent_error"
    );
    assert_eq!(lines.len(), 5, "{text}");
    assert!(lines[3].starts_with("max,,,,"));
    assert!(lines[4].starts_with("min,,,,"));
}

#[test]
fn compare_identical_table_gives_zero_errors() {
    let dir = tmp_dir("compare-zero");
    // Build a fake simulation that copies the measured numbers.
    let mut sim = String::from("wavelength_nm,axis,n,stderr,sum_tau_s,layers\n");
    for (nm, n) in [(509.0, 2.355), (633.0, 2.066)] {
        sim.push_str(&format!("{nm:.16e},x,{n:.16e},0,0,1\n"));
    }
    std::fs::write(dir.join("sim.csv"), sim).unwrap();
    let text = stdout_of(&dir, &["compare", "--sim", "sim.csv", "--axis", "x"]);
    for line in text.lines().skip(1) {
        let err: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert_eq!(err, 0.0, "{line}");
    }
}

#[test]
fn compare_rejects_off_grid_wavelengths() {
    let dir = tmp_dir("compare-join");
    let mut sim = String::from("wavelength_nm,axis,n,stderr,sum_tau_s,layers\n");
    sim.push_str("6.0000000000000000e2,x,2.0,0,0,1\n");
    std::fs::write(dir.join("sim.csv"), sim).unwrap();
    let out = dispersim(&dir, &["compare", "--sim", "sim.csv", "--axis", "x"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("600"), "{stderr}");
}

#[test]
fn reference_experimental_matches_bundled_rows() {
    let dir = tmp_dir("ref-exp");
    let text = stdout_of(&dir, &["reference", "--model", "experimental", "--axis", "x"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "wavelength_nm,n_exp");
    assert_eq!(lines.len(), 11);
    assert!(lines[1].starts_with("5.0900000000000000e2,2.3550000000000000e0"));
    assert!(lines[10].starts_with("1.3400000000000000e3,1.9170000000000000e0"));
}

#[test]
fn reference_pdf_uniform_for_circular_orbit() {
    let dir = tmp_dir("ref-pdf");
    let text = stdout_of(
        &dir,
        &["reference", "--model", "pdf", "--eccentricity", "0", "--points", "9"],
    );
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "theta_rad,pdf,cdf");
    let uniform = 1.0 / std::f64::consts::TAU;
    for line in &lines[1..] {
        let pdf: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!((pdf - uniform).abs() < 1e-15, "{line}");
    }
}

#[test]
fn reference_sellmeier_z_axis_curve() {
    let dir = tmp_dir("ref-z");
    let text = stdout_of(
        &dir,
        &[
            "reference", "--model", "datta", "--axis", "z", "--points", "3", "--range",
            "509:1340",
        ],
    );
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "wavelength_nm,n");
    assert_eq!(lines.len(), 4);
    // Datta z row at 509 nm: n² = 2.19965 + 0.00457/(1−0.17160/0.259081)
    //                            + 0.59363/(1−10/0.259081) → n ≈ 1.4824.
    let n509: f64 = lines[1].split(',').nth(1).unwrap().parse().unwrap();
    assert!((n509 - 1.4824).abs() < 1e-3, "{n509}");
}

#[test]
fn usage_errors_exit_2() {
    let dir = tmp_dir("usage");
    for args in [
        &["simulate", "--wavelengths", ""][..],
        &["simulate", "--wavelengths", "633", "--mode", "warp"],
        &["simulate", "--wavelengths", "633", "--axis", "q"],
        &["reference", "--model", "nonsense"],
        &["reference"],
        &["frobnicate"],
    ] {
        let out = dispersim(&dir, args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn ionizing_wavelength_exits_3() {
    let dir = tmp_dir("ionize");
    let out = dispersim(
        &dir,
        &["simulate", "--wavelengths", "200", "--samples", "5", "--seed", "1"],
    );
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("ionization"), "{stderr}");
}

#[test]
fn infeasible_calibration_exits_4() {
    let dir = tmp_dir("cal-fail");
    // Ionizing anchor wavelengths make the objective non-finite everywhere.
    std::fs::write(
        dir.join("targets.csv"),
        "wavelength_nm,axis,n_exp\n200,x,2.0\n210,x,1.9\n",
    )
    .unwrap();
    let out = dispersim(
        &dir,
        &[
            "calibrate",
            "--targets",
            "targets.csv",
            "--fit-wavelengths",
            "200,210",
        ],
    );
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn missing_input_file_exits_5() {
    let dir = tmp_dir("io");
    let out = dispersim(&dir, &["calibrate", "--targets", "nope.csv"]);
    assert_eq!(out.status.code(), Some(5));
    let out = dispersim(&dir, &["compare", "--sim", "nope.csv", "--axis", "x"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn malformed_targets_reports_line_number() {
    let dir = tmp_dir("targets-line");
    std::fs::write(
        dir.join("targets.csv"),
        "wavelength_nm,axis,n_exp\n532,x,2.277\noops\n",
    )
    .unwrap();
    let out = dispersim(&dir, &["calibrate", "--targets", "targets.csv"]);
    assert_eq!(out.status.code(), Some(5));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains(":3"), "{stderr}");
}

#[test]
fn empty_targets_file_is_a_parse_error() {
    let dir = tmp_dir("targets-empty");
    std::fs::write(dir.join("targets.csv"), "").unwrap();
    let out = dispersim(&dir, &["calibrate", "--targets", "targets.csv"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn key_value_config_loads_and_flags_override() {
    let dir = tmp_dir("config");
    std::fs::write(
        dir.join("run.conf"),
        "# desk run\nwavelengths = 509,633\nmode = det\nsamples = 10\nseed = 9\n",
    )
    .unwrap();
    let from_config = stdout_of(&dir, &["simulate", "--config", "run.conf"]);
    assert!(from_config.contains("5.0900000000000000e2,x,"));

    // An explicit flag wins over the file value.
    let overridden = stdout_of(
        &dir,
        &["simulate", "--config", "run.conf", "--wavelengths", "1064"],
    );
    assert!(!overridden.contains("5.0900000000000000e2"));
    assert!(overridden.contains("1.0640000000000000e3,x,"));
}

#[test]
fn crystal_block_lists_the_cell() {
    let dir = tmp_dir("crystal");
    let text = stdout_of(&dir, &["reference", "--crystal"]);
    assert!(text.contains("a_angstrom = 5.261"));
    assert!(text.contains("beta_deg = 105.18"));
    assert!(text.contains("transparency_window_um = 0.48:2.0"));
    let text = stdout_of(&dir, &["reference", "--sellmeier-coefficients"]);
    assert!(text.contains("sellmeier.ledoux.x.A = 2.3532"));
}

#[test]
fn out_of_window_wavelength_warns_but_runs() {
    let dir = tmp_dir("warn");
    let out = dispersim(
        &dir,
        &[
            "simulate", "--wavelengths", "450", "--samples", "5", "--seed", "1", "--mode", "det",
        ],
    );
    assert!(out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("transparency window"), "{stderr}");
}
