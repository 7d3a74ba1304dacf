//! End-to-end tests of the command-line binary: exit codes and file outputs.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stirap-gates"))
}

fn lambda3_scenario(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("scenario.json");
    std::fs::write(
        &path,
        r#"{
            "scheme": {"kind": "lambda3", "single_photon_detunings": [50.0]},
            "pulses": {"envelopes": [
                {"peak": 100.0, "center": 0.75, "width": 1.0},
                {"peak": 100.0, "center": -0.75, "width": 1.0}
            ]},
            "grid": {"t_start": -5.5, "t_end": 5.5, "tol": 1e-8}
        }"#,
    )
    .unwrap();
    path
}

#[test]
fn simulate_writes_csv_with_embedded_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = lambda3_scenario(dir.path());
    let out = dir.path().join("out");
    let status = bin()
        .args(["simulate", "--config"])
        .arg(&scenario)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let csv = std::fs::read_to_string(out.join("trajectory.csv")).unwrap();
    assert!(csv.starts_with("# parameters: {"));
    assert!(csv.lines().nth(1).unwrap().starts_with("t,rho_1,rho_2,rho_3,norm"));
    // Final row: full transfer to the third level.
    let last = csv.lines().last().unwrap();
    let rho3: f64 = last.split(',').nth(3).unwrap().parse().unwrap();
    assert!(rho3 > 0.99, "expected transfer, got rho_3 = {rho3}");
    assert!(out.join("pulses.csv").exists());
    assert!(out.join("summary.json").exists());
}

#[test]
fn identical_configs_produce_byte_identical_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = lambda3_scenario(dir.path());
    let mut outputs = Vec::new();
    for sub in ["a", "b"] {
        let out = dir.path().join(sub);
        let status = bin()
            .args(["simulate", "--config"])
            .arg(&scenario)
            .arg("--out")
            .arg(&out)
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
        outputs.push(std::fs::read(out.join("trajectory.csv")).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn gate_exit_codes() {
    // A correct row exits 0.
    let status = bin()
        .args(["gate", "--kind", "toffoli3", "--input", "110"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    // An invalid bit string is a config error.
    let status = bin()
        .args(["gate", "--kind", "toffoli3", "--input", "2x0"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(4));
    // A non-adiabatic configuration misses the expected output: exit 2.
    let status = bin()
        .args([
            "gate", "--kind", "toffoli3", "--input", "110", "--delta", "2", "--peak", "4",
        ])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn figure_out_of_range_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let status = bin()
        .args(["figure", "--id", "7", "--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(4));
}

#[test]
fn adiabaticity_report_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = lambda3_scenario(dir.path());
    let output = bin()
        .args(["adiabaticity", "--config"])
        .arg(&scenario)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.contains("overall"), "missing report summary:\n{text}");

    // A hopeless configuration is a hard failure (exit 3).
    let weak = dir.path().join("weak.json");
    std::fs::write(
        &weak,
        r#"{
            "scheme": {"kind": "lambda3", "single_photon_detunings": [2.0]},
            "pulses": {"envelopes": [
                {"peak": 3.0, "center": 0.75, "width": 1.0},
                {"peak": 3.0, "center": -0.75, "width": 1.0}
            ]},
            "grid": {"t_start": -5.5, "t_end": 5.5}
        }"#,
    )
    .unwrap();
    let status = bin().args(["adiabaticity", "--config"]).arg(&weak).status().unwrap();
    assert_eq!(status.code(), Some(3));
}

#[test]
fn scan_rejects_empty_grids_and_runs_single_points() {
    let dir = tempfile::tempdir().unwrap();
    let status = bin()
        .args([
            "scan", "--axis", "delta", "--start", "50", "--stop", "100", "--points", "0",
            "--out",
        ])
        .arg(dir.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(4));

    let status = bin()
        .args([
            "scan", "--axis", "delta", "--start", "50", "--stop", "50", "--points", "1",
            "--kind", "toffoli3", "--out",
        ])
        .arg(dir.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("scan_delta.csv")).unwrap();
    let data_rows: Vec<&str> =
        csv.lines().filter(|l| !l.starts_with('#') && !l.starts_with("delta")).collect();
    assert_eq!(data_rows.len(), 1);
    let fidelity: f64 = data_rows[0].split(',').nth(1).unwrap().parse().unwrap();
    assert!(fidelity > 0.99, "single-point scan row disagrees with a direct run: {fidelity}");
}

#[test]
fn dressed_reports_matching_spectra() {
    let output = bin()
        .args([
            "dressed", "--delta", "50", "--omega1", "30", "--omega2", "40", "--omega3", "20",
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(v["scheme"], "five_level_tied");
    let residual = v["residuals"]["transfer_state"].as_f64().unwrap();
    assert!(residual < 1e-8);
}

#[test]
fn propagate_requires_a_medium_section() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = lambda3_scenario(dir.path());
    let status = bin()
        .args(["propagate", "--config"])
        .arg(&scenario)
        .arg("--out")
        .arg(dir.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(4));
}
