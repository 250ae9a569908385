use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn vortex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vortex"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, text: &str) -> String {
    let p = dir.join("scenario.in.json");
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| {
            rec.unwrap()
                .iter()
                .map(|v| v.parse::<f64>().unwrap())
                .collect()
        })
        .collect();
    (header, rows)
}

const SLOW_BEAM: &str =
    r#""beam": {"kind": "bessel", "l": 3, "s": 0.5, "theta0_deg": 11.3, "kinetic_keV": 1.41}"#;

fn slow_config(outputs: &str) -> String {
    format!(
        r#"{{"pulse": {{"intensity_Wcm2": 3.5e16, "omega_au": 0.15, "a": 0.9, "phi_rad": 1.2}},
            {SLOW_BEAM},
            "numerics": {{"box_n_xy": 8, "box_n_z": 8}},
            "outputs": {outputs}}}"#
    )
}

#[test]
fn field_table_is_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), &slow_config("{}"));
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for out in [&a, &b] {
        let o = vortex(&["field", "--config", &cfg, "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let first = fs::read(a.join("field.csv")).unwrap();
    assert_eq!(first, fs::read(b.join("field.csv")).unwrap());
    let (header, rows) = read_csv(&a.join("field.csv"));
    assert_eq!(header, ["xi", "E", "A", "I_A", "I_A2"]);
    assert_eq!(rows.len(), 2001);
    // A vanishes before the pulse
    assert_eq!(rows[0][2], 0.0);
    let meta: Value = serde_json::from_slice(&fs::read(a.join("field.csv.json")).unwrap()).unwrap();
    assert_eq!(meta["scenario_hash"].as_str().unwrap().len(), 64);
    assert_eq!(meta["scenario"]["pulse"]["omega_au"], 0.15);
}

#[test]
fn invalid_config_names_fields() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = r#"{"pulse": {"intensity_Wcm2": 1e13, "omega_au": -1.0, "a": 9},
                  "beam": {"kind": "bessel", "l": 3, "s": 0.7, "theta0_deg": 45, "kinetic_keV": 817.4},
                  "outputs": {"times": []}}"#;
    let cfg = write_config(tmp.path(), bad);
    let o = vortex(&[
        "simulate",
        "--config",
        &cfg,
        "--out",
        tmp.path().to_str().unwrap(),
    ]);
    assert!(!o.status.success());
    let err = String::from_utf8_lossy(&o.stderr);
    for field in ["pulse.omega_au", "beam.s", "outputs.times"] {
        assert!(err.contains(field), "{err}");
    }
    let cfg = write_config(tmp.path(), r#"{"pulse": {}, "beam": {}, "extra": 1}"#);
    assert!(!vortex(&["field", "--config", &cfg]).status.success());
}

#[test]
fn fig6_profiles_have_the_expected_signs() {
    let tmp = tempfile::tempdir().unwrap();
    let o = vortex(&["reproduce", "fig6", "--out", tmp.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (_, b) = read_csv(&tmp.path().join("fig6/current_bessel.csv"));
    let (_, r) = read_csv(&tmp.path().join("fig6/current_rotated.csv"));
    assert!(b.iter().all(|row| row[1] >= 0.0 && row[2] >= 0.0));
    assert!(r.iter().any(|row| row[1] < 0.0 || row[2] < 0.0));
    for (x, y) in b.iter().zip(&r) {
        assert!((x[3] - y[3]).abs() < 1e-6);
    }
}

#[test]
fn fig7_sweep_table() {
    let tmp = tempfile::tempdir().unwrap();
    let o = vortex(&[
        "reproduce",
        "fig7",
        "--out",
        tmp.path().to_str().unwrap(),
        "--threads",
        "1",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = read_csv(&tmp.path().join("fig7/sweep.csv"));
    assert_eq!(header, ["phi", "S_E", "J_mean", "DJ"]);
    assert_eq!(rows.len(), 9);
    let top = rows
        .iter()
        .max_by(|a, b| a[1].abs().total_cmp(&b[1].abs()))
        .unwrap();
    assert!(top[3] >= 5.0 * rows[0][3]);
    assert!(rows.iter().all(|r| (r[2] - 3.5).abs() < 0.2));
}

#[test]
fn simulate_and_classical_share_the_clock() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        &slow_config(r#"{"times": [-1.0, 0.5], "classical_phis": [1.5707963267948966]}"#),
    );
    let out = tmp.path().to_str().unwrap();
    for cmd in ["simulate", "classical"] {
        let o = vortex(&[cmd, "--config", &cfg, "--out", out]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let (header, dens) = read_csv(&tmp.path().join("density_001.csv"));
    assert_eq!(header, ["x", "y", "value"]);
    assert_eq!(dens.len(), 64);
    let (_, snaps) = read_csv(&tmp.path().join("snapshots.csv"));
    let (_, mean) = read_csv(&tmp.path().join("classical_mean.csv"));
    let (_, paths) = read_csv(&tmp.path().join("classical_paths.csv"));
    assert_eq!(paths.len(), 2);
    for k in 0..2 {
        assert_eq!(snaps[k][1], mean[k][0]);
        assert!(mean[k][2].abs() < 1e-10);
    }
}
