//! Command-line behavior: stage chaining, schema validation, exit codes,
//! config handling.

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_circlat")
}

fn tmp(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("circlat-cli-{}-{tag}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn read_column(path: &Path, idx: usize) -> Vec<f64> {
    let text = std::fs::read_to_string(path).unwrap();
    text.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(',').nth(idx).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn kick_with_zero_area_returns_input() {
    let out = tmp("kick-zero");
    let status = Command::new(bin())
        .args(["run", "kick", "--set", "pulse_area=0", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let spectrum = out.join("run_kick_spectrum.csv");
    let re = read_column(&spectrum, 1);
    let m_max = (re.len() - 1) / 2;
    // Identity kick: the binomial weights sit unchanged around m = 0.
    let center = re[m_max];
    assert!((center - 0.49762).abs() < 1e-4);
    let norm: f64 = read_column(&spectrum, 3).iter().sum();
    assert!((norm - 1.0).abs() < 1e-12);
    std::fs::remove_dir_all(&out).ok();
}

#[test]
fn evolve_halves_compose_to_the_whole() {
    let out_half = tmp("evolve-half");
    let out_two = tmp("evolve-two");
    let out_full = tmp("evolve-full");
    // One step of xi_t, in halves, chaining the spectrum file.
    let status = Command::new(bin())
        .args(["run", "evolve", "--set", "xi_t=0.005", "--out"])
        .arg(&out_half)
        .status()
        .unwrap();
    assert!(status.success());
    let half_file = out_half.join("run_evolve_spectrum.csv");
    let status = Command::new(bin())
        .args([
            "run",
            "evolve",
            "--set",
            &format!("in={}", half_file.display()),
            "--set",
            "xi_t=0.005",
            "--out",
        ])
        .arg(&out_two)
        .status()
        .unwrap();
    assert!(status.success());
    let status = Command::new(bin())
        .args(["run", "evolve", "--set", "xi_t=0.01", "--out"])
        .arg(&out_full)
        .status()
        .unwrap();
    assert!(status.success());

    let two = out_two.join("run_evolve_spectrum.csv");
    let full = out_full.join("run_evolve_spectrum.csv");
    for idx in [1, 2] {
        let a = read_column(&two, idx);
        let b = read_column(&full, idx);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12, "{x} vs {y}");
        }
    }
    for dir in [out_half, out_two, out_full] {
        std::fs::remove_dir_all(&dir).ok();
    }
}

#[test]
fn chaining_rejects_wrong_schema() {
    let out = tmp("schema");
    // A profile file fed where a spectrum is expected.
    let profile = out.join("profile.csv");
    std::fs::write(&profile, "phi,re,im,prob\n0,1,0,1\n").unwrap();
    let output = Command::new(bin())
        .args([
            "run",
            "evolve",
            "--set",
            &format!("in={}", profile.display()),
            "--out",
        ])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("schema"), "stderr: {stderr}");
    assert!(stderr.contains("m,re,im,prob"), "stderr: {stderr}");
    std::fs::remove_dir_all(&out).ok();
}

#[test]
fn unwritable_output_path_exits_with_config_error() {
    let dir = tmp("unwritable");
    // A plain file where the output directory should go.
    let blocker = dir.join("blocked");
    std::fs::write(&blocker, b"not a directory").unwrap();
    let output = Command::new(bin())
        .args(["fig", "2", "--out"])
        .arg(blocker.join("sub"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("error"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn unknown_config_key_exits_with_config_error() {
    let out = tmp("unknown-key");
    let output = Command::new(bin())
        .args(["fig", "2", "--set", "no_such_key=1", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("unknown config key"));
    std::fs::remove_dir_all(&out).ok();
}

#[test]
fn empty_config_file_equals_defaults() {
    let out_a = tmp("defaults-a");
    let out_b = tmp("defaults-b");
    let cfg = out_a.join("empty.cfg");
    std::fs::write(&cfg, "# nothing here\n").unwrap();
    let status = Command::new(bin())
        .args(["fig", "2", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out_a)
        .status()
        .unwrap();
    assert!(status.success());
    let status = Command::new(bin())
        .args(["fig", "2", "--out"])
        .arg(&out_b)
        .status()
        .unwrap();
    assert!(status.success());
    let a = std::fs::read(out_a.join("fig2_kicked.csv")).unwrap();
    let b = std::fs::read(out_b.join("fig2_kicked.csv")).unwrap();
    assert_eq!(a, b);
    // Resolved config in the manifests matches too.
    let man_a: serde_json::Value =
        serde_json::from_slice(&std::fs::read(out_a.join("fig2.manifest.json")).unwrap()).unwrap();
    let man_b: serde_json::Value =
        serde_json::from_slice(&std::fs::read(out_b.join("fig2.manifest.json")).unwrap()).unwrap();
    assert_eq!(man_a["config"], man_b["config"]);
    for dir in [out_a, out_b] {
        std::fs::remove_dir_all(&dir).ok();
    }
}

#[test]
fn perturbed_tolerance_fails_controlled() {
    let out = tmp("forced-fail");
    let output = Command::new(bin())
        .args(["check", "--set", "tol_kick=1e-30", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(4));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("FAIL kick Bessel vs grid mask"), "{stdout}");
    let man: serde_json::Value =
        serde_json::from_slice(&std::fs::read(out.join("check.manifest.json")).unwrap()).unwrap();
    let failed: Vec<&str> = man["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| !c["passed"].as_bool().unwrap())
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(failed, vec!["kick-oracle"]);
    std::fs::remove_dir_all(&out).ok();
}

#[test]
fn fig1_well_counts_in_emitted_grid() {
    let out = tmp("fig1");
    let status = Command::new(bin())
        .args(["fig", "1", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    for (l, wells) in [(2u32, 4usize), (4, 8)] {
        let v = read_column(&out.join(format!("fig1_l{l}.csv")), 2);
        // Count angular wells along the mid-annulus circle from the CSV.
        let n = (v.len() as f64).sqrt() as usize;
        let grid = |ix: usize, iy: usize| v[iy * n + ix];
        let extent = 1.2 * 1.25;
        let rho = 0.875;
        let mut in_well = Vec::new();
        for k in 0..(8 * n) {
            let phi = std::f64::consts::TAU * k as f64 / (8 * n) as f64;
            let ix = (((rho * phi.cos() + extent) / (2.0 * extent) * n as f64) as usize).min(n - 1);
            let iy = (((rho * phi.sin() + extent) / (2.0 * extent) * n as f64) as usize).min(n - 1);
            in_well.push(grid(ix, iy) < -0.5);
        }
        let mut entries = 0;
        for k in 0..in_well.len() {
            if in_well[k] && !in_well[(k + in_well.len() - 1) % in_well.len()] {
                entries += 1;
            }
        }
        assert_eq!(entries, wells, "l = {l}");
    }
    std::fs::remove_dir_all(&out).ok();
}

#[test]
fn farfield_stage_emits_normalized_profile() {
    let out = tmp("farfield");
    let status = Command::new(bin())
        .args(["run", "farfield", "--set", "n_grid=1024", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let prob = read_column(&out.join("run_farfield_profile.csv"), 3);
    let n = prob.len() as f64;
    let norm: f64 = prob.iter().sum::<f64>() * std::f64::consts::TAU / n;
    assert!((norm - 1.0).abs() < 1e-6, "norm {norm}");
    std::fs::remove_dir_all(&out).ok();
}

#[test]
fn free_rotor_band_file() {
    let out = tmp("bands-free");
    let status = Command::new(bin())
        .args(["run", "bands", "--set", "l=2", "--set", "depth=0", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let path = out.join("run_bands.csv");
    let qs = read_column(&path, 0);
    let bands = read_column(&path, 1);
    let energies = read_column(&path, 2);
    // Lowest band energies are the folded free rotor: 4, 1, 0, 1 over
    // q = -2, -1, 0, 1.
    let mut lowest = Vec::new();
    for i in 0..qs.len() {
        if bands[i] == 0.0 {
            lowest.push((qs[i] as i64, energies[i]));
        }
    }
    assert_eq!(lowest, vec![(-2, 4.0), (-1, 1.0), (0, 0.0), (1, 1.0)]);
    std::fs::remove_dir_all(&out).ok();
}

#[test]
fn kick_warns_when_pulse_is_too_long() {
    let out = tmp("rn-warning");
    let output = Command::new(bin())
        .args(["run", "kick", "--set", "tau_phys=0.01", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert!(output.status.success());
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(
        stderr.contains("kinetic phase"),
        "expected phase-mask validity warning, got: {stderr}"
    );
    let man: serde_json::Value =
        serde_json::from_slice(&std::fs::read(out.join("run_kick.manifest.json")).unwrap())
            .unwrap();
    assert!(!man["warnings"].as_array().unwrap().is_empty());
    std::fs::remove_dir_all(&out).ok();
}

#[test]
fn svg_flag_adds_rendered_files() {
    let out = tmp("svg");
    let status = Command::new(bin())
        .args(["fig", "1", "--svg", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let svg = std::fs::read_to_string(out.join("fig1_l2.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    std::fs::remove_dir_all(&out).ok();
}
