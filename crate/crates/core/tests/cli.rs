//! End-to-end tests of the `laplaceqm` binary: output formats, exit
//! codes, determinism, and the point-budget environment variable.

use std::fs;
use std::process::Command;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_laplaceqm"));
    // keep an ambient budget override from leaking into the tests
    cmd.env_remove("BROMWICH_POINT_BUDGET");
    cmd
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn solve_emits_json_record() {
    let (code, stdout, _) = run(&["solve", "--oscillator", "harmonic", "--n", "2"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).expect("stdout is JSON");
    assert_eq!(doc["n"], 2);
    assert_eq!(doc["energy"]["natural"], 2.5);
    assert_eq!(doc["spectrum"]["kind"], "unbounded");
    assert_eq!(doc["poles"][0]["location"], 0.0);
    assert_eq!(doc["poles"][0]["order"], 3);
    assert!(doc["boundary_free"]["obstruction"]
        .as_str()
        .unwrap()
        .contains("not rational"));
}

#[test]
fn solve_morse_json_values() {
    let (code, stdout, _) = run(&["solve", "--oscillator", "morse", "--c", "3", "--n", "1"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["boundary"]["v0"], 4.0);
    assert_eq!(doc["boundary"]["v0_prime"], -3.0);
    assert_eq!(doc["energy"]["natural"], -2.25);
    assert_eq!(doc["spectrum"]["count"], 3);
    let norm = doc["norm_squared"].as_f64().unwrap();
    assert!((norm - 8.0).abs() < 1e-9);
}

#[test]
fn solve_tabulates_wavefunction_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("psi.csv");
    let path_str = path.to_str().unwrap();
    let args = [
        "solve",
        "--oscillator",
        "poschl-teller",
        "--ell",
        "2",
        "--psi-csv",
        path_str,
        "--x-min",
        "-4",
        "--x-max",
        "4",
        "--points",
        "81",
    ];
    let (code, _, _) = run(&args);
    assert_eq!(code, 0);
    let first = fs::read(&path).unwrap();
    let text = String::from_utf8(first.clone()).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,xi,psi"));
    assert_eq!(text.lines().count(), 82);
    for line in lines {
        for field in line.split(',') {
            let x: f64 = field.parse().expect("numeric field");
            assert!(x.is_finite());
        }
    }
    let (code, _, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(first, fs::read(&path).unwrap(), "reruns are bit-identical");
}

#[test]
fn exit_codes_for_bad_input_and_empty_spectra() {
    // a well too shallow to bind anything
    let (code, _, stderr) = run(&["solve", "--oscillator", "morse", "--c", "0.3"]);
    assert_eq!(code, 3);
    assert!(stderr.contains("no bound states"));
    // missing strength
    let (code, _, _) = run(&["solve", "--oscillator", "morse"]);
    assert_eq!(code, 2);
    // contradictory strength
    let (code, _, _) = run(&[
        "solve",
        "--oscillator",
        "morse",
        "--c",
        "3",
        "--depth",
        "4.5",
    ]);
    assert_eq!(code, 2);
    // parameter for the wrong well
    let (code, _, _) = run(&["solve", "--oscillator", "harmonic", "--c", "1"]);
    assert_eq!(code, 2);
    // malformed flags are clap's job, also exit 2
    let (code, _, _) = run(&["solve", "--oscillator", "unheard-of"]);
    assert_eq!(code, 2);
    // quantum number outside the spectrum
    let (code, _, stderr) = run(&["solve", "--oscillator", "poschl-teller", "--ell", "2", "--n", "7"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("n = 7"));
}

#[test]
fn verify_passes_everything() {
    let (code, stdout, _) = run(&["verify"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("10 of 10 checks passed"));
    assert_eq!(stdout.matches("PASS").count(), 10);
    assert!(!stdout.contains("FAIL"));
}

#[test]
fn verify_json_report() {
    let (code, stdout, _) = run(&["verify", "--json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["all_passed"], true);
    assert_eq!(doc["checks"].as_array().unwrap().len(), 10);
    assert_eq!(doc["states_checked"], 6);
}

#[test]
fn verify_fault_injection_fails_the_equation_check() {
    let (code, stdout, _) = run(&[
        "verify",
        "--check",
        "s-ode-residual",
        "--perturb-v0",
        "1e-6",
    ]);
    assert_eq!(code, 1);
    assert!(stdout.contains("FAIL s-ode-residual"));
    assert!(stdout.contains("0 of 1 checks passed"));
}

#[test]
fn verify_rejects_unknown_check_names() {
    let (code, _, stderr) = run(&["verify", "--check", "does-not-exist"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("valid names"));
}

#[test]
fn verify_list_and_filters() {
    let (code, stdout, _) = run(&["verify", "--list"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().count(), 10);
    // filtering to one state still runs the table-driven checks
    let (code, stdout, _) = run(&["verify", "--oscillator", "morse", "--n", "1", "--check", "table-roundtrip"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("1 states"));
    // filters that match nothing are an input error
    let (code, _, _) = run(&["verify", "--oscillator", "harmonic", "--n", "5"]);
    assert_eq!(code, 2);
}

#[test]
fn pathology_writes_stable_csv_and_svg() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for dir in [&dir_a, &dir_b] {
        let (code, stdout, _) = run(&[
            "pathology",
            "--gamma",
            "20",
            "--fig",
            "a",
            "--periods",
            "3",
            "--out-dir",
            dir.path().to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        assert!(stdout.contains("plateau estimate"));
        let csv = fs::read(dir.path().join("pathology_profile.csv")).unwrap();
        let svg = fs::read_to_string(dir.path().join("pathology_profile.svg")).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("polyline"));
        let text = String::from_utf8(csv.clone()).unwrap();
        assert!(text.starts_with("gamma,xi,gamma_xi_over_2pi,xi_over_gamma,g,abs_g\n"));
        outputs.push(csv);
    }
    assert_eq!(outputs[0], outputs[1], "profile CSV is bit-stable across runs");
}

#[test]
fn pathology_envelope_view() {
    let dir = tempfile::tempdir().unwrap();
    let (code, stdout, _) = run(&[
        "pathology",
        "--gamma",
        "20",
        "--fig",
        "b",
        "--xi-over-gamma-max",
        "0.3",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("peak heights"));
    let text = fs::read_to_string(dir.path().join("pathology_envelope.csv")).unwrap();
    assert!(text.starts_with("gamma,w,envelope,model\n"));
    // 6 sample rows: w = 0.05 .. 0.30
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn pathology_rejects_out_of_range_gamma() {
    let (code, _, stderr) = run(&["pathology", "--gamma", "5"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("gamma"));
}

#[test]
fn point_budget_env_var_caps_grids() {
    let out = bin()
        .args(["pathology", "--gamma", "20", "--fig", "a", "--periods", "3"])
        .env("BROMWICH_POINT_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    // unparseable values fall back to the default instead of crashing
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args([
            "pathology",
            "--gamma",
            "20",
            "--fig",
            "a",
            "--periods",
            "3",
            "--out-dir",
            dir.path().to_str().unwrap(),
        ])
        .env("BROMWICH_POINT_BUDGET", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn figure_presets_write_canonical_files() {
    let dir = tempfile::tempdir().unwrap();
    let (code, stdout, _) = run(&[
        "figure",
        "--which",
        "1a",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(dir.path().join("figure1a.csv").exists());
    assert!(dir.path().join("figure1a.svg").exists());
    // all three canonical truncation heights reported
    for gamma in ["gamma = 50", "gamma = 100", "gamma = 200"] {
        assert!(stdout.contains(gamma), "missing {gamma}");
    }
}
