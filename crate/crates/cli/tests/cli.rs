use std::f64::consts::PI;
use std::io::Write;

use mayer_cli::{parse_shape, run, Report, EXIT_OK, EXIT_USAGE};
use mayer_core::spectral::{ring_integral, SpectralKernel};

fn mayer(args: &[&str]) -> mayer_cli::Outcome {
    run(std::iter::once("mayer").chain(args.iter().copied()))
}

fn report(args: &[&str]) -> Report {
    let out = mayer(args);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    serde_json::from_str(&out.stdout).expect("json report")
}

#[test]
fn kinematic_b2_of_unit_diameter_spheres() {
    let r = report(&["b2", "--shape", "ball:r=0.5", "--method", "kinematic"]);
    assert_eq!(r.command, "b2");
    assert!((r.value - 2.0 * PI / 3.0).abs() < 1e-12);
    assert!(r.stderr.is_none());
}

#[test]
fn b2_routes_agree() {
    let kin = report(&["b2", "--shape", "ball:r=0.3", "--shape2", "ball:r=0.7"]).value;
    let fourier = report(&["b2", "--shape", "ball:r=0.3", "--shape2", "ball:r=0.7", "--method", "fourier"]).value;
    assert!((kin - fourier).abs() < 1e-10 * kin);
    let mc = report(&[
        "b2", "--shape", "ball:r=0.3", "--shape2", "ball:r=0.7", "--method", "mc", "--samples", "20000", "--seed", "3",
    ]);
    let se = mc.stderr.unwrap();
    assert!((mc.value - kin).abs() <= 3.0 * se + 1e-12 * kin, "{} ± {se} vs {kin}", mc.value);
}

#[test]
fn negative_radius_is_a_usage_error_naming_the_token() {
    let out = mayer(&["b2", "--shape", "ball:r=-1"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("r=-1"), "{}", out.stderr);
    assert!(out.stdout.is_empty());
}

#[test]
fn shape_grammar() {
    assert_eq!(parse_shape("ball:r=0.5").unwrap().radius(), 0.5);
    assert_eq!(parse_shape("disk:r=1").unwrap().dim(), 2);
    let rod = parse_shape("spherocylinder:r=0.5,l=2").unwrap();
    assert_eq!((rod.radius(), rod.length()), (0.5, 2.0));
    for bad in ["cube:a=1", "ball:r=0", "ball", "ball:r=abc", "spherocylinder:r=1"] {
        assert!(parse_shape(bad).is_err(), "{bad}");
    }
}

#[test]
fn unknown_subcommand_and_missing_flags_exit_with_usage() {
    assert_eq!(mayer(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(mayer(&["ring"]).code, EXIT_USAGE);
    assert_eq!(mayer(&["virial", "--order", "7", "--samples", "10"]).code, EXIT_USAGE);
    assert_eq!(mayer(&["b2", "--samples", "lots"]).code, EXIT_USAGE);
    assert_eq!(mayer(&["ring", "--m", "4", "--shape", "spherocylinder:r=0.5,l=1"]).code, EXIT_USAGE);
}

#[test]
fn verify_decomposition_succeeds() {
    let out = mayer(&["verify", "--suite", "decomposition"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let r: Report = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(r.value, 0.0);
    assert!(r.details.unwrap()["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn json_value_round_trips_exactly() {
    let r = report(&["ring", "--m", "4"]);
    let direct = ring_integral(4, &SpectralKernel::spheres(1.0).unwrap()).unwrap();
    assert_eq!(r.value.to_bits(), direct.to_bits());
    let again: Report = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(again, r);
}

#[test]
fn monte_carlo_runs_are_reproducible() {
    let args = ["virial", "--order", "3", "--samples", "50000", "--seed", "9", "--workers", "2"];
    let mut a = report(&args);
    let mut b = report(&args);
    a.runtime_ms = 0.0;
    b.runtime_ms = 0.0;
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert_eq!(a.samples, Some(50000));
    assert_eq!(a.seed, Some(9));
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = std::env::temp_dir().join(format!("mayer-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.json");
    let mut f = std::fs::File::create(&path).unwrap();
    write!(f, r#"{{"shape": "ball:r=1", "method": "fourier", "out": "json"}}"#).unwrap();
    let p = path.to_str().unwrap();
    let from_file = report(&["b2", "--config", p]);
    assert_eq!(from_file.method, "fourier");
    assert!((from_file.value - 16.0 * PI / 3.0).abs() < 1e-10);
    let overridden = report(&["b2", "--config", p, "--shape", "ball:r=0.5"]);
    assert!((overridden.value - 2.0 * PI / 3.0).abs() < 1e-10);

    std::fs::write(&path, r#"{"shape": "ball:r=1", "colour": "red"}"#).unwrap();
    assert_eq!(mayer(&["b2", "--config", p]).code, EXIT_USAGE);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn graphs_lists_star_counts() {
    let r = report(&["graphs", "--order", "4"]);
    let details = r.details.unwrap();
    assert_eq!(r.value, 3.0);
    assert_eq!(details["labeled_total"], 10);
}

#[test]
fn csv_and_text_outputs() {
    let csv = mayer(&["b2", "--out", "csv"]);
    assert_eq!(csv.code, EXIT_OK);
    let mut lines = csv.stdout.lines();
    assert!(lines.next().unwrap().starts_with("command,method,value"));
    assert!(lines.next().unwrap().starts_with("b2,kinematic,2.094395"));
    let text = mayer(&["ring", "--m", "3", "--out", "text"]);
    assert!(text.stdout.contains("value: "));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_mayer");
    let ok = std::process::Command::new(bin).args(["b2", "--out", "text"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("2.0943951"));
    let bad = std::process::Command::new(bin).args(["b2", "--shape", "ball:r=-1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("r=-1"));
}
