use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};
use tempfile::TempDir;

use hhsim_cli::config::RunConfig;
use hhsim_cli::error::{EXIT_IO, EXIT_NUMERIC, EXIT_USAGE};

fn hhsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hhsim")).args(args).output().expect("binary runs")
}

fn hhsim_in(dir: &Path, args: &[&str]) -> Output {
    let mut all = vec!["--out", dir.to_str().unwrap()];
    all.extend_from_slice(args);
    hhsim(&all)
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

/// The JSON record on the last stderr line.
fn error_record(o: &Output) -> Value {
    let err = String::from_utf8_lossy(&o.stderr);
    serde_json::from_str(err.lines().last().expect("stderr has a record")).expect("record is JSON")
}

fn manifest(dir: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap()
}

fn write_config(dir: &Path, text: &str) -> String {
    let p = dir.join("run.toml");
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const SMALL_PAIR: &[&str] = &["pair", "--u-min", "-10", "--u-max", "2", "--u-points", "13"];

#[test]
fn identical_runs_give_identical_digests() {
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    for d in [&a, &b] {
        assert_eq!(code(&hhsim_in(d.path(), SMALL_PAIR)), 0);
    }
    let (ma, mb) = (manifest(a.path()), manifest(b.path()));
    assert_eq!(ma, mb);
    assert_eq!(fs::read(a.path().join("manifest.json")).unwrap(), fs::read(b.path().join("manifest.json")).unwrap());
}

#[test]
fn manifest_digests_match_files() {
    let d = TempDir::new().unwrap();
    assert_eq!(code(&hhsim_in(d.path(), &["binding", "--lambda-max", "1.5"])), 0);
    let m = manifest(d.path());
    assert_eq!(m["command"], "binding");
    let files = m["files"].as_array().unwrap();
    let names: Vec<&str> = files.iter().map(|f| f["path"].as_str().unwrap()).collect();
    assert_eq!(names, ["binding_diagonal.csv", "binding_main.csv", "binding_physical.csv", "binding_summary.json"]);
    for f in files {
        let bytes = fs::read(d.path().join(f["path"].as_str().unwrap())).unwrap();
        assert_eq!(f["bytes"].as_u64().unwrap() as usize, bytes.len());
        assert_eq!(f["sha256"].as_str().unwrap(), hex::encode(Sha256::digest(&bytes)));
    }
}

#[test]
fn csv_tables_have_headers_and_uniform_rows() {
    let d = TempDir::new().unwrap();
    assert_eq!(code(&hhsim_in(d.path(), &["stark", "--lambda-min", "765", "--lambda-max", "795", "--step", "0.5"])), 0);
    let text = fs::read_to_string(d.path().join("stark.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "species,wavelength_nm,v_nk");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 2 * 61);
    assert!(rows.iter().all(|r| r.split(',').count() == 3));
    let zeros: Value = serde_json::from_str(&fs::read_to_string(d.path().join("stark_zeros.json")).unwrap()).unwrap();
    let k = zeros["zeros"][0]["zero_nm"].as_f64().unwrap();
    assert!((k - 768.97).abs() < 0.05, "{k}");
}

#[test]
fn json_format_writes_row_objects() {
    let d = TempDir::new().unwrap();
    assert_eq!(code(&hhsim_in(d.path(), &["--format", "serialized-records", "pair", "--u-points", "5"])), 0);
    let t: Value = serde_json::from_str(&fs::read_to_string(d.path().join("pair_energies.json")).unwrap()).unwrap();
    assert_eq!(t["columns"][0], "u");
    assert!(t["rows"][0]["energy"].as_f64().unwrap() < -8.0);
    assert_eq!(manifest(d.path())["format"], "json");
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let o = hhsim(&["frobnicate"]);
    assert_eq!(code(&o), EXIT_USAGE as i32);
    assert_ne!(EXIT_USAGE, EXIT_NUMERIC);
    assert_eq!(error_record(&o)["error"], "usage");
}

#[test]
fn missing_subcommand_is_a_usage_error() {
    let d = TempDir::new().unwrap();
    assert_eq!(code(&hhsim_in(d.path(), &[])), EXIT_USAGE as i32);
}

#[test]
fn config_parse_error_reports_position() {
    let d = TempDir::new().unwrap();
    let cfg = write_config(d.path(), "subcommand = \"pair\"\n[pair]\nt_prime = 1.0\nfoo = 2\n");
    let o = hhsim_in(&d.path().join("out"), &["--config", &cfg]);
    assert_eq!(code(&o), EXIT_USAGE as i32);
    let r = error_record(&o);
    assert_eq!(r["error"], "config-parse");
    assert_eq!(r["line"], 4);
    assert_eq!(r["column"], 1);
}

#[test]
fn config_violations_are_all_reported() {
    let d = TempDir::new().unwrap();
    let cfg = write_config(d.path(), "[lattice]\na = 0.0\n[phase]\nn_b = 1.5\ntemperature = -1.0\n");
    let o = hhsim_in(&d.path().join("out"), &["--config", &cfg, "phase"]);
    assert_eq!(code(&o), EXIT_USAGE as i32);
    let r = error_record(&o);
    assert_eq!(r["error"], "config-invalid");
    let v = r["violations"].as_array().unwrap();
    assert!(v.len() >= 3, "{v:?}");
    assert!(!d.path().join("out").exists());
}

#[test]
fn flag_values_are_validated_like_config() {
    let d = TempDir::new().unwrap();
    let o = hhsim_in(d.path(), &["pair", "--t-prime", "-1"]);
    assert_eq!(code(&o), EXIT_USAGE as i32);
    assert_eq!(error_record(&o)["violations"][0], "pair.t_prime: must be positive and finite, got -1");
}

#[test]
fn subcommand_can_come_from_config() {
    let d = TempDir::new().unwrap();
    let cfg = write_config(d.path(), "subcommand = \"oracle\"\n[oracle]\nsizes = [8, 10, 12]\nn_states = 2\n");
    let out = d.path().join("out");
    assert_eq!(code(&hhsim_in(&out, &["--config", &cfg])), 0);
    assert_eq!(manifest(&out)["command"], "oracle");
    let x = fs::read_to_string(out.join("oracle_extrapolation.csv")).unwrap();
    assert_eq!(x.lines().count(), 3);
}

#[test]
fn flags_override_config_values() {
    let d = TempDir::new().unwrap();
    let cfg = write_config(d.path(), "[pair]\nu_points = 3\n");
    let out = d.path().join("out");
    assert_eq!(
        code(&hhsim_in(&out, &["--config", &cfg, "pair", "--u-points", "2", "--u-min", "-12", "--u-max", "-10"])),
        0
    );
    let t = fs::read_to_string(out.join("pair_energies.csv")).unwrap();
    let us: Vec<&str> = t.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert!(us.iter().all(|u| *u == "-12" || *u == "-10"), "{us:?}");
}

#[test]
fn unwritable_output_is_an_io_error() {
    let d = TempDir::new().unwrap();
    let file = d.path().join("plain");
    fs::write(&file, "x").unwrap();
    let o = hhsim_in(&file.join("sub"), &["binding"]);
    assert_eq!(code(&o), EXIT_IO as i32);
    assert_eq!(error_record(&o)["error"], "io");
}

#[test]
fn explain_defaults_prints_table() {
    let o = hhsim(&["--explain-defaults"]);
    assert_eq!(code(&o), 0);
    let s = String::from_utf8_lossy(&o.stdout);
    assert!(s.contains("rydberg.r_c") && s.contains("0.1 a"));
}

#[test]
fn zero_threads_rejected() {
    let d = TempDir::new().unwrap();
    assert_eq!(code(&hhsim_in(d.path(), &["--threads", "0", "pair"])), EXIT_USAGE as i32);
}

#[test]
fn numeric_failures_map_to_their_own_code() {
    // Config validation normally rules this out; build the config directly.
    let mut cfg = RunConfig::default();
    cfg.apply_defaults();
    cfg.pattern.d = 0.4;
    let err = hhsim_cli::commands::phonon(&cfg).unwrap_err();
    assert_eq!(err.exit_code(), EXIT_NUMERIC);
    assert_eq!(err.record()["error"], "numeric");
}

#[test]
fn phase_grid_and_contour_are_written() {
    let d = TempDir::new().unwrap();
    let args = ["phase", "--v0-points", "5", "--lambda-points", "9", "--lambda-max", "3"];
    assert_eq!(code(&hhsim_in(d.path(), &args)), 0);
    let grid = fs::read_to_string(d.path().join("phase_grid.csv")).unwrap();
    assert_eq!(grid.lines().count(), 1 + 5 * 9);
    let s: Value = serde_json::from_str(&fs::read_to_string(d.path().join("phase_summary.json")).unwrap()).unwrap();
    assert_eq!(s["failed_points"], 0);
    assert!(d.path().join("phase_contour.csv").exists());
}

#[test]
fn figures_all_writes_every_bundle() {
    let d = TempDir::new().unwrap();
    let cfg = write_config(
        d.path(),
        "[phase]\nv0_points = 5\nlambda_points = 7\n[oracle]\nsizes = [8, 10, 12]\n[params]\nv0_points = 5\n",
    );
    let out = d.path().join("out");
    let o = hhsim_in(&out, &["--config", &cfg, "figures", "all"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    for dir in ["fig2", "fig3", "fig4", "fig5", "fig6", "appendix"] {
        assert!(out.join(dir).is_dir(), "{dir}");
    }
    let m = manifest(&out);
    let paths: Vec<&str> = m["files"].as_array().unwrap().iter().map(|f| f["path"].as_str().unwrap()).collect();
    assert!(paths.contains(&"fig3/phi_map_crossed.csv"));
    assert!(paths.contains(&"fig6/phase_grid.csv"));
    assert!(paths.contains(&"appendix/oracle_u_m8_extrapolation.csv"));
    assert_eq!(paths.iter().filter(|p| p.starts_with("fig3/phi_map_")).count(), 6);
}

#[test]
fn single_figure_target() {
    let d = TempDir::new().unwrap();
    assert_eq!(code(&hhsim_in(d.path(), &["figures", "fig2"])), 0);
    assert!(d.path().join("fig2/stark.csv").exists());
    assert!(!d.path().join("fig3").exists());
}
