use std::process::{Command, Output};

use serde::de::DeserializeOwned;

use oddpts_cli::reports::{CmOrbitsReport, DegreeReport, DegreesReport, GenusReport, LevelsReport, OrbitsReport};
use oddpts_cli::reproduce::{Scorecard, Status};
use oddpts_core::cm::LevelReduction;
use oddpts_core::entangle::XYReport;
use oddpts_core::gl2::MaximalReport;

fn oddpts(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oddpts"))
        .args(args)
        .env_remove("ODDPTS_CONFIG")
        .env_remove("ODDPTS_CACHE_DIR")
        .output()
        .unwrap()
}

fn json<T: DeserializeOwned>(args: &[&str]) -> T {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = oddpts(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn passthroughs() {
    let g: GenusReport = json(&["genus", "--x1", "21"]);
    assert_eq!(g.genus, 5);
    let g: GenusReport = json(&["modcurve", "genus", "--x0", "64"]);
    assert_eq!(g.genus, 3);
    let d: DegreeReport = json(&["degree", "--from", "50", "--to", "25"]);
    assert_eq!(d.degree, 3);
    let d: DegreeReport = json(&["modcurve", "degree", "--from", "21", "--to-x0"]);
    assert_eq!(d.degree, 6);
    let c: CmOrbitsReport = json(&["cm", "orbits", "--disc", "-163", "--n", "163", "--reduced"]);
    assert_eq!(c.min, Some(81));
    let r: LevelReduction = json(&["cm", "reduce-level", "--disc", "-43", "--n", "1849"]);
    assert_eq!(r.reduced_level, 43);
    let o: OrbitsReport = json(&["gl2", "orbits", "--group", "x1", "--level", "9"]);
    assert_eq!(o.degrees, vec![1, 1, 1, 6, 27]);
    let l: LevelsReport = json(&["modcurve", "allowed-levels", "--j", "3^3*5*7^5/2^7", "--up-to", "50"]);
    assert_eq!(l.levels, vec![1, 2, 7, 14, 49]);
    let x: XYReport = json(&["entangle", "verify"]);
    assert_eq!(x.lifting, 2);
    let d: DegreesReport = json(&["elliptic", "divpoly-degrees", "--curve", "1,-1,0,-107,-379", "--n", "4"]);
    assert_eq!(d.degrees.degrees, vec![6]);
}

#[test]
fn generator_file_group() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("borel3.json");
    std::fs::write(&path, r#"{"level": 3, "generators": [[[1, 1], [0, 1]], [[-1, 0], [0, 1]], [[1, 0], [0, -1]]]}"#).unwrap();
    let o: OrbitsReport = json(&["gl2", "orbits", "--group", path.to_str().unwrap()]);
    assert_eq!(o.degrees, vec![1, 3]);
}

#[test]
fn maximal_subgroups_json() {
    let m: MaximalReport = json(&["gl2", "maximal", "--group", "special-7"]);
    assert_eq!((m.lifted_fingerprint, m.classes.len(), m.max_fingerprint), (483, 8, 357));
}

#[test]
fn json_is_deterministic() {
    for args in [
        &["--format", "json", "entangle", "verify"][..],
        &["--format", "json", "modcurve", "allowed-levels", "--j", "1/3", "--flags", r#"{"isogenies":[15]}"#],
        &["--format", "json", "gl2", "maximal", "--group", "borel", "--level", "3"],
    ] {
        assert_eq!(oddpts(args).stdout, oddpts(args).stdout);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(oddpts(&["genus", "--x1", "11", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(oddpts(&["genus"]).status.code(), Some(2));
    assert_eq!(oddpts(&["cm", "orbits", "--disc", "-5", "--n", "7"]).status.code(), Some(2));
    assert_eq!(oddpts(&["modcurve", "allowed-levels", "--j", "1/3", "--flags", r#"{"isogenies":[23]}"#]).status.code(), Some(2));
    assert_eq!(oddpts(&["cm", "orbits", "--disc", "-3", "--n", "400"]).status.code(), Some(3));
    // too few primes to see every pair
    let out = oddpts(&["gl2", "certify-level", "--group", "special-7", "--bound", "1000"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("oddpts.toml");
    std::fs::write(&cfg, "format = \"json\"\njobs = 2\n").unwrap();
    let c = cfg.to_str().unwrap();
    let out = oddpts(&["--config", c, "genus", "--x1", "13"]);
    let g: GenusReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(g.genus, 2);
    let out = oddpts(&["--config", c, "--format", "text", "genus", "--x1", "13"]);
    assert_eq!(stdout(&out), "genus X1(13) = 2\n");
    std::fs::write(&cfg, "colour = \"blue\"\n").unwrap();
    assert_eq!(oddpts(&["--config", c, "genus", "--x1", "13"]).status.code(), Some(2));
}

#[test]
fn division_polynomial_cache() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_oddpts"))
            .args(["--format", "json", "elliptic", "divpoly-degrees", "--j", "-3^2*5^6/2^3", "--n", "21", "--cap", "9"])
            .env("ODDPTS_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert!(first.status.success());
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    assert_eq!(run().stdout, first.stdout);
    let d: DegreesReport = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(d.degrees.min(), Some(3));
}

#[test]
fn reproduce_fast_and_budget() {
    let out = oddpts(&["--format", "json", "reproduce", "fast"]);
    assert_eq!(out.status.code(), Some(0));
    let s: Scorecard = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((s.passed, s.failed, s.skipped), (7, 0, 0));
    let out = oddpts(&["--format", "json", "reproduce", "fast", "--budget", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let s: Scorecard = serde_json::from_slice(&out.stdout).unwrap();
    assert!(s.checks.iter().all(|c| c.status == Status::Skipped));
}
