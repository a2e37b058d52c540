use std::path::PathBuf;
use std::process::{Command, Output};

fn ym2d(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ym2d")).args(args).env_remove("YM2D_CONFIG").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn docs(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "docs", "examples", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("ym2d-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn irrep_table_for_su2() {
    let o = ym2d(&["irrep", "--group", "su2", "--cutoff", "10"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(&lines[..4], &["m,dim,c2", "0,1,0", "1,2,1.5", "2,3,4"]);
    // m(m+2)/2 ≤ 10 keeps m ≤ 3
    assert_eq!(lines.len(), 5);
}

#[test]
fn irrep_characters_match_closed_form() {
    let o = ym2d(&["irrep", "--cutoff", "12", "--at", "0.4", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for row in rows.as_array().unwrap() {
        let m = row["weight"][0].as_u64().unwrap() as f64;
        let chi = ((m + 1.0) * 0.4).sin() / 0.4f64.sin();
        assert!((row["character"][0].as_f64().unwrap() - chi).abs() < 1e-12);
    }
}

#[test]
fn sphere_reduces_to_dimension_sum() {
    let o = ym2d(&["surface", &docs("sphere.json"), "--area", "1.0", "--format", "json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let expect: f64 = (0..9).map(|m: i32| ((m + 1) * (m + 1)) as f64 * (-(m * (m + 2)) as f64 / 2.0).exp()).sum();
    assert!((v["value"][0][0].as_f64().unwrap() - expect).abs() < 1e-12);
}

#[test]
fn every_example_surface_evaluates() {
    for name in ["sphere.json", "torus.json", "disc.json", "cylinder.json", "sphere-with-loop.json"] {
        let o = ym2d(&["surface", &docs(name)]);
        assert!(o.status.success(), "{name}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn malformed_surface_reports_line() {
    let path = scratch("bad.json", "{\n  \"regions\": [],\n  \"edges\": [],\n  \"colour\": 1\n}\n");
    let o = ym2d(&["surface", &path]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("schema error") && err.contains("line 4"), "{err}");
}

#[test]
fn usage_and_config_errors() {
    assert_eq!(ym2d(&["irrep", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(ym2d(&["--fd-step", "0.5", "irrep"]).status.code(), Some(2));
    assert_eq!(ym2d(&["--resolution", "4", "irrep"]).status.code(), Some(2));
    assert_eq!(ym2d(&["--cutoff", "0", "irrep"]).status.code(), Some(2));
    assert_eq!(ym2d(&["verify", "nope"]).status.code(), Some(2));
}

#[test]
fn config_file_from_environment() {
    let path = scratch("cfg.toml", "cutoff = 2.0\nformat = \"csv\"\n");
    let run = |extra: &[&str]| {
        let o = Command::new(env!("CARGO_BIN_EXE_ym2d")).args(extra).arg("irrep").env("YM2D_CONFIG", &path).output().unwrap();
        stdout(&o)
    };
    assert_eq!(run(&[]).lines().count(), 3);
    assert_eq!(run(&["--cutoff", "10"]).lines().count(), 5);
    let bad = scratch("bad.toml", "cutof = 2.0\n");
    let o = Command::new(env!("CARGO_BIN_EXE_ym2d")).arg("irrep").env("YM2D_CONFIG", &bad).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_haar_passes_with_defaults() {
    let o = ym2d(&["verify", "haar"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let records = v["records"].as_array().unwrap();
    assert!(!records.is_empty());
    for r in records {
        for key in ["config", "step", "residual", "tolerance", "pass"] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
        assert!(r["residual"].as_f64().unwrap() <= 1e-6);
        assert_eq!(r["pass"], true);
    }
}

#[test]
fn verify_exit_status_tracks_tolerance() {
    assert_eq!(ym2d(&["verify", "rmatrix"]).status.code(), Some(0));
    let o = ym2d(&["--tolerance", "0", "verify", "rmatrix", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("suite,check,config,step,residual,tolerance,pass\n"));
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        &["verify", "eigen"][..],
        &["--threads", "2", "propagate", "--spins", "1,2", "--areas", "0.4,0.6", "--points", "2"],
        &["observables", "--format", "json"],
        &["surface", &docs("cylinder.json")],
    ] {
        let (a, b) = (ym2d(args), ym2d(args));
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let one = ym2d(&["--threads", "1", "verify", "orthogonality"]);
    let many = ym2d(&["--threads", "4", "verify", "orthogonality"]);
    assert_eq!(one.stdout, many.stdout);
    assert_ne!(ym2d(&["--seed", "1", "propagate", "--spins", "1,1"]).stdout, ym2d(&["--seed", "2", "propagate", "--spins", "1,1"]).stdout);
}

#[test]
fn propagate_integral_agrees() {
    let o = ym2d(&["propagate", "--spins", "2", "--areas", "0.5", "--integral", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["samples"][0]["difference"].as_f64().unwrap() < 1e-3);
    assert_eq!(v["dim"], 3);
}

#[test]
fn observables_are_exact() {
    let o = ym2d(&["observables", "--area-a", "3/10", "--area-b", "7/10"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}
