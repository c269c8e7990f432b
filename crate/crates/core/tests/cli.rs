use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const TWO_NODE: &str = r#"{
    "n": 2,
    "coupling": [[0, 1], [1, 0]],
    "g": [1, 0],
    "xi0": [0.5, -0.3],
    "t_max": 2,
    "record_every": 10
}"#;

fn kpace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kpace")).args(args).output().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn read(path: &Path) -> String {
    fs::read_to_string(path).unwrap()
}

#[test]
fn simulate_writes_trajectory_csv() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "two_node.json", TWO_NODE);
    let out = dir.path().join("t.csv");
    let res = kpace(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap(), "--quiet"]);
    assert_eq!(res.status.code(), Some(0));
    let text = read(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,xi_1,xi_2,zeta_1,zeta_2,r"));
    // samples at 0, 0.1, …, 2.0
    assert_eq!(lines.count(), 21);
    assert!(text.ends_with('\n'));
}

#[test]
fn simulate_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "rand.json", r#"{"n": 4, "g": [1, 0, 0, 0], "t_max": 3, "record_every": 50}"#);
    let a = kpace(&["simulate", "--config", &cfg, "--seed", "9"]);
    let b = kpace(&["simulate", "--config", &cfg, "--seed", "9"]);
    let c = kpace(&["simulate", "--config", &cfg, "--seed", "10"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn bounds_lists_all_four() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "two_node.json", TWO_NODE);
    let out = dir.path().join("b.csv");
    let res = kpace(&["bounds", "--config", &cfg, "--out", out.to_str().unwrap(), "--quiet"]);
    assert_eq!(res.status.code(), Some(0));
    let text = read(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "kind,epsilon,value,valid,margin,binding_term");
    assert_eq!(rows.len(), 5);
    // ε = 0.5 sits in the first and third regimes only
    assert!(rows[1].starts_with("alpha1,0.5,") && rows[1].contains(",true,"));
    assert!(rows[2].ends_with("out_of_regime"));

    let only = kpace(&["bounds", "--config", &cfg, "--bound", "alpha3"]);
    let stdout = String::from_utf8(only.stdout).unwrap();
    assert!(stdout.contains("alpha3") && !stdout.contains("alpha1"));
}

#[test]
fn check_reports_verdicts() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "two_node.json", TWO_NODE);
    let res = kpace(&["check", "--config", &cfg, "--epsilon", "2.0"]);
    assert_eq!(res.status.code(), Some(0));
    let stdout = String::from_utf8(res.stdout).unwrap();
    // g_min = 0 cannot satisfy the wide-range threshold
    assert!(stdout.contains("synchronization") && stdout.contains("false"));
}

#[test]
fn sweep_and_trap_tables() {
    let dir = TempDir::new().unwrap();
    let sweep = write(
        &dir,
        "sweep.json",
        r#"{"kind": "sync_sweep", "n": 4, "g": [1, 0, 0, 0], "multipliers": [1, 2], "runs": 3, "t_max": 50}"#,
    );
    let res = kpace(&["sweep", "--config", &sweep, "--quiet"]);
    assert_eq!(res.status.code(), Some(0));
    let stdout = String::from_utf8(res.stdout).unwrap();
    assert!(stdout.starts_with("multiplier,mean_time,std_time,timeouts\n"));
    assert_eq!(stdout.lines().count(), 3);

    let trap = write(
        &dir,
        "trap.json",
        r#"{"kind": "trapping", "n": 3, "g": [1, 1, 1], "w": {"uniform": [0, 1]},
            "multipliers": [1, 2], "runs": 2, "t_max": 20, "record_every": 100}"#,
    );
    let res = kpace(&["trap", "--config", &trap, "--quiet"]);
    assert_eq!(res.status.code(), Some(0));
    assert!(String::from_utf8(res.stdout).unwrap().starts_with("multiplier,max_final_relative_phase\n"));

    // a trapping config is not a sweep
    assert_eq!(kpace(&["sweep", "--config", &trap]).status.code(), Some(1));
}

#[test]
fn config_errors_name_the_field() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"n": 2, "g": [1, -1]}"#);
    let res = kpace(&["simulate", "--config", &bad]);
    assert_eq!(res.status.code(), Some(1));
    assert!(String::from_utf8(res.stderr).unwrap().contains("g"));

    let unknown = write(&dir, "unknown.json", r#"{"colour": 3}"#);
    let res = kpace(&["simulate", "--config", &unknown]);
    assert_eq!(res.status.code(), Some(1));
    assert!(String::from_utf8(res.stderr).unwrap().contains("colour"));

    assert_eq!(kpace(&["simulate", "--config", "/nonexistent/x.json"]).status.code(), Some(1));
    assert_eq!(kpace(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(kpace(&["--help"]).status.code(), Some(0));
}

#[test]
fn divergence_exits_with_numerical_code() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "stiff.json",
        r#"{"n": 1, "coupling": [[0]], "g": [1e7], "xi0": [1.0], "dt": 1, "t_max": 10}"#,
    );
    let res = kpace(&["simulate", "--config", &cfg]);
    assert_eq!(res.status.code(), Some(2));
}
