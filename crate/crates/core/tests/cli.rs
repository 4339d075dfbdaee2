use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn taukit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_taukit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn error_kind(o: &Output) -> String {
    let v: Value = serde_json::from_slice(&o.stderr).expect("error object on stderr");
    v["error"]["kind"].as_str().unwrap().to_string()
}

#[test]
fn bound_thmub_example() {
    let v = json(&taukit(&["bound", "thmub", "--n", "19", "--k", "7", "--tau", "7", "--json"]));
    assert_eq!(v["name"], "thmub");
    assert_eq!(v["details"]["beta"], "5");
    assert_eq!(v["details"]["density"], "7/13");
    assert_eq!(v["exact"], "7/13");
    assert_eq!(v["params"]["n"], "19");
    let log = v["log_value"].as_f64().unwrap();
    assert!((log - (7f64 / 13.0).ln()).abs() < 1e-12);
}

#[test]
fn construct_g_then_tau() {
    let dir = TempDir::new().unwrap();
    let file = path(&dir, "g.txt");
    let o = taukit(&["construct", "--type", "g", "--ell", "1", "--m", "1", "--f1", "0", "--out", &file]);
    assert!(o.status.success());
    let head = std::fs::read_to_string(&file).unwrap();
    assert!(head.starts_with("19 7 3645\n"));

    let o = taukit(&["tau", &file]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("tau 7\n"), "{}", stdout(&o));
    let v = json(&taukit(&["tau", &file, "--json"]));
    assert_eq!(v["tau"], 7);
    assert_eq!(v["verdict"], "exact");
    assert_eq!(v["cover"].as_array().unwrap().len(), 7);

    let v = json(&taukit(&["tau", &file, "--budget", "6", "--json"]));
    assert_eq!(v["verdict"], "exceeds_budget");

    let o = taukit(&["verify", &file, "--intersecting"]);
    assert!(o.status.success());
    assert_eq!(taukit(&["verify", &file, "--shifted"]).status.code(), Some(1));
}

#[test]
fn oracle_m_example() {
    let v = json(&taukit(&["oracle", "m", "--n", "5", "--k", "2", "--tau", "2", "--json"]));
    assert_eq!(v["m_value"], 3);
    assert_eq!(v["witness"].as_array().unwrap().len(), 3);
    assert!(v.get("wall_time").is_none());
    let o = taukit(&["oracle", "m", "--n", "5", "--k", "2", "--tau", "2"]);
    assert!(stdout(&o).starts_with("m(5,2,2) = 3\n"));
}

#[test]
fn json_output_is_deterministic() {
    for args in [
        &["oracle", "profile", "--n", "7", "--k", "3", "--json"][..],
        &["oracle", "shifted", "--n", "6", "--k", "3", "--t", "2", "--json"][..],
        &["construct", "--type", "el", "--k", "3", "--json"][..],
        &["bound", "mk", "--k", "3", "--json"][..],
    ] {
        let a = taukit(args);
        let b = taukit(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn cli_matches_library() {
    let v = json(&taukit(&["oracle", "profile", "--n", "7", "--k", "3", "--json"]));
    let lib = taukit::oracle::prop1_check(7, 3).unwrap().values();
    let cli: Vec<usize> = v["values"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as usize).collect();
    assert_eq!(cli, lib);

    let v = json(&taukit(&["bound", "hm", "--n", "30", "--k", "6", "--json"]));
    let r = taukit::bounds::hm_bound(30, 6);
    assert_eq!(v["exact"], taukit::bounds::format_rational(r.exact.as_ref().unwrap()));

    let o = taukit(&["construct", "--type", "a", "--n", "12", "--k", "4", "--t", "2"]);
    let f = taukit::constructions::a_family(taukit::constructions::ATParams::new(12, 4, 2).unwrap()).unwrap();
    assert_eq!(stdout(&o), taukit::cli::family_to_string(&f));
}

#[test]
fn shift_commands() {
    let dir = TempDir::new().unwrap();
    let file = path(&dir, "f.txt");
    std::fs::write(&file, "4 2 2\n2 3\n2 4\n").unwrap();
    let o = taukit(&["shift", &file, "--pair", "1", "2"]);
    assert_eq!(stdout(&o), "4 2 2\n1 3\n1 4\n");
    let out = path(&dir, "s.txt");
    let o = taukit(&["shift", &file, "--full", "--out", &out]);
    assert!(o.status.success());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "4 2 2\n1 2\n1 3\n");
    assert!(taukit(&["verify", &out, "--shifted", "--intersecting"]).status.success());
    // --pair and --full are exclusive.
    assert_eq!(taukit(&["shift", &file, "--full", "--pair", "1", "2"]).status.code(), Some(2));
}

#[test]
fn exit_codes_and_error_objects() {
    let dir = TempDir::new().unwrap();
    let bad = path(&dir, "bad.txt");
    std::fs::write(&bad, "4 2 1\n1 7\n").unwrap();
    let o = taukit(&["verify", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_kind(&o), "invalid_family");

    let o = taukit(&["oracle", "m", "--n", "9", "--k", "4", "--tau", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(error_kind(&o), "guard_exceeded");

    let o = taukit(&["bound", "thmub", "--n", "19", "--k", "7", "--tau", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_kind(&o), "inapplicable");

    let o = taukit(&["construct", "--type", "a", "--n", "7", "--k", "4", "--t", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_kind(&o), "precondition");

    let missing = dir.path().join("nope.txt");
    let o = taukit(&["tau", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_kind(&o), "io");

    assert_eq!(taukit(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(taukit(&["--help"]).status.code(), Some(0));
}

#[test]
fn sweep_writes_csv() {
    let dir = TempDir::new().unwrap();
    let csv = path(&dir, "sweep.csv");
    let o = taukit(&["sweep", "--grid", "n=19;k=7;tau=5..7", "--csv", &csv]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(Path::new(&csv)).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], taukit::cli::SWEEP_HEADER);
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("19,7,5,") && lines[1].ends_with(",,false"));
    assert!(lines[3].starts_with("19,7,7,3645,G(l=1,m=1,f1=0),") && lines[3].ends_with(",true"));
}
