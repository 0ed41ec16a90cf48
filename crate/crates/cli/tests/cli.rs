use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn corematch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corematch"))
        .args(args)
        .env_remove("COREMATCH_THREADS")
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn core_of_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    // K4 plus a pendant vertex
    let g = write(dir.path(), "g.edges", "5 7\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n3 4\n");
    let out = corematch(&["core", &g, "-k", "3"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "0\n1\n2\n3\n");

    let out = corematch(&["core", &g, "--numbers"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "0 3\n1 3\n2 3\n3 3\n4 1\n");
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "bad.edges", "3 1\n0 0\n");
    assert_eq!(corematch(&["core", &g]).status.code(), Some(2));
    let missing = dir.path().join("absent.edges");
    assert_eq!(
        corematch(&["core", missing.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn match_on_two_triangles() {
    let dir = tempfile::tempdir().unwrap();
    let g1 = write(dir.path(), "g1.edges", "4 3\n0 1\n0 2\n1 2\n");
    let g2 = write(dir.path(), "g2.edges", "4 3\n1 2\n1 3\n2 3\n");
    let out = corematch(&["match", &g1, &g2, "-k", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pairs"], serde_json::json!([[0, 1], [1, 2], [2, 3]]));
}

#[test]
fn match_beyond_capacity_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.edges", "9 0\n");
    assert_eq!(corematch(&["match", &g, &g, "-k", "1"]).status.code(), Some(2));
}

#[test]
fn sample_then_match_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let model = write(dir.path(), "m.json", r#"{"model":"er","n":6,"p":0.9}"#);
    let out_dir = dir.path().to_str().unwrap();
    let out = corematch(&["sample", "--model", &model, "--s", "1.0", "--seed", "4", "-o", out_dir]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let pi: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("pi_star.json")).unwrap()).unwrap();
    assert_eq!(pi["image"].as_array().unwrap().len(), 6);
    let g1 = dir.path().join("g1.edges");
    let g2 = dir.path().join("g2.edges");
    let out = corematch(&["match", g1.to_str().unwrap(), g2.to_str().unwrap(), "-k", "1"]);
    assert!(out.status.success());
}

#[test]
fn check_exit_codes_follow_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let dense = write(dir.path(), "dense.json", r#"{"model":"er","n":400,"p":0.9}"#);
    let out = corematch(&["check", "--model", &dense, "--s", "1.0", "--condition", "partial"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["condition_name"], "partial_recovery");
    assert_eq!(v[0]["verdict"], "satisfied");

    let sparse = write(dir.path(), "sparse.json", r#"{"model":"er","n":400,"p":0.01}"#);
    let out = corematch(&["check", "--model", &sparse, "--s", "0.5"]);
    assert_eq!(out.status.code(), Some(1));

    let bad = write(dir.path(), "bad.json", r#"{"model":"er","n":4,"p":1.5}"#);
    assert_eq!(corematch(&["check", "--model", &bad, "--s", "0.5"]).status.code(), Some(2));
}

fn sweep_config(dir: &Path, output: &Path) -> String {
    let text = format!(
        r#"{{"model":{{"model":"er","n":80,"p":0.1}},"s":0.9,"k":2,"trials":6,
            "master_seed":99,"mode":"core-size","output_path":{:?},
            "sweep":{{"parameter":"lambda","values":[0.5,1.0,2.0]}}}}"#,
        output.to_str().unwrap()
    );
    write(dir, "sweep.json", &text)
}

#[test]
fn sweep_is_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a.csv");
    let cfg = sweep_config(dir.path(), &out);
    assert!(corematch(&["sweep", &cfg, "--threads", "1"]).status.success());
    let one = (fs::read(&out).unwrap(), fs::read(dir.path().join("a_trials.csv")).unwrap());
    assert!(corematch(&["sweep", &cfg, "--threads", "8"]).status.success());
    let eight = (fs::read(&out).unwrap(), fs::read(dir.path().join("a_trials.csv")).unwrap());
    assert_eq!(one, eight);
    let raw = String::from_utf8(one.1).unwrap();
    assert_eq!(raw.lines().count(), 1 + 3 * 6);
    assert_eq!(String::from_utf8(one.0).unwrap().lines().count(), 1 + 3);
}

#[test]
fn sweep_overrides_and_env_threads() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b.csv");
    let cfg = sweep_config(dir.path(), &out);
    let status = Command::new(env!("CARGO_BIN_EXE_corematch"))
        .args(["sweep", &cfg, "--trials", "2"])
        .env("COREMATCH_THREADS", "3")
        .status()
        .unwrap();
    assert!(status.success());
    let raw = fs::read_to_string(dir.path().join("b_trials.csv")).unwrap();
    assert_eq!(raw.lines().count(), 1 + 3 * 2);

    let status = Command::new(env!("CARGO_BIN_EXE_corematch"))
        .args(["sweep", &cfg])
        .env("COREMATCH_THREADS", "zero")
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));

    assert_eq!(corematch(&["sweep", &cfg, "--trials", "0"]).status.code(), Some(2));
}

#[test]
fn unwritable_output_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing_dir").join("c.csv");
    let cfg = sweep_config(dir.path(), &out);
    assert_eq!(corematch(&["sweep", &cfg, "--trials", "1"]).status.code(), Some(2));
}

#[test]
fn verify_lemmas_report_and_fault() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("lemmas.json");
    let out = corematch(&["verify-lemmas", "-o", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert!(v["checks"].as_array().unwrap().len() >= 8);

    let out = corematch(&[
        "verify-lemmas",
        "-o",
        report.to_str().unwrap(),
        "--inject-fault",
        "dependency_graph_coloring",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    let failed: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, vec!["dependency_graph_coloring"]);
}
