use std::process::{Command, Output};

fn delzant(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_delzant"))
        .args(args)
        .env_remove("DELZANT_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = delzant(args);
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn count_theta_level_two() {
    let v = json(&["count", "--theta", "--level", "2", "--mode", "parity"]);
    assert_eq!(v["count"], 10);
    assert_eq!(v["oracle_closed_form"], 10);
    assert_eq!(v["oracle_fusion"], 10);
    assert_eq!(v["matches_closed_form"], true);
}

#[test]
fn raw_count_is_flagged() {
    let v = json(&["count", "--theta", "--level", "1", "--mode", "raw"]);
    assert_eq!(v["count"], 11);
    assert_eq!(v["matches_closed_form"], false);
    assert!(v["note"].is_string());
}

#[test]
fn multi_theta_three_vertex_list() {
    let v = json(&["polytope", "--multi-theta", "3", "--vrep"]);
    assert_eq!(v["dim"], 6);
    // Eight cycle-space points plus two half-integral vertices.
    assert_eq!(v["vertex_count"], 10);
    assert!(v.get("halfspaces").is_none());
    let points = v["vertices"]["points"].as_array().unwrap();
    let integral = points
        .iter()
        .filter(|p| {
            p.as_array()
                .unwrap()
                .iter()
                .all(|x| x.as_str().unwrap().ends_with("/1"))
        })
        .count();
    assert_eq!(integral, 8);
}

#[test]
fn theta_halfspaces() {
    let v = json(&["polytope", "--theta", "--hrep"]);
    assert_eq!(v["halfspaces"]["rows"].as_array().unwrap().len(), 10);
    assert!(v.get("vertices").is_none());
}

#[test]
fn delzant_check_lattices() {
    let std = json(&["delzant-check", "--theta", "--lattice", "standard"]);
    assert_eq!(std["overall"], false);
    for c in std["per_vertex"].as_array().unwrap() {
        assert!(c["determinant"] == "2" || c["determinant"] == "-2");
    }
    let vd = json(&["delzant-check", "--theta", "--lattice", "vertex-diff"]);
    assert_eq!(vd["overall"], true);
}

#[test]
fn volume_and_verlinde() {
    let v = json(&["volume", "--theta"]);
    assert_eq!(v["computed"], "1/3");
    assert_eq!(v["ratio_is_one"], false);
    let w = json(&["verlinde", "--genus", "3", "--level", "2"]);
    assert_eq!(w["closed_form"], 36);
    assert_eq!(w["fusion"], 36);
}

#[test]
fn chain_summary() {
    let v = json(&["chain", "--genus", "3"]);
    let steps = v["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 3);
    assert_eq!(steps[0]["vertices"], 16);
    assert!(steps[1..]
        .iter()
        .all(|s| s["strict"] == true && s["contained_in_previous"] == true));
    assert_eq!(v["ends_at_moment_polytope"], true);
}

#[test]
fn graph_info_from_file() {
    let dir = std::env::temp_dir().join(format!("delzant-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("theta.json");
    std::fs::write(
        &path,
        r#"{"name":"t","vertices":["a","b"],"edges":[{"id":"x","ends":["a","b"]},{"id":"y","ends":["a","b"]},{"id":"z","ends":["a","b"]}]}"#,
    )
    .unwrap();
    let v = json(&["graph", "info", "--input", path.to_str().unwrap()]);
    assert_eq!(v["genus"], 2);
    assert_eq!(v["incidence_form"], serde_json::json!([[0, 3], [3, 0]]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_independent_of_thread_count() {
    let args = ["polytope", "--multi-theta", "4"];
    let one = delzant(&[&args[..], &["--threads", "1"]].concat());
    let four = delzant(&[&args[..], &["--threads", "4"]].concat());
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout);
    let c1 = delzant(&["count", "--k4", "--level", "3", "--threads", "1"]);
    let c3 = delzant(&[
        "count",
        "--k4",
        "--level",
        "3",
        "--threads",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(stdout(&c1), stdout(&c3));
}

#[test]
fn text_format() {
    let o = delzant(&["count", "--theta", "--level", "2", "--format", "text"]);
    let s = stdout(&o);
    assert!(s.contains("count 10"));
    assert!(s.contains("mode parity"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(delzant(&["count", "--level", "1"]).status.code(), Some(2));
    assert_eq!(
        delzant(&["count", "--theta", "--k4", "--level", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        delzant(&["count", "--theta", "--level", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(delzant(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn computation_errors_exit_one() {
    let o = delzant(&[
        "count",
        "--input",
        "/nonexistent/graph.json",
        "--level",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    assert_eq!(
        delzant(&["polytope", "--multi-theta", "1"]).status.code(),
        Some(1)
    );
}

#[test]
fn verify_reports_every_criterion() {
    let o = delzant(&["verify", "--max-genus", "4", "--max-level", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let criteria = v["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 11);
    let all = criteria.iter().all(|c| c["passed"] == true);
    assert_eq!(v["passed"], all);
    assert_eq!(o.status.code(), Some(if all { 0 } else { 3 }));
}

#[test]
fn verify_small_range_passes() {
    // Genus 2 only: every multi-theta polytope in range is the tetrahedron.
    let o = delzant(&[
        "verify",
        "--max-genus",
        "2",
        "--max-level",
        "2",
        "--format",
        "text",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(
        stdout(&o)
            .lines()
            .filter(|l| l.starts_with("[PASS]"))
            .count(),
        11
    );
}
