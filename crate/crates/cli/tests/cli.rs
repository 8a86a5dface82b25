use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arrpi1")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    stdout(&out)
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

fn path(name: &str) -> String {
    corpus(name).display().to_string()
}

#[test]
fn analyze_parallel_lines_is_free() {
    let r = json(&["analyze", &path("parallel3.json"), "--no-timings"]);
    assert_eq!(r["verdict"]["kind"], "FreeOfRank");
    assert_eq!(r["verdict"]["rank"], 3);
    assert_eq!(r["presentation"]["relators"], 0);
    assert_eq!(r["singular_points"]["count"], 0);
    assert!(r["certificate"].is_null());
}

#[test]
fn analyze_crossing_pair_certificate() {
    let r = json(&["analyze", &path("crossing_pair.json"), "--no-timings"]);
    assert_eq!(r["verdict"]["kind"], "NotFree");
    let c = &r["certificate"];
    assert_eq!(c["sigma_a"], serde_json::json!([0, 1]));
    assert_eq!(c["sigma_b"], serde_json::json!([1, 0]));
    assert_eq!(c["A"], "g2");
    assert_eq!(c["B"], "g1");
    assert_eq!(c["verified"], true);
    assert_eq!(c["minor"].as_i64().unwrap().abs(), 1);
}

#[test]
fn analyze_pencil_of_four() {
    let r = json(&["analyze", &path("pencil4.json"), "--no-timings"]);
    assert_eq!(r["verdict"]["kind"], "NotFree");
    assert_eq!(r["presentation"]["relators"], 3);
    assert_eq!(r["singular_points"]["multiplicities"], serde_json::json!([4]));
    assert_eq!(r["wiring"]["actual"], 1);
}

#[test]
fn analyze_reports_seed_and_digest() {
    let r = json(&["analyze", &path("pencil3.json"), "--seed", "5", "--no-timings"]);
    assert_eq!(r["seed"], 5);
    assert_eq!(r["input"]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn present_formats() {
    assert_eq!(ok(&["present", &path("parallel2.json")]).trim_end(), "gens 2");
    let text = ok(&["present", &path("crossing_pair.json")]);
    assert_eq!(text.lines().collect::<Vec<_>>(), ["gens 2", "[ g2 , g1 ]"]);
    let text = ok(&["present", &path("pencil3.json")]);
    assert_eq!(text.lines().filter(|l| l.starts_with('[')).count(), 2);
    let rebased = ok(&["present", "--rebased", &path("pencil3.json")]);
    assert_eq!(rebased.lines().filter(|l| l.starts_with('[')).count(), 2);
}

#[test]
fn wiring_dumps() {
    let text = ok(&["wiring", &path("parallel3.json")]);
    assert!(text.starts_with("STRANDS 3"));
    assert_eq!(text.lines().count(), 1);
    let text = ok(&["wiring", &path("crossing_pair.json")]);
    assert_eq!(text.lines().filter(|l| l.starts_with("ACTUAL")).count(), 1);
    let text = ok(&["wiring", &path("complex_slopes.json")]);
    let virtuals: Vec<_> = text.lines().filter(|l| l.starts_with("VIRTUAL")).collect();
    assert!(!virtuals.is_empty());
    assert!(virtuals.iter().all(|l| l.ends_with("sign=+") || l.ends_with("sign=-")));
}

#[test]
fn wiring_svg_figure() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.svg");
    ok(&["wiring", &path("complex_slopes.json"), "--svg", out.to_str().unwrap()]);
    let svg = std::fs::read_to_string(out).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("<polyline"));
    assert!(svg.contains("<circle"));
}

#[test]
fn projective_verdicts() {
    let r = json(&["projective", &path("cp2_pencil5.json"), "--no-timings"]);
    assert_eq!(r["verdict"], serde_json::json!({"kind": "FreeOfRank", "rank": 4}));
    assert_eq!(r["decone"]["agrees"], true);
    let r = json(&["projective", &path("cp2_triangle.json"), "--no-timings"]);
    assert_eq!(r["verdict"]["kind"], "NotFree");
    assert_eq!(r["intersection_dimension"], -1);
    let r = json(&["projective", &path("cp3_rank2.json"), "--no-timings"]);
    assert_eq!(r["verdict"], serde_json::json!({"kind": "FreeOfRank", "rank": 4}));
    assert_eq!(r["cross_validation"]["agrees"], true);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"space":"affine2","lines":[{"a":"1/0","b":"1","c":"0"}]}"#).unwrap();
    let out = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("MALFORMED_GQ"));
    assert_eq!(run(&["analyze", "/nonexistent/file.json"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["analyze", &path("cp2_triangle.json")]).status.code(), Some(1));
    assert_eq!(run(&["projective", &path("pencil3.json")]).status.code(), Some(1));
}

#[test]
fn output_is_deterministic_without_timings() {
    for cmd in ["analyze", "wiring", "present"] {
        let p = path("complex_slopes.json");
        let mut args = vec![cmd, p.as_str()];
        if cmd == "analyze" {
            args.push("--no-timings");
        }
        assert_eq!(ok(&args), ok(&args));
    }
    let dir = path("");
    assert_eq!(ok(&["batch", &dir, "--no-timings"]), ok(&["batch", &dir, "--no-timings"]));
    let r = json(&["analyze", &path("pencil3.json")]);
    assert!(r["timings"]["analysis_ms"].is_number());
}

#[test]
fn batch_verify_passes_on_corpus() {
    let r = json(&["batch", &path(""), "--verify", "--no-timings"]);
    assert_eq!(r["summary"]["files"], 9);
    assert_eq!(r["summary"]["ok"], 9);
    for f in r["files"].as_array().unwrap() {
        let checks = f["verify"].as_array().unwrap();
        assert!(checks.iter().all(|c| c["passed"] == true), "{f}");
    }
    let names: Vec<&str> = r["files"].as_array().unwrap().iter().map(|f| f["path"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn batch_continues_past_malformed_file() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["crossing_pair.json", "parallel2.json"] {
        std::fs::copy(corpus(name), dir.path().join(name)).unwrap();
    }
    std::fs::write(dir.path().join("broken.json"), "{\"space\":\"affine2\",\"lines\":[").unwrap();
    let report = dir.path().join("report.json");
    let out = run(&["batch", dir.path().to_str().unwrap(), "--out", report.to_str().unwrap(), "--no-timings"]);
    assert_eq!(out.status.code(), Some(1));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(r["summary"]["files"], 3);
    assert_eq!(r["summary"]["ok"], 2);
    assert_eq!(r["summary"]["errored"], 1);
    let broken = &r["files"][0];
    assert_eq!(broken["status"], "error");
    assert_eq!(broken["error"]["code"], "JSON_SYNTAX");
}
