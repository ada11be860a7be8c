use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn spslab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spslab"))
        .args(args)
        .env("SPSLAB_FIXTURES", fixtures())
        .output()
        .unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_spslab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

const M3: &str = r#"{"elements":["0","a","b","c","1"],"covers":[["0","a"],["0","b"],["0","c"],["a","1"],["b","1"],["c","1"]]}"#;

#[test]
fn validate_s7() {
    let o = spslab(&["validate", "s7"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("patch: yes"), "{text}");
    assert!(text.contains("C1 diagram: ok"), "{text}");
}

#[test]
fn validate_rejects_m3_with_exit_2() {
    let o = with_stdin(&["validate", "-"], M3);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("slim: no"));
}

#[test]
fn malformed_input_is_exit_1() {
    let o = with_stdin(&["con", "-"], "{\"elements\": [");
    assert_eq!(code(&o), 1);
    let o = spslab(&["con", "no-such-fixture"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("no such file"));
    let o = spslab(&["build", "fork", "s7", "--cell-top", "nope"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn con_json_for_s7() {
    let v = json(&spslab(&["--json", "con", "s7"]));
    assert_eq!(v["con_size"], 5);
    assert_eq!(v["jir_poset"]["elements"].as_array().unwrap().len(), 3);
    let v = json(&spslab(&["--json", "con", "--factor", "b2"]));
    assert_eq!(v["con_size"], 4);
    assert_eq!(v["factors"].as_array().unwrap().len(), 2);
}

#[test]
fn lamps_of_figure2() {
    let v = json(&spslab(&["--json", "lamps", "figure2"]));
    let lamps = v["lamps"].as_array().unwrap();
    assert_eq!(lamps.len(), 16);
    let internal = lamps.iter().filter(|l| l["kind"] == "internal").count();
    assert_eq!(internal, 5);
}

#[test]
fn check_passes_on_s7_and_reports_skips() {
    let o = spslab(&["--json", "check", "s7"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let checks = v["checks"].as_array().unwrap();
    let verdict = |name: &str| {
        checks
            .iter()
            .find(|c| c["name"] == name)
            .map(|c| c["verdict"].as_str().unwrap().to_string())
    };
    assert_eq!(verdict("3p3c").as_deref(), Some("pass"));
    assert_eq!(verdict("thm4(ii)").as_deref(), Some("skipped"));
    assert_eq!(verdict("6.2(iii)").as_deref(), Some("pass"));
    assert_eq!(v["patch"]["patch"], true);
    let pattern = fixtures().join("patterns/r3.json");
    let o = spslab(&[
        "--json",
        "check",
        "s7",
        "--pattern",
        pattern.to_str().unwrap(),
    ]);
    let v = json(&o);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["verdict"] == "pass"));
}

#[test]
fn build_and_decompose_round_trip() {
    let grid = spslab(&["build", "grid", "2", "3"]);
    assert_eq!(code(&grid), 0);
    assert_eq!(json(&grid)["elements"].as_array().unwrap().len(), 12);
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    std::fs::write(&g, &grid.stdout).unwrap();
    let forked = spslab(&[
        "build",
        "fork",
        g.to_str().unwrap(),
        "--cell-top",
        "g1_1",
        "--rank",
        "2",
    ]);
    assert_eq!(code(&forked), 0);
    let f = dir.path().join("f.json");
    std::fs::write(&f, &forked.stdout).unwrap();
    let script = json(&spslab(&["decompose", f.to_str().unwrap()]));
    assert_eq!(script["grid"], serde_json::json!([2, 3]));
    assert_eq!(script["steps"].as_array().unwrap().len(), 1);
    assert_eq!(script["steps"][0]["rank"], 2);
}

#[test]
fn theorem2_variants() {
    let h = spslab(&["build", "theorem2", "b2", "b2", "--variant", "h"]);
    assert_eq!(code(&h), 0);
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("h.json");
    std::fs::write(&p, &h.stdout).unwrap();
    let v = json(&spslab(&["--json", "con", p.to_str().unwrap()]));
    assert_eq!(v["con_size"], 16);
    let l = spslab(&["build", "theorem2", "s7"]);
    assert_eq!(code(&l), 0);
    let v = json(&with_stdin(&["--json", "con", "-"], &stdout(&l)));
    assert_eq!(v["con_size"], 9);
}

#[test]
fn output_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s7.svg");
    let o = spslab(&[
        "-o",
        out.to_str().unwrap(),
        "render",
        "s7",
        "--lit",
        "m",
        "--labels",
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains(r#"class="lit""#));
    let tex = dir.path().join("s7.tex");
    spslab(&["-o", tex.to_str().unwrap(), "render", "s7"]);
    assert!(std::fs::read_to_string(&tex)
        .unwrap()
        .contains("\\begin{tikzpicture}"));
}

#[test]
fn fixture_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("tiny.json"),
        std::fs::read(fixtures().join("b2.json")).unwrap(),
    )
    .unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_spslab"))
        .args(["--json", "con", "tiny"])
        .env("SPSLAB_FIXTURES", dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["con_size"], 4);
}

#[test]
fn enumerate_and_verify_small_corpus() {
    let v = json(&spslab(&["--json", "--max-size", "9", "enumerate"]));
    assert_eq!(
        v["counts"],
        serde_json::json!({"4": 1, "6": 1, "7": 1, "8": 1, "9": 2})
    );
    let o = spslab(&["--json", "--max-size", "14", "--jobs", "2", "verify"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
    assert_eq!(v["suites"].as_array().unwrap().len(), 10);
    let o = spslab(&["verify", "--suite", "nonsense"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn layout_fills_in_coordinates() {
    let bare =
        r#"{"elements":["0","a","b","1"],"covers":[["0","a"],["0","b"],["a","1"],["b","1"]]}"#;
    let v = json(&with_stdin(&["layout", "-"], bare));
    assert_eq!(v["coords"].as_object().unwrap().len(), 4);
    assert_eq!(v["coords"]["0"], serde_json::json!([0, 0]));
}
