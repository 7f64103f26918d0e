use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadrance"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

#[test]
fn scheme_verify_passes() {
    let (code, v) = json(&["scheme", "verify", "--q", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["valid"], true);
    assert_eq!(v["predicted_match"], true);
    assert_eq!(v["field"]["q"], 7);
    assert_eq!(v["tool"], "quadrance");
    assert!(v["wall_time_ms"].is_null());
    assert!(!v["notes"].as_array().unwrap().is_empty());
}

#[test]
fn infeasible_quadrangle_exits_one() {
    let (code, v) = json(&["polygon", "--q", "5", "--quadrances", "1,1,1,3"]);
    assert_eq!(code, 1);
    assert_eq!(v["feasible"], false);
    assert_eq!(v["certificate"]["kind"], "quadrangle");
}

#[test]
fn feasible_polygon_has_vertices() {
    let (code, v) = json(&["polygon", "--q", "7", "--quadrances", "1,2,3,-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["quadrances"], serde_json::json!([1, 2, 3, 6]));
    assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
}

#[test]
fn srg_report() {
    let (code, v) = json(&["graph", "srg", "--q", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["srg"], serde_json::json!([49, 24, 11, 12]));
}

#[test]
fn domain_errors_exit_two() {
    assert_eq!(run(&["graph", "srg", "--q", "5"]).status.code(), Some(2));
    assert_eq!(
        run(&["scheme", "verify", "--q", "7", "--fuse", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["scheme", "verify", "--q", "5", "--fuse", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["field", "--p", "4"]).status.code(), Some(2));
    assert_eq!(
        run(&["circle", "--q", "7", "--center", "0,0", "--class", "null"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["circle", "--q", "9", "--center", "0,9", "--class", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["clique", "--q", "19"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_three() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(run(&["polygon", "--q", "7"]).status.code(), Some(3));
    assert_eq!(
        run(&["graph", "srg", "--q", "7", "--format", "tsv"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn tsv_tensor_rows() {
    let out = run(&["scheme", "tensor", "--q", "3", "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "i\tj\tk\tp");
    assert_eq!(lines.len(), 1 + 27);
    assert!(lines.contains(&"1\t1\t0\t4"));
}

#[test]
fn circles_and_intersections() {
    let (_, v) = json(&["circle", "--q", "5", "--center", "0,0", "--class", "null"]);
    assert_eq!(v["size"], 8);
    let (code, v) = json(&[
        "intersect",
        "--q",
        "7",
        "--x1",
        "0,0",
        "--x2",
        "1,0",
        "--i",
        "1",
        "--j",
        "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], v["points"].as_array().unwrap().len());
}

#[test]
fn subsets_and_conjecture() {
    let (code, v) = json(&["graph", "subsets", "--q", "7", "--trials", "100"]);
    assert_eq!(code, 0);
    assert_eq!(v["subset_trials"]["all_hold"], true);
    assert_eq!(v["config"]["command"]["seed"], 0);
    let (code, v) = json(&["conjecture", "--q", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["clique_lines"], 6);
    assert_eq!(v["independent_lines"], 6);
}

#[test]
fn thread_count_does_not_change_reports() {
    let a = run(&["scheme", "verify", "--q", "17", "--threads", "1"]).stdout;
    let b = run(&["scheme", "verify", "--q", "17", "--threads", "4"]).stdout;
    let strip = |v: &[u8]| {
        let mut v: Value = serde_json::from_slice(v).unwrap();
        v.as_object_mut().unwrap().remove("config");
        v
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn output_file_and_timing() {
    let dir = std::env::temp_dir().join(format!("quadrance-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("field.json");
    let out = run(&[
        "field",
        "--p",
        "3",
        "--e",
        "2",
        "--timing",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["field"]["modulus"], serde_json::json!([1, 0, 1]));
    assert_eq!(v["field"]["g"], 4);
    assert!(v["wall_time_ms"].is_number());
    std::fs::remove_dir_all(&dir).unwrap();
}
