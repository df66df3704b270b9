use std::process::{Command, Output};

use serde_json::Value;

fn babel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_babel")).args(args).env_remove("BABEL_PRECISION").output().expect("runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const DIAG_T2: &str = r#"[{"terms":[{"j":1,"i":0,"c":1}]},{"terms":[]},{"terms":[]},{"terms":[{"j":-1,"i":0,"c":1}]}]"#;

#[test]
fn weyl_relations_hold() {
    let out = babel(&["weyl", "relations", "--phi", "A1", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["relations"].as_array().unwrap().len(), 4);
}

#[test]
fn normal_form_of_a_word() {
    let out = babel(&["weyl", "nf", "--word", "s s", "--json"]);
    assert_eq!(json(&out), serde_json::json!({"fin": [[1]], "trans": [[0, 0]]}));
}

#[test]
fn omega2_is_not_in_the_a1_apartment() {
    let out = babel(&["apartment", "locate", "[[1, 0]]"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"], "not-in-apartment");
    let out = babel(&["apartment", "locate", "[[2, \"1/3\"]]"]);
    assert_eq!(json(&out)["result"], "located");
}

#[test]
fn malformed_input_exits_2() {
    assert_eq!(babel(&["apartment", "locate", "[[1,"]).status.code(), Some(2));
    assert_eq!(babel(&["apartment", "locate", "[[1, 0], [0, 0]]"]).status.code(), Some(2));
    assert_eq!(babel(&["--prec", "6", "weyl", "relations"]).status.code(), Some(2));
    assert_eq!(babel(&["suite", "run", "nope"]).status.code(), Some(2));
    assert_eq!(babel(&["sl2", "cartan", r#"[{"terms":[]}]"#]).status.code(), Some(2));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = babel(&["weyl", "relations", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--bogus"));
}

#[test]
fn undecidable_valuation_exits_3() {
    let out = babel(&["field", "val", r#"{"prec":[0,5],"terms":[]}"#]);
    assert_eq!(out.status.code(), Some(3));
    let out = babel(&["field", "val", r#"{"terms":[{"j":0,"i":3,"c":2}]}"#]);
    assert_eq!(json(&out)["val"]["exact"], serde_json::json!({"j": 0, "i": 3}));
}

#[test]
fn decompositions_of_a_torus_element() {
    let v = json(&babel(&["sl2", "cartan", DIAG_T2]));
    assert_eq!(v["m"], serde_json::json!({"j": 1, "i": 0}));
    assert_eq!(v["round_trip"], true);
    let v = json(&babel(&["sl2", "bruhat", DIAG_T2]));
    assert_eq!(v["label"]["fin"], serde_json::json!([[1]]));
    let out = babel(&["sl2", "kapranov", "--pair", "1,2", DIAG_T2]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn building_distance_and_retraction() {
    let id = r#"[{"terms":[{"j":0,"i":0,"c":1}]},{"terms":[]},{"terms":[]},{"terms":[{"j":0,"i":0,"c":1}]}]"#;
    let v = json(&babel(&["sl2", "dist", id, DIAG_T2]));
    assert_eq!(v["dist"], serde_json::json!([{"num": 2, "den": 1}, {"num": 0, "den": 1}]));
    let out = babel(&["sl2", "rho", id, DIAG_T2]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["decreasing"], true);
}

#[test]
fn matrices_from_files_and_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    std::fs::write(&path, DIAG_T2).unwrap();
    let arg = format!("@{}", path.display());
    assert_eq!(babel(&["sl2", "cell", &arg]).status.code(), Some(0));

    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_babel"))
        .args(["sl2", "cell", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(DIAG_T2.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn render_writes_deterministic_svg() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for (phi, path) in [("B2", &a), ("B2", &b)] {
        let out = babel(&["render", "apartment", "--phi", phi, "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let (sa, sb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(sa, sb);
    assert!(String::from_utf8(sa).unwrap().starts_with("<svg"));
    let e = dir.path().join("e.svg");
    assert_eq!(babel(&["render", "enclosure", "--out", e.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn suite_reports_are_reproducible() {
    let args = ["suite", "run", "metric", "--samples", "40", "--seed", "7", "--json"];
    let (a, b) = (babel(&args), babel(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["pass"], true);
}

#[test]
fn environment_sets_precision() {
    let out = Command::new(env!("CARGO_BIN_EXE_babel"))
        .args(["field", "inv", r#"{"terms":[{"j":0,"i":0,"c":1},{"j":0,"i":1,"c":1}]}"#])
        .env("BABEL_PRECISION", "4,2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let inv = json(&out)["inverse"].clone();
    assert_eq!(inv["terms"].as_array().unwrap().len(), 4);
}
