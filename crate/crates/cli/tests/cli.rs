use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_pentaflow"));
    c.env_remove("PENTAFLOW_FORMAT").env_remove("PENTAFLOW_CAP");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn pentaflow")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json_out(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}

fn load(name: &str) -> Value {
    let text = std::fs::read_to_string(schema_dir().join(name)).unwrap();
    serde_json::from_str(&text).unwrap()
}

fn validator(name: &str) -> jsonschema::Validator {
    let mut opts = jsonschema::options();
    for entry in std::fs::read_dir(schema_dir()).unwrap() {
        let schema = load(entry.unwrap().file_name().to_str().unwrap());
        let id = schema["$id"].as_str().unwrap().to_string();
        opts = opts.with_resource(id, jsonschema::Resource::from_contents(schema).unwrap());
    }
    opts.build(&load(name)).unwrap()
}

fn assert_valid(schema: &str, instance: &Value) {
    let v = validator(schema);
    let errors: Vec<String> = v.iter_errors(instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{schema}: {errors:?}\n{instance:#}");
}

#[test]
fn classify_21_report() {
    let v = json_out(&["classify", "21"]);
    assert_eq!(
        v,
        json!({
            "word": "21",
            "tau": [5, 3, 4, 1, 2],
            "verdicts": {"1": "saddle", "2": "long", "3": "long", "4": "short", "5": "short"}
        })
    );
    assert_valid("classification_report.v1.json", &v);
}

#[test]
fn classify_horizontal_and_vertical() {
    let h = json_out(&["classify", "e"]);
    assert_eq!(
        h["verdicts"],
        json!({"1": "short", "2": "short", "3": "long", "4": "long", "5": "saddle"})
    );
    let v = json_out(&["classify", "vertical"]);
    assert_eq!(v["word"], "vertical");
    assert_valid("classification_report.v1.json", &v);
}

#[test]
fn classify_single_midpoint_and_text() {
    let v = json_out(&["classify", "21", "4"]);
    assert_eq!(v["verdicts"], json!({"4": "short"}));
    assert_valid("classification_report.v1.json", &v);
    let text = stdout(&["--format", "text", "classify", "21"]);
    assert!(text.starts_with("tau = (1 5 2 3 4)\n"));
    assert!(text.contains("1: saddle"));
    let csv = stdout(&["classify", "21", "--format", "csv"]);
    assert_eq!(csv.lines().next(), Some("word,midpoint,verdict"));
    assert_eq!(csv.lines().count(), 6);
}

#[test]
fn base_word_gives_same_report() {
    let long = json_out(&["classify", "231221"]);
    let short = json_out(&["classify", "23"]);
    assert_eq!(long["verdicts"], short["verdicts"]);
    assert_eq!(long["tau"], short["tau"]);
}

#[test]
fn conversions() {
    assert_eq!(stdout(&["word2vec", "132"]), "3+2φ, 2+4φ\n");
    assert_eq!(stdout(&["vec2word", "3", "2", "2", "4"]), "132\n");
    assert_eq!(stdout(&["vec2word", "1", "0", "0", "0"]), "e\n");
    assert_eq!(stdout(&["vec2word", "1/2", "0", "0", "0"]), "e\n");
    assert_eq!(stdout(&["reduce", "231221"]), "23\n");
    let v = json_out(&["--format", "json", "word2vec", "132"]);
    assert_eq!(v["vector"]["y"], json!({"a": "2", "b": "4"}));
    assert_valid("conversion.v1.json", &v);
    assert_valid("conversion.v1.json", &json_out(&["--format", "json", "reduce", "0110"]));
    assert_valid(
        "conversion.v1.json",
        &json_out(&["--format", "json", "vec2word", "2", "2", "1", "2"]),
    );
}

#[test]
fn bad_input_exits_2() {
    for args in [
        &["classify", "14"][..],
        &["classify", "21", "6"],
        &["vec2word", "0", "0", "0", "0"],
        &["vec2word", "-1", "0", "1", "0"],
        &["vec2word", "x", "0", "1", "0"],
        &["vec2word", "0", "0", "1", "0"],
        &["stats", "--max-n", "6", "--mode", "brute"],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn cap_exceeded_exits_3() {
    let out = run(&["--cap", "2", "simulate", "2121", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let out = bin()
        .env("PENTAFLOW_CAP", "2")
        .args(["vec2word", "3", "2", "2", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn format_env_override() {
    let out = bin()
        .env("PENTAFLOW_FORMAT", "json")
        .args(["reduce", "231221"])
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["word"], "23");
}

#[test]
fn simulate_saddle() {
    let v = json_out(&["simulate", "e", "5"]);
    assert_eq!(v["outcome"], "cone_point");
    assert_valid("trajectory.v1.json", &v);
    let v = json_out(&["simulate", "21", "3", "--classify"]);
    assert_eq!(v["outcome"], "closed");
    assert_eq!(v["verdict"], "long");
    assert_valid("trajectory.v1.json", &v);
}

#[test]
fn simulate_classify_agrees_with_classify() {
    let words = ["e", "0", "1", "2", "3", "01", "12", "21", "33", "132", "3210"];
    for w in words {
        let report = json_out(&["classify", w]);
        for m in 1..=5 {
            let ms = m.to_string();
            let t = json_out(&["simulate", w, &ms, "--classify"]);
            assert_eq!(t["verdict"], report["verdicts"][&ms], "{w} at {m}");
        }
    }
}

#[test]
fn stats_tables() {
    let text = stdout(&["stats", "--max-n", "5", "--mode", "exact"]);
    let row4 = text.lines().find(|l| l.trim_start().starts_with("4 ")).unwrap();
    assert!(row4.contains(" 28 ") && row4.contains("7/64"), "{row4}");
    let v = json_out(&["--format", "json", "stats", "--max-n", "5", "--mode", "brute"]);
    assert_eq!(v["rows"][2]["count"], "28");
    assert_valid("stats.v1.json", &v);
    let args = ["--format", "json", "--seed", "9", "stats", "--max-n", "3", "--mode", "monte-carlo", "--samples", "5000"];
    let a = json_out(&args);
    assert_eq!(a, json_out(&args));
    assert_valid("stats.v1.json", &a);
    let csv = stdout(&["--format", "csv", "stats", "--max-n", "2"]);
    assert_eq!(csv.lines().next(), Some("m,count,probability,probability_decimal"));
    assert_eq!(csv.lines().nth(3), Some("4,28,7/64,0.109375"));
}

#[test]
fn render_frames() {
    let dir = tempfile::tempdir().unwrap();
    let svg = stdout(&["render", "132", "2"]);
    let segments = json_out(&["simulate", "132", "2"])["segment_count"].as_u64().unwrap() as usize;
    assert!(svg.starts_with("<?xml"));
    assert_eq!(svg.matches(r#"class="segment""#).count(), segments);

    let out = dir.path().join("p.svg");
    let out_s = out.to_str().unwrap();
    let summary = json_out(&["--format", "json", "render", "21", "4", "--frame", "pentagon", "--out", out_s]);
    assert_valid("render_summary.v1.json", &summary);
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.contains(r#"data-bounces="70""#));
    assert_eq!(summary["bounces"], 70);
    assert_eq!(summary["transported_bounces"], 70);
}

#[test]
fn surface_dump() {
    let v = json_out(&["surface"]);
    assert_valid("surface.v1.json", &v);
    assert_eq!(v["weierstrass_points"][0]["position"]["y"], json!({"a": "1/2", "b": "1"}));
    let text = stdout(&["--format", "text", "surface"]);
    assert!(text.contains("weierstrass points:"));
}

#[test]
fn schemas_reject_garbage() {
    let v = validator("classification_report.v1.json");
    assert!(!v.is_valid(&json!({"word": "14", "tau": [1, 2, 3, 4, 5], "verdicts": {"1": "short"}})));
    assert!(!v.is_valid(&json!({"word": "1", "tau": [1, 2, 3, 4, 5], "verdicts": {"6": "short"}})));
    let g = validator("golden_number.v1.json");
    assert!(g.is_valid(&json!({"a": "-3/4", "b": "2"})));
    assert!(!g.is_valid(&json!({"a": "0.75", "b": "2"})));
}
