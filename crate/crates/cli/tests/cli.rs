use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fusion-forge"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn validator() -> jsonschema::Validator {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/schema/fusion-forge-1.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn assert_valid(doc: &Value) {
    let v = validator();
    let errors: Vec<String> = v.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "schema violations: {errors:?}");
}

const WREATH_3_1: &str = r#"{"catalog": {"name": "wreath_cyclic", "params": [3, 1]}}"#;
const S4: &str = r#"{"catalog": {"name": "sym", "params": [4]}}"#;
const A6: &str = r#"{"group_realized": {"group": {"catalog": {"name": "alt", "params": [6]}}, "prime": 2}}"#;

// C_3 x C_3 on six points, with one factor inverted and the other fixed.
const LOPSIDED: &str = r#"{"generated": {
  "p_group": {"catalog": {"name": "direct_product", "factors": [
      {"catalog": {"name": "cyclic", "params": [3]}},
      {"catalog": {"name": "cyclic", "params": [3]}}]}},
  "automorphisms": [{"subgroup_generators": [[2, 3, 1, 4, 5, 6]],
                     "maps": [[[3, 1, 2, 4, 5, 6]]]}]}}"#;

#[test]
fn group_info_on_wreath() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "w.json", WREATH_3_1);
    let (code, out, _) = run(&["group-info", s(&p)]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_valid(&doc);
    assert_eq!(doc["schema"], "fusion-forge/1");
    assert_eq!(doc["class"], 3);
    assert_eq!(doc["center"]["order"], 3);
    assert_eq!(doc["center"]["exponent"], 3);
    assert_eq!(doc["thompson"]["order"], 27);
    assert_eq!(doc["subgroups"], 50);
}

#[test]
fn group_info_needs_a_prime_for_non_p_groups() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "s4.json", S4);
    let (code, _, err) = run(&["group-info", s(&p)]);
    assert_eq!(code, 2);
    assert!(err.contains("--prime"));
    let (code, out, _) = run(&["group-info", s(&p), "--prime", "2"]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["p_group"]["order"], 8);
}

#[test]
fn verify_theorem_fact_on_s4() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "s4.json", S4);
    let (code, out, _) = run(&["verify", "theorem-fact", s(&p), "--prime", "2"]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_valid(&doc);
    assert_eq!(doc["reports"][0]["conclusion"], "pass");
    assert_eq!(doc["summary"]["pass"], 1);
}

#[test]
fn vacuous_report_exits_zero() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "w.json", WREATH_3_1);
    let (code, out, _) = run(&["verify", "theorem-main", s(&p)]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["reports"][0]["conclusion"], "vacuous");
}

#[test]
fn fusion_check_reports_structure() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "a6.json", A6);
    let (code, out, _) = run(&["fusion-check", s(&p)]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_valid(&doc);
    assert_eq!(doc["saturated"], true);
    assert_eq!(doc["op_subgroup"]["order"], 1);
    assert_eq!(doc["center"]["order"], 1);
    let family: Vec<u64> = doc["alperin_family"]
        .as_array()
        .unwrap()
        .iter()
        .map(|q| q["order"].as_u64().unwrap())
        .collect();
    assert_eq!(family, [4, 4, 8]);
}

#[test]
fn fusion_check_fails_on_a_non_saturated_system() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "lop.json", LOPSIDED);
    let (code, out, _) = run(&["fusion-check", s(&p)]);
    assert_eq!(code, 1);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_valid(&doc);
    assert_eq!(doc["saturated"], false);
    assert!(doc["counterexample"].is_object());
}

#[test]
fn fusion_build_lists_classes() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "a6.json", A6);
    let (code, out, _) = run(&["fusion-build", s(&p)]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_valid(&doc);
    assert_eq!(doc["subgroups"], 10);
    let classes = doc["classes"].as_array().unwrap();
    let members: u64 = classes.iter().map(|c| c["members"].as_u64().unwrap()).sum();
    assert_eq!(members, 10);
    // All five involutions of D8 are fused in A6.
    assert!(classes
        .iter()
        .any(|c| c["representative"]["order"] == 2 && c["members"] == 5));
}

#[test]
fn malformed_json_reports_position() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "bad.json", "{\n  \"catalog\": [\n");
    let (code, out, err) = run(&["group-info", s(&p)]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("line 3"), "{err}");
    assert!(err.contains("column"), "{err}");
}

#[test]
fn unknown_catalog_name_reports_position() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "bad.json", r#"{"catalog": {"name": "mystery"}}"#);
    let (code, _, err) = run(&["group-info", s(&p)]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1"), "{err}");
    assert!(err.contains("mystery"), "{err}");
}

#[test]
fn missing_file_is_an_input_error() {
    let (code, _, err) = run(&["group-info", "/nonexistent/group.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("/nonexistent/group.json"));
}

#[test]
fn unknown_verifier_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "s4.json", S4);
    let (code, _, err) = run(&["verify", "theorem-nonsense", s(&p), "--prime", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("theorem-nonsense"));
}

#[test]
fn cap_exceeded_exits_three() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "w.json", WREATH_3_1);
    let (code, _, err) = run(&["group-info", s(&p), "--cap-lattice", "27"]);
    assert_eq!(code, 3);
    assert!(err.contains("cap"));
    let q = write(&dir, "s6.json", r#"{"catalog": {"name": "sym", "params": [6]}}"#);
    let (code, _, _) = run(&["fusion-check", s(&q), "--prime", "2", "--cap-order", "100"]);
    assert_eq!(code, 3);
}

#[test]
fn example_sharpness_without_realization() {
    let (code, out, _) = run(&["verify", "example-sharpness", "--prime", "3", "--n", "2"]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_valid(&doc);
    assert_eq!(doc["reports"][0]["conclusion"], "pass");
    let (code, _, err) = run(&["verify", "example-sharpness"]);
    assert_eq!(code, 2);
    assert!(err.contains("--prime"));
}

#[test]
fn example_sharpness_with_alt9_realization() {
    let dir = TempDir::new().unwrap();
    let p = write(
        &dir,
        "a9.json",
        r#"{"group_realized": {"group": {"catalog": {"name": "alt", "params": [9]}}, "prime": 3}}"#,
    );
    let (code, out, _) = run(&["verify", "example-sharpness", s(&p), "--n", "1"]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    let checks = doc["reports"][0]["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["name"] == "O_p(F) = 1" && c["holds"] == true));
    assert_eq!(doc["reports"][0]["conclusion"], "pass");
}

const SMALL_CORPUS: &str = r#"[
  {"id": "S4/2", "group": {"catalog": {"name": "sym", "params": [4]}}, "prime": 2,
   "verifiers": ["saturation", "theorem-norm", "theorem-fact", "equivnorm", "alperin"]},
  {"id": "A6/2", "group": {"catalog": {"name": "alt", "params": [6]}}, "prime": 2,
   "verifiers": ["theorem-main", "frattini", "poschar"]}
]"#;

#[test]
fn corpus_output_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "corpus.json", SMALL_CORPUS);
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let (c1, o1, _) = run(&["corpus", s(&cfg), "--out", s(&a)]);
    let (c2, o2, _) = run(&["corpus", s(&cfg), "--out", s(&b)]);
    assert_eq!((c1, c2), (0, 0));
    assert!(o1.is_empty() && o2.is_empty());
    let a = std::fs::read(&a).unwrap();
    let b = std::fs::read(&b).unwrap();
    assert_eq!(a, b);
    let doc: Value = serde_json::from_slice(&a).unwrap();
    assert_valid(&doc);
    assert_eq!(doc["summary"]["fail"], 0);
    assert_eq!(doc["summary"]["error"], 0);
    let first = doc["reports"][0]["instance"].as_str().unwrap();
    assert!(first.starts_with("S4/2"));
}

#[test]
fn corpus_timing_is_opt_in() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "corpus.json",
        r#"[{"group": {"catalog": {"name": "sym", "params": [4]}}, "prime": 2, "verifiers": ["saturation"]}]"#,
    );
    let (_, plain, _) = run(&["corpus", s(&cfg)]);
    assert!(!plain.contains("timing_ms"));
    let (code, timed, _) = run(&["corpus", s(&cfg), "--timing"]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&timed).unwrap();
    assert_valid(&doc);
    assert!(doc["reports"][0]["timing_ms"].is_u64());
}

#[test]
fn empty_corpus_gives_empty_report() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "corpus.json", "[]");
    let (code, out, _) = run(&["corpus", s(&cfg)]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_valid(&doc);
    assert_eq!(doc["reports"].as_array().unwrap().len(), 0);
    assert_eq!(doc["summary"]["pass"], 0);
}

#[test]
fn corpus_isolates_a_non_sylow_entry() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "corpus.json",
        r#"[
  {"id": "bad", "group": {"catalog": {"name": "sym", "params": [4]}}, "prime": 2,
   "sylow": [[2, 1, 4, 3], [3, 4, 1, 2]], "verifiers": ["saturation"]},
  {"id": "good", "group": {"catalog": {"name": "sym", "params": [4]}}, "prime": 2,
   "verifiers": ["saturation"]}
]"#,
    );
    let (code, out, _) = run(&["corpus", s(&cfg)]);
    assert_eq!(code, 2);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_valid(&doc);
    assert_eq!(doc["errors"][0]["instance"], "bad");
    assert!(doc["errors"][0]["message"].as_str().unwrap().contains("Sylow"));
    assert_eq!(doc["reports"].as_array().unwrap().len(), 1);
    assert_eq!(doc["reports"][0]["conclusion"], "pass");
}

#[test]
fn text_format() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "w.json", WREATH_3_1);
    let (code, out, _) = run(&["group-info", s(&p), "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.contains("class          3"));
    assert!(out.contains("exp Z(P)       3"));
    let q = write(&dir, "s4.json", S4);
    let (code, out, _) = run(&["verify", "saturation", s(&q), "--prime", "2", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("pass"));
    assert!(out.contains("pass 1, fail 0, vacuous 0, error 0"));
}

#[test]
fn stdin_input() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_fusion-forge"))
        .args(["group-info", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(WREATH_3_1.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["group_order"], 81);
}
