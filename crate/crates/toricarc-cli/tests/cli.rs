//! End-to-end CLI tests: exit codes, report content, determinism, and
//! JSON schema conformance for every subcommand.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    format!(
        "{}/../../fixtures/{name}.fan",
        env!("CARGO_MANIFEST_DIR")
    )
}

fn schema_path(name: &str) -> PathBuf {
    PathBuf::from(format!(
        "{}/../../schemas/{name}.schema.json",
        env!("CARGO_MANIFEST_DIR")
    ))
}

fn toricarc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toricarc"))
        .args(args)
        .env_remove("TORICARC_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

// ---------------------------------------------------------------------------
// Minimal JSON-Schema subset checker: type/const/enum/required/properties/
// additionalProperties/items, which is all the shipped schemas use.

fn validates(value: &serde_json::Value, schema: &serde_json::Value) -> Result<(), String> {
    use serde_json::Value;
    let obj = schema.as_object().ok_or("schema must be an object")?;
    if let Some(expected) = obj.get("const") {
        if value != expected {
            return Err(format!("expected const {expected}, got {value}"));
        }
    }
    if let Some(options) = obj.get("enum").and_then(Value::as_array) {
        if !options.contains(value) {
            return Err(format!("{value} not in enum {options:?}"));
        }
    }
    if let Some(ty) = obj.get("type") {
        let names: Vec<&str> = match ty {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => return Err("bad type clause".into()),
        };
        let matches = names.iter().any(|name| match *name {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "integer" => value.is_i64() || value.is_u64(),
            "number" => value.is_number(),
            "boolean" => value.is_boolean(),
            "null" => value.is_null(),
            _ => false,
        });
        if !matches {
            return Err(format!("{value} does not have type {names:?}"));
        }
    }
    if let Some(props) = obj.get("properties").and_then(Value::as_object) {
        let map = value.as_object().ok_or("expected object")?;
        for (key, sub) in props {
            if let Some(v) = map.get(key) {
                validates(v, sub).map_err(|e| format!("{key}: {e}"))?;
            }
        }
        if obj.get("additionalProperties") == Some(&Value::Bool(false)) {
            for key in map.keys() {
                if !props.contains_key(key) {
                    return Err(format!("unexpected property {key}"));
                }
            }
        }
    }
    if let Some(required) = obj.get("required").and_then(Value::as_array) {
        let map = value.as_object().ok_or("expected object")?;
        for key in required.iter().filter_map(Value::as_str) {
            if !map.contains_key(key) {
                return Err(format!("missing required property {key}"));
            }
        }
    }
    if let Some(items) = obj.get("items") {
        if let Some(arr) = value.as_array() {
            for (i, v) in arr.iter().enumerate() {
                validates(v, items).map_err(|e| format!("[{i}]: {e}"))?;
            }
        }
    }
    Ok(())
}

fn assert_schema(json_text: &str, schema_name: &str) {
    let value: serde_json::Value = serde_json::from_str(json_text).expect("valid JSON");
    let schema: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(schema_path(schema_name)).unwrap())
            .expect("schema parses");
    if let Err(e) = validates(&value, &schema) {
        panic!("output does not match {schema_name} schema: {e}\n{json_text}");
    }
}

// ---------------------------------------------------------------------------

#[test]
fn validate_reports_and_exit_codes() {
    let out = toricarc(&["validate", &fixture("p2")]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("fano: true"));

    // validation is a report, not a failure: F2 exits 0 with fano false
    let out = toricarc(&["validate", &fixture("f2")]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("fano: false"));
    assert!(stdout(&out).contains("smooth: true"));
}

#[test]
fn validate_json_schema() {
    for name in ["p1", "p2", "p3", "p1xp1", "f1", "f2"] {
        let out = toricarc(&["validate", &fixture(name), "--format", "json"]);
        assert_eq!(code(&out), 0);
        assert_schema(&stdout(&out), "validate");
    }
}

#[test]
fn missing_and_malformed_inputs_exit_two() {
    let out = toricarc(&["validate", "/nonexistent/path.fan"]);
    assert_eq!(code(&out), 2);

    let mut tmp = tempfile::NamedTempFile::new().unwrap();
    write!(tmp, "{{\"name\": \"broken\"").unwrap();
    let out = toricarc(&["validate", tmp.path().to_str().unwrap()]);
    assert_eq!(code(&out), 2);

    // structurally invalid: non-primitive ray
    let mut tmp = tempfile::NamedTempFile::new().unwrap();
    write!(
        tmp,
        "{{\"name\":\"bad\",\"dim\":2,\"rays\":[[2,4],[0,1],[-1,-1]],\"max_cones\":[[0,1],[1,2],[0,2]]}}"
    )
    .unwrap();
    let out = toricarc(&["validate", tmp.path().to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn cohomology_report() {
    let out = toricarc(&["cohomology", &fixture("p1xp1")]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("x1 - x3"));
    assert!(text.contains("betti: [1, 2, 1]"));

    let out = toricarc(&["cohomology", &fixture("p1xp1"), "--format", "json"]);
    assert_schema(&stdout(&out), "cohomology");
}

#[test]
fn quantum_symbolic_p2() {
    let out = toricarc(&["quantum", &fixture("p2"), "--symbolic"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("x1*x2*x3 - q1"));
    assert!(text.contains("rank: 3"));
    assert!(text.contains("x3^3 - q1"));
}

#[test]
fn quantum_specialized_and_errors() {
    let out = toricarc(&["quantum", &fixture("p1xp1"), "--q-spec", "2/3,-1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("kind: quantum-specialized"));
    assert!(text.contains("q_spec: 2/3, -1"));

    let out = toricarc(&["quantum", &fixture("p2"), "--q-spec", "0"]);
    assert_eq!(code(&out), 2, "zero q must be an input error");

    let out = toricarc(&["quantum", &fixture("f2")]);
    assert_eq!(code(&out), 2, "non-Fano without override is an input error");

    let out = toricarc(&["quantum", &fixture("f2"), "--allow-non-fano"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("warning:"));
}

#[test]
fn quantum_json_schema() {
    let out = toricarc(&["quantum", &fixture("f1"), "--format", "json"]);
    assert_eq!(code(&out), 0);
    assert_schema(&stdout(&out), "quantum");
    let out = toricarc(&[
        "quantum",
        &fixture("p2"),
        "--q-spec",
        "3",
        "--format",
        "json",
    ]);
    assert_schema(&stdout(&out), "quantum");
}

#[test]
fn series_exit_codes() {
    let out = toricarc(&["series", &fixture("p2"), "--cutoff", "12"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("holds: true"));

    // the identity genuinely fails on the Hirzebruch fixtures: exit 1
    let out = toricarc(&["series", &fixture("f1"), "--cutoff", "12"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("holds: false"));

    let out = toricarc(&["series", &fixture("f2"), "--format", "json"]);
    assert_eq!(code(&out), 1);
    assert_schema(&stdout(&out), "series");
}

#[test]
fn verify_main_exit_codes() {
    let out = toricarc(&["verify-main", &fixture("p2")]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("passed: true"));

    let out = toricarc(&["verify-main", &fixture("p1xp1"), "--format", "json"]);
    assert_eq!(code(&out), 0);
    assert_schema(&stdout(&out), "verify-main");

    // f1 fails the series half of the rank verdict: verification failure
    let out = toricarc(&["verify-main", &fixture("f1")]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("well_defined: true"));
    assert!(text.contains("cousin_holds: false"));
    assert!(text.contains("passed: false"));
}

#[test]
fn codim_subcommand() {
    let out = toricarc(&["codim", &fixture("f1"), "--a", "0,0", "--b", "0,1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("codim: 2"));

    let out = toricarc(&[
        "codim",
        &fixture("f1"),
        "--a",
        "0,0",
        "--b",
        "0,1",
        "--format",
        "json",
    ]);
    assert_schema(&stdout(&out), "codim");

    // not nested: input error
    let out = toricarc(&["codim", &fixture("f1"), "--a", "0,1", "--b", "0,0"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn strata_subcommand() {
    let out = toricarc(&["strata", &fixture("p2"), "--a", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("codim: 6"));
    assert!(text.contains("poincare: [1, 1, 1]"));

    let out = toricarc(&["strata", &fixture("p2"), "--a", "2", "--format", "json"]);
    assert_schema(&stdout(&out), "strata");

    let out = toricarc(&["strata", &fixture("p2"), "--a", "-1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn jets_subcommand() {
    let mut tmp = tempfile::NamedTempFile::new().unwrap();
    writeln!(tmp, "u1*u2 - 1").unwrap();
    let path = tmp.path().to_str().unwrap().to_string();
    let out = toricarc(&["jets", &path, "--order", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("u1_0*u2_0 - 1"));
    assert!(text.contains("u1_1*u2_0 + u1_0*u2_1"));

    let out = toricarc(&["jets", &path, "--order", "2", "--format", "json"]);
    assert_schema(&stdout(&out), "jets");

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "v1 + 1").unwrap();
    let out = toricarc(&["jets", bad.path().to_str().unwrap(), "--order", "1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn byte_identical_output_across_runs() {
    for args in [
        vec!["quantum", &fixture("p1xp1"), "--format", "json", "--seed", "7"],
        vec!["verify-main", &fixture("p3"), "--format", "json"],
        vec!["cohomology", &fixture("f1"), "--format", "text"],
    ] {
        let first = toricarc(&args);
        let second = toricarc(&args);
        assert_eq!(first.stdout, second.stdout, "args: {args:?}");
        assert_eq!(code(&first), code(&second));
    }
}

#[test]
fn budget_override_via_env_and_flag() {
    let out = Command::new(env!("CARGO_BIN_EXE_toricarc"))
        .args(["quantum", &fixture("p2")])
        .env("TORICARC_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2, "tiny budget must abort with an input error");
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("budget"));

    let out = toricarc(&["quantum", &fixture("p2"), "--budget", "1"]);
    assert_eq!(code(&out), 2);

    // explicit flag wins over the environment
    let out = Command::new(env!("CARGO_BIN_EXE_toricarc"))
        .args(["quantum", &fixture("p2"), "--budget", "1000000"])
        .env("TORICARC_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
}

#[test]
fn seed_changes_trials() {
    let a = toricarc(&["quantum", &fixture("p2"), "--seed", "0", "--format", "json"]);
    let b = toricarc(&["quantum", &fixture("p2"), "--seed", "1", "--format", "json"]);
    assert_ne!(a.stdout, b.stdout);
}
