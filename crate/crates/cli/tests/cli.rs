use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_slopekit"));
    c.env_remove("COUSIN_MAX_ENUM");
    c
}

fn slopekit(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = slopekit(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json_out(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    serde_json::from_str(&stdout(&a)).unwrap()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn schema() -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/output.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn validates(schema: &Value, doc: &Value) -> bool {
    jsonschema::JSONSchema::compile(schema).expect("schema compiles").is_valid(doc)
}

/// The top-level schema with `result` pinned to one definition.
fn result_schema(def: &str) -> Value {
    let mut s = schema();
    s["oneOf"][0]["properties"]["result"] = json!({ "$ref": format!("#/$defs/{def}") });
    s
}

#[test]
fn gsp4_tables_match_golden_files() {
    for v in ["ss", "sss"] {
        let args = ["slopes", "table", "--preset", "GSp4", "--variant", v];
        assert_eq!(stdout(&args), golden(&format!("gsp4_{v}.md")));
        let with = |f: &str| {
            let mut a = args.to_vec();
            a.extend(["--format", f]);
            stdout(&a)
        };
        assert_eq!(with("md"), golden(&format!("gsp4_{v}.md")));
        assert_eq!(with("json"), golden(&format!("gsp4_{v}.json")));
        assert_eq!(with("latex"), golden(&format!("gsp4_{v}.tex")));
    }
    assert_eq!(stdout(&["slopes", "table", "--preset", "GL2", "--variant", "ss"]), golden("gl2_ss.md"));
}

#[test]
fn table_output_is_byte_stable() {
    let args = ["slopes", "table", "--preset", "GSp2g:g=3", "--variant", "sss", "--format", "json"];
    let first = slopekit(&args).stdout;
    for _ in 0..3 {
        assert_eq!(slopekit(&args).stdout, first);
    }
}

/// Parses a markdown table back into header cells and body rows.
fn md_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines().filter(|l| l.starts_with('|'));
    let split = |l: &str| l.trim_matches('|').split(" | ").map(|c| c.trim().to_string()).collect::<Vec<_>>();
    let header = split(lines.next().unwrap());
    lines.next();
    (header, lines.map(split).collect())
}

#[test]
fn markdown_and_json_carry_the_same_table() {
    for v in ["ss", "sss"] {
        let args = ["slopes", "table", "--preset", "GSp4", "--variant", v];
        let md = stdout(&args);
        let doc = json_out(&args);
        let (header, rows) = md_rows(&md);
        let t = &doc["result"];
        let columns: Vec<String> =
            t["columns"].as_array().unwrap().iter().map(|c| c.as_str().unwrap().to_string()).collect();
        assert_eq!(header[2..], columns[..]);
        let json_rows = t["rows"].as_array().unwrap();
        assert_eq!(rows.len(), json_rows.len());
        for (r, j) in rows.iter().zip(json_rows) {
            assert_eq!(r[0], j["operator"]);
            assert_eq!(r[1], j["t"]);
            let cells: Vec<&str> = j["cells"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
            assert_eq!(r[2..].iter().map(String::as_str).collect::<Vec<_>>(), cells);
        }
    }
}

#[test]
fn markdown_and_json_carry_the_same_records() {
    let args = ["weyl", "--preset", "GSp4", "--levi", "0", "--list-kostant"];
    let mut md_args = args.to_vec();
    md_args.extend(["--format", "md"]);
    let (header, rows) = md_rows(&stdout(&md_args));
    let doc = json_out(&args);
    let items = doc["result"].as_array().unwrap();
    assert_eq!(rows.len(), items.len());
    for (r, item) in rows.iter().zip(items) {
        for (h, c) in header.iter().zip(r) {
            let v = &item[h];
            let text = v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string());
            assert_eq!(&text, c, "field {h}");
        }
    }
}

#[test]
fn outputs_validate_against_the_schema() {
    let s = schema();
    let table = json_out(&["slopes", "table", "--preset", "GSp4", "--variant", "ss"]);
    assert!(validates(&result_schema("hecke_table"), &table));
    let g3 = json_out(&["slopes", "table", "--preset", "GSp2g:g=3", "--variant", "sss"]);
    assert!(validates(&result_schema("hecke_table"), &g3));
    let kostant = json_out(&["weyl", "--preset", "C2", "--levi", "0", "--list-kostant"]);
    assert!(validates(&result_schema("kostant_list"), &kostant));
    let check = json_out(&["check", "--suite", "c_set", "--system", "A1", "--lo", "-2", "--hi", "2"]);
    assert!(validates(&result_schema("check_outcomes"), &check));
    for args in [
        &["cousin", "bwb", "--preset", "A1", "--kappa", "-1"][..],
        &["cousin", "ranges", "--preset", "GSp4", "--levi", "0", "--kappa", "5,3,-8"],
        &["newton", "poly", "--p", "3", "--coeffs", "3,-4,1"],
        &["slopes", "sets", "--preset", "C2", "--levi", "0", "--kappa", "3,-1,-2"],
    ] {
        assert!(validates(&s, &json_out(args)), "{args:?}");
    }
    // A table document is not a Kostant list, so the pinned schemas do discriminate.
    assert!(!validates(&result_schema("kostant_list"), &table));
    let err = slopekit(&["slopes", "sets", "--preset", "nope", "--kappa", "1"]);
    let doc: Value = serde_json::from_slice(&err.stderr).unwrap();
    assert!(validates(&s, &doc));
}

#[test]
fn bwb_of_an_irregular_weight_is_null() {
    assert_eq!(stdout(&["cousin", "bwb", "--preset", "A1", "--kappa", "-1"]), "{\n  \"result\": null\n}\n");
}

#[test]
fn gsp4_kostant_listing() {
    let doc = json_out(&["weyl", "--preset", "GSp4", "--levi", "0", "--list-kostant"]);
    let got: Vec<(String, u64)> = doc["result"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["element"].as_str().unwrap().to_string(), r["length"].as_u64().unwrap()))
        .collect();
    let want = [("Id", 0), ("s1", 1), ("s1s0", 2), ("s1s0s1", 3)];
    assert_eq!(got, want.map(|(e, l)| (e.to_string(), l)));
    assert_eq!(doc, serde_json::from_str::<Value>(&golden("gsp4_kostant.json")).unwrap());
}

#[test]
fn slope_condition_from_flags() {
    let args = [
        "slopes", "cond", "--preset", "C2", "--levi", "0", "--kind", "ss", "--flavor", "M", "--sign", "+", "--kappa",
        "5,3,-8", "--lambda", "-3,3,-8",
    ];
    assert_eq!(json_out(&args)["result"], json!(true));
}

#[test]
fn newton_commands() {
    let doc = json_out(&["newton", "poly", "--p", "3", "--coeffs", "3,-4,1", "--h", "0"]);
    assert_eq!(doc["result"]["root_valuations"], json!([0, 1]));
    assert_eq!(doc["result"]["slope_leq_h"], json!(true));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    std::fs::write(&path, r#"[[1, 0, 0], [0, 5, 0], [0, 0, "1/25"]]"#).unwrap();
    let arg = format!("@{}", path.display());
    let doc = json_out(&["newton", "slopedim", "--p", "5", "--matrix", &arg, "--h", "0"]);
    assert_eq!(doc["result"], json!(2));
    let doc = json_out(&["newton", "slopedim", "--p", "5", "--matrix", "[[1,0],[0,5]]", "--h", "-1"]);
    assert_eq!(doc["result"], json!(0));
}

#[test]
fn exit_codes_follow_the_error_kind() {
    let code = |args: &[&str]| slopekit(args).status.code();
    assert_eq!(code(&["slopes", "sets", "--preset", "nope", "--kappa", "1"]), Some(2));
    assert_eq!(code(&["slopes", "sets", "--preset", "C2", "--kappa", "1,2"]), Some(3));
    assert_eq!(code(&["cousin", "flag", "--preset", "C2", "--levi", "0", "--kappa", "0,0,0", "--depth", "1"]), Some(3));
    assert_eq!(code(&["newton", "poly", "--p", "4", "--coeffs", "1,1"]), Some(2));
    let out = slopekit(&["slopes", "cond", "--preset", "C2", "--kind", "sss", "--flavor", "nu", "--nu", "0,0,0", "--lambda", "0,0,0"]);
    assert_eq!(out.status.code(), Some(3));
    let doc: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(doc["error"]["kind"], "precondition");
    assert_eq!(doc["error"]["module"], "slope_calc");
}

#[test]
fn enumeration_bound_from_the_environment() {
    let out = bin()
        .args(["weyl", "--preset", "GSp2g:g=4"])
        .env("COUSIN_MAX_ENUM", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    let doc: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(doc["error"]["kind"], "resource_bound");
}

#[test]
fn config_files_round_trip() {
    let args = ["cousin", "ranges", "--preset", "GSp4", "--levi", "0", "--kappa", "5,3,-8"];
    let mut print = args.to_vec();
    print.push("--print-config");
    let config = stdout(&print);
    let parsed: slopekit_cli::JobConfig = serde_json::from_str(&config).unwrap();
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", config);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("job.json");
    std::fs::write(&path, &config).unwrap();
    assert_eq!(stdout(&["run", "--config", path.to_str().unwrap()]), stdout(&args));
}

#[test]
fn config_documents_drive_every_format() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("job.json");
    let job = json!({
        "preset": "GSp4",
        "format": "md",
        "command": { "name": "slopes_table", "variant": "sss" }
    });
    std::fs::write(&path, job.to_string()).unwrap();
    assert_eq!(stdout(&["run", "--config", path.to_str().unwrap()]), golden("gsp4_sss.md"));
    std::fs::write(&path, r#"{"preset": "GSp4", "command": {"name": "bogus"}}"#).unwrap();
    assert_eq!(slopekit(&["run", "--config", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn custom_datum_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a2.json");
    let custom = json!({
        "dim": 3,
        "simple_roots": [[1, -1, 0], [0, 1, -1]],
        "simple_coroots": [[1, -1, 0], [0, 1, -1]],
    });
    std::fs::write(&path, custom.to_string()).unwrap();
    let doc = json_out(&["char", "dim", "--custom", path.to_str().unwrap(), "--weight", "2,1,0"]);
    assert_eq!(doc["result"], json!(8));
}

#[test]
fn failed_checks_exit_nonzero_only_on_failure() {
    let out = slopekit(&["check", "--suite", "ss_equiv", "--system", "A1", "--lo", "-2", "--hi", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let out = slopekit(&["check", "--suite", "nonexistent", "--system", "A1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sampled_checks_are_seeded() {
    let args = ["check", "--suite", "ss_equiv", "--system", "A2", "--sample", "40", "--seed", "7", "--json"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let doc: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(doc["result"][0]["failures"], json!(0));
}

#[test]
fn plain_and_latex_formats() {
    let plain = stdout(&["slopes", "table", "--preset", "GSp4", "--variant", "ss", "--format", "plain"]);
    assert!(plain.lines().next().unwrap().starts_with("operator  t"));
    let out = slopekit(&["weyl", "--preset", "A2", "--format", "latex"]);
    assert_eq!(out.status.code(), Some(2));
}
