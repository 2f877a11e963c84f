use genmaj::cli::run;
use std::path::Path;
use std::process::Command;
use tempfile::TempDir;

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.display().to_string()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("genmaj").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

const I1: &str = r#"{"a":[1],"b":[2],"c":[2],"d":[3]}"#;
const I3: &str = r#"{"a":[0],"b":[5],"c":[2],"d":[1]}"#;

#[test]
fn check_exact_i1() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "i1.json", I1);
    let (code, out, _) = call(&["check", "--mode", "exact", "--input", &f]);
    assert_eq!(code, 0);
    assert!(
        out.contains(r#""verdict":"exists","witness":[2,2]"#),
        "{out}"
    );
}

#[test]
fn check_weak_i3_reports_failed_condition() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "i3.json", I3);
    let (code, out, _) = call(&["check", "--mode", "weak", "--input", &f]);
    assert_eq!(code, 1);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["verdict"], "not-exists");
    let report = &doc["condition_reports"][0];
    assert_eq!(report["side"], "ii");
    assert_eq!(report["lhs"], 2);
    assert_eq!(report["satisfied"], false);
}

#[test]
fn trace_and_witness_detail_are_optional() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "i1.json", I1);
    let (_, plain, _) = call(&["check", "--mode", "exact", "--input", &f]);
    let (_, full, _) = call(&[
        "check",
        "--mode",
        "exact",
        "--input",
        &f,
        "--trace",
        "--emit-witness",
    ]);
    assert!(!plain.contains("\"trace\"") && !plain.contains("witness_detail"));
    let doc: serde_json::Value = serde_json::from_str(&full).unwrap();
    assert_eq!(doc["trace"].as_array().unwrap().len(), 2);
    assert_eq!(
        doc["witness_detail"]["weak_witness"],
        serde_json::json!([3, 2])
    );
    assert_eq!(doc["witness_detail"]["homogenization"]["f"], 2);
}

#[test]
fn shared_value_is_rejected() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "bad.json", r#"{"a":[],"b":[],"c":[2],"d":[2]}"#);
    let (code, _, err) = call(&["check", "--mode", "weak", "--input", &f]);
    assert_eq!(code, 2);
    assert!(err.contains("c and d share value 2"), "{err}");
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (
            "ascent.json",
            r#"{"a":[1,2],"b":[0],"c":[3],"d":[4,5]}"#,
            "not nonincreasing",
        ),
        ("sizes.json", r#"{"a":[1],"b":[],"c":[3],"d":[4]}"#, ""),
        (
            "extra.json",
            r#"{"a":[1],"b":[1],"c":[3],"d":[4],"e":[]}"#,
            "",
        ),
        ("junk.json", "not json", ""),
    ];
    for (name, body, needle) in cases {
        let f = write(dir.path(), name, body);
        let (code, _, err) = call(&["check", "--mode", "weak", "--input", &f]);
        assert_eq!(code, 2, "{name}");
        assert!(err.contains(needle), "{name}: {err}");
    }
    let (code, _, _) = call(&["check", "--mode", "sideways", "--input", "x"]);
    assert_eq!(code, 2);
    let (code, _, _) = call(&["check", "--mode", "weak", "--input", "/no/such/file"]);
    assert_eq!(code, 2);
    let (code, _, _) = call(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn help_exits_0() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("check"));
}

#[test]
fn verify_accepts_list_forms() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "i1.json", I1);
    let (code, out, _) = call(&["verify", "--input", &f, "--g", "[3,2]", "--mode", "weak"]);
    assert_eq!(code, 0, "{out}");
    let (code, _, _) = call(&["verify", "--input", &f, "--g", "3,2", "--mode", "exact"]);
    assert_eq!(code, 1);
    let (code, out, _) = call(&["verify", "--input", &f, "--g", "2,2", "--mode", "exact"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["holds"], true);
    let (code, _, err) = call(&["verify", "--input", &f, "--g", "2", "--mode", "weak"]);
    assert_eq!(code, 2, "{err}");
    let (code, _, _) = call(&["verify", "--input", &f, "--g", "1,2", "--mode", "weak"]);
    assert_eq!(code, 2);
}

#[test]
fn oracle_command() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "i1.json", I1);
    let (code, out, _) = call(&[
        "oracle", "--input", &f, "--mode", "exact", "--lo", "0", "--hi", "4",
    ]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["found"], serde_json::json!([2, 2]));
    assert_eq!(doc["exhausted"], true);

    let f3 = write(dir.path(), "i3.json", I3);
    let (code, out, _) = call(&[
        "oracle", "--input", &f3, "--mode", "weak", "--lo", "-1", "--hi", "6",
    ]);
    assert_eq!(code, 1);
    assert!(out.contains(r#""found":null"#));
    let (code, _, _) = call(&[
        "oracle", "--input", &f3, "--mode", "weak", "--lo", "5", "--hi", "1",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn fuzz_is_deterministic_and_agrees() {
    let dir = TempDir::new().unwrap();
    let d = dir.path().display().to_string();
    let args = [
        "fuzz",
        "--instances",
        "200",
        "--max-len",
        "3",
        "--max-val",
        "4",
        "--seed",
        "5",
        "--dump-dir",
        &d,
    ];
    let (code, first, _) = call(&args);
    let (_, second, _) = call(&args);
    assert_eq!(code, 0, "{first}");
    assert_eq!(first, second);
    let doc: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(doc["agreed"], 200);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);

    let (code, _, _) = call(&[
        "fuzz",
        "--instances",
        "1",
        "--max-len",
        "0",
        "--max-val",
        "4",
        "--seed",
        "1",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn binary_output_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "i1.json", I1);
    let exe = env!("CARGO_BIN_EXE_genmaj");
    let runs: Vec<_> = (0..2)
        .map(|_| {
            Command::new(exe)
                .args(["check", "--mode", "weak", "--input", &f, "--trace"])
                .output()
                .unwrap()
        })
        .collect();
    assert_eq!(runs[0].status.code(), Some(0));
    assert_eq!(runs[0].stdout, runs[1].stdout);
    let bad = Command::new(exe).args(["check"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
