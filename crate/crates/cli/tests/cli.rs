use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn qacm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qacm")).args(args).current_dir(dir()).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = qacm(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Compares against `tests/golden/<name>`; `QACM_UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, args: &[&str]) {
    let got = stdout(args);
    let path = dir().join("tests/golden").join(name);
    if std::env::var_os("QACM_UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(got, want, "golden mismatch for {name}");
}

const SESSION: &[&str] = &["--session", "canonical.qacm"];

fn with_session<'a>(args: &[&'a str]) -> Vec<&'a str> {
    args.iter().copied().chain(SESSION.iter().copied()).collect()
}

#[test]
fn golden_tables() {
    let cases: &[(&str, &[&str])] = &[
        ("cohomology_e0.tsv", &["cohomology-table", "--about", "E0", "--range", "0..8"]),
        ("hilbert_r.tsv", &["hilbert", "--about", "R", "--range", "0..8"]),
        ("hilbert_il.tsv", &["hilbert", "--about", "L", "--range", "0..8"]),
        ("link_l.tsv", &["link", "--about", "L", "--ci", "x0,x4"]),
        ("etype_l.tsv", &["etype", "--about", "L"]),
        ("gb_l.tsv", &["gb", "--about", "L"]),
        ("mf_e0.tsv", &["mf", "--about", "E0"]),
        ("periodicity_e0.tsv", &["periodicity", "--about", "E0", "--range", "0..8"]),
        ("decompose_e0sum.tsv", &["decompose", "--about", "E0SUM"]),
        ("acm_skew.tsv", &["acm-check", "--about", "SKEW"]),
        ("mcm_e0.tsv", &["mcm-check", "--about", "E0"]),
        ("regularity_e0.tsv", &["regularity", "--about", "E0"]),
        ("construct_e0.tsv", &["construct-e0"]),
        ("fingerprint_ll.tsv", &["fingerprint", "--about", "LL"]),
        ("same_class_l_ci.tsv", &["same-class", "--about", "L", "--with", "CI"]),
        ("degree_genus_skew.tsv", &["degree-genus", "--about", "SKEW"]),
        ("hilbert_r.json", &["hilbert", "--about", "R", "--range", "0..8", "--format", "json"]),
        ("mf_e0.json", &["mf", "--about", "E0", "--format", "json"]),
        ("link_l.json", &["link", "--about", "L", "--ci", "x0,x4", "--format", "json"]),
    ];
    for (name, args) in cases {
        golden(name, &with_session(args));
    }
}

#[test]
fn canonical_session_is_the_default() {
    let explicit = stdout(&with_session(&["hilbert", "--about", "R", "--range", "0..8"]));
    assert_eq!(stdout(&["hilbert", "--about", "R", "--range", "0..8"]), explicit);
    let values: Vec<&str> = explicit.lines().skip(1).map(|l| l.split('\t').nth(1).unwrap()).collect();
    assert_eq!(values, ["1", "5", "14", "30", "55", "91", "140", "204", "285"]);
}

fn validator() -> jsonschema::Validator {
    let text = std::fs::read_to_string(dir().join("schema/output.schema.json")).unwrap();
    let schema: serde_json::Value = serde_json::from_str(&text).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

#[test]
fn json_output_matches_schema() {
    let v = validator();
    let cases: &[&[&str]] = &[
        &["gb", "--about", "E0"],
        &["gb", "--about", "CI"],
        &["etype", "--about", "L"],
        &["etype", "--about", "CI"],
        &["hilbert", "--about", "E0"],
        &["hilbert", "--about", "R", "--range", "0..3"],
        &["cohomology-table", "--about", "E0"],
        &["cohomology-table", "--about", "KSKEW"],
        &["acm-check", "--about", "L"],
        &["mcm-check", "--about", "QL"],
        &["regularity", "--about", "QL"],
        &["construct-e0", "--line", "x0, x3, x4"],
        &["mf", "--about", "E0PAIR"],
        &["mf", "--about", "R"],
        &["periodicity", "--about", "E0SUM"],
        &["decompose", "--about", "E0SUM"],
        &["decompose", "--about", "KCI"],
        &["link", "--about", "LL", "--ci", "x0, x4"],
        &["fingerprint", "--about", "CI"],
        &["same-class", "--about", "L", "--with", "LL"],
        &["degree-genus", "--about", "CI"],
    ];
    for args in cases {
        let mut full = with_session(args);
        full.extend(["--format", "json"]);
        let doc: serde_json::Value = serde_json::from_str(&stdout(&full)).unwrap();
        let errors: Vec<String> = v.iter_errors(&doc).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
        assert_eq!(doc["command"], args[0]);
    }
    let bogus = serde_json::json!({"command": "hilbert", "about": "R", "result": {"values": "nope"}});
    assert!(!v.is_valid(&bogus));
}

#[test]
fn output_is_deterministic() {
    for args in [&["mf", "--about", "E0PAIR"][..], &["gb", "--about", "SKEW"], &["decompose", "--about", "E0SUM"]] {
        let a = stdout(&[args, &["--seed", "7"]].concat());
        let b = stdout(&[args, &["--seed", "7"]].concat());
        let c = stdout(&[args, &["--seed", "123456"]].concat());
        assert_eq!(a, b);
        assert_eq!(a, c);
    }
}

fn failure(args: &[&str]) -> (i32, String) {
    let out = qacm(args);
    (out.status.code().unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn input_errors_exit_with_one() {
    let (code, err) = failure(&["hilbert"]);
    assert_eq!(code, 1);
    assert!(err.contains("--about"));

    let (code, err) = failure(&["hilbert", "--about", "NOPE"]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown name `NOPE`"));

    assert_eq!(failure(&["decompose", "--about", "QL"]).0, 1);
    assert_eq!(failure(&["link", "--about", "L", "--ci", "x0,x0"]).0, 1);
    assert_eq!(failure(&["link", "--about", "L", "--ci", "x1,x3"]).0, 1);
    assert_eq!(failure(&["fingerprint", "--about", "E0"]).0, 1);
    assert_eq!(failure(&["hilbert", "--about", "R", "--range", "3..1"]).0, 1);
    assert_eq!(failure(&["no-such-command"]).0, 1);
    assert_eq!(failure(&["hilbert", "--about", "R", "--session", "missing.qacm"]).0, 1);
    assert!(qacm(&["--help"]).status.success());
}

#[test]
fn session_errors_point_at_the_line() {
    let tmp = std::env::temp_dir().join(format!("qacm-bad-{}.qacm", std::process::id()));
    std::fs::write(&tmp, "field 32003\nquadric x0*x1+x2*x3+x4^2\nideal A: x0, x7\n").unwrap();
    let (code, err) = failure(&["hilbert", "--about", "A", "--session", tmp.to_str().unwrap()]);
    std::fs::remove_file(&tmp).ok();
    assert_eq!(code, 1);
    assert!(err.contains("line 3"), "{err}");

    let tmp = std::env::temp_dir().join(format!("qacm-degenerate-{}.qacm", std::process::id()));
    std::fs::write(&tmp, "quadric x0*x1+x2*x3\n").unwrap();
    let (code, err) = failure(&["hilbert", "--about", "R", "--session", tmp.to_str().unwrap()]);
    std::fs::remove_file(&tmp).ok();
    assert_eq!(code, 1);
    assert!(err.contains("degenerate"), "{err}");
}

#[test]
fn custom_sessions() {
    let tmp = std::env::temp_dir().join(format!("qacm-custom-{}.qacm", std::process::id()));
    std::fs::write(
        &tmp,
        "field 101\nvars x0 x1 x2 x3 x4\nquadric x0*x1+x2*x3+x4^2\nmodule M: E0(1)^2 + R(2)\nideal T: x0, x3, x4\n",
    )
    .unwrap();
    let p = tmp.to_str().unwrap();
    let d = stdout(&["decompose", "--about", "M", "--session", p]);
    assert!(d.contains("e0_twists\t-1,-1\n"), "{d}");
    assert!(d.contains("free_twists\t-2\n"), "{d}");
    let same = stdout(&["same-class", "--about", "L", "--with", "T", "--session", p]);
    assert!(same.contains("same_class\ttrue"), "{same}");
    std::fs::remove_file(&tmp).ok();
}

#[test]
fn shipped_session_exists() {
    assert!(Path::new(&dir().join("canonical.qacm")).exists());
}
