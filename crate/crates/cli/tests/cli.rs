use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_semicomm"))
        .args(args)
        .env_remove("SEMICOMM_FORMAT")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).unwrap()
}

fn table_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".tbl").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn classify_semilattice_from_file() {
    let f = table_file("2\n0 0\n0 1\n");
    let out = run(&["classify", f.path().to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert!(r["solvable_class"].is_null());
    assert_eq!(r["supernilpotent"], "no");
}

#[test]
fn left_zero_commutator_is_identity() {
    let f = table_file("2\n0 0\n1 1\n# left zero\n");
    let out = run(&["commutator", "--args", "1,1", f.path().to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "[[0],[1]]");
}

#[test]
fn reads_stdin_and_json_tables() {
    let out = run(&["commutator", "-"], Some(r#"{"order": 2, "table": [[0, 1], [1, 0]]}"#));
    assert_eq!(stdout(&out).trim(), "[[0],[1]]");
    let out = run(&["--format", "text", "commutator"], Some("2\n0 0\n0 1\n"));
    assert_eq!(stdout(&out).trim(), "[[0,1]]");
}

#[test]
fn structural_and_definitional_agree_on_sl2() {
    let out = run(&["classify", "sl2", "--method", "both"], None);
    let r = json(&out);
    for m in ["definitional", "structural"] {
        assert_eq!(r[m]["solvable"], false);
        assert_eq!(r[m]["supernilpotent"], "no");
    }
}

#[test]
fn input_errors_exit_1() {
    let out = run(&["validate"], Some("2\n1 0\n0 0\n"));
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not associative"));
    assert_eq!(run(&["classify", "no-such-thing"], None).status.code(), Some(1));
    assert_eq!(run(&["commutator", "--args", "1", "z2"], None).status.code(), Some(1));
    assert_eq!(run(&["commutator", "--args", "2,1", "z2"], None).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"], None).status.code(), Some(1));
}

#[test]
fn resource_limit_exits_2() {
    let out = run(&["--tuple-cap", "10", "classify", "s3"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn caps_can_come_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_semicomm"))
        .args(["classify", "s3"])
        .env("SEMICOMM_TUPLE_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn series_reaches_zero_for_nilpotent_group() {
    let out = run(&["series", "--kind", "left", "q8"], None);
    let terms = json(&out);
    let terms = terms.as_array().unwrap();
    assert_eq!(terms.len(), 3);
    assert_eq!(terms.last().unwrap().as_array().unwrap().len(), 8);
}

#[test]
fn rees_build_round_trips_through_decompose() {
    let built = run(&["rees", "build", "--group", "z2", "--i", "2", "--lambda", "2", "--sandwich", "[[0,0],[0,1]]"], None);
    assert_eq!(built.status.code(), Some(0));
    let out = run(&["rees", "decompose"], Some(&stdout(&built)));
    let d = json(&out);
    assert_eq!(d["i_count"], 2);
    assert_eq!(d["lambda_count"], 2);
    assert_eq!(d["group_table"].as_array().unwrap().len(), 2);
}

#[test]
fn kernel_of_null_semigroup_is_zero() {
    let out = run(&["kernel", "null3"], None);
    let k = json(&out);
    assert_eq!(k["kernel"], serde_json::json!([0]));
    assert_eq!(k["extension_index"], 2);
}

#[test]
fn enumerate_counts_and_gate() {
    let out = run(&["enumerate", "--order", "3", "--count"], None);
    assert_eq!(json(&out)["count"], 24);
    let out = run(&["enumerate", "--order", "3", "--dedup", "iso-anti", "--count"], None);
    assert_eq!(json(&out)["count"], 18);
    let out = run(&["enumerate", "--order", "2", "--filter", "monoid"], None);
    assert_eq!(json(&out).as_array().unwrap().len(), 2);
    assert_eq!(run(&["enumerate", "--order", "5"], None).status.code(), Some(1));
}

#[test]
fn enumerated_tables_replay_through_validate() {
    let out = run(&["--format", "text", "enumerate", "--order", "2"], None);
    let text = stdout(&out);
    let tables: Vec<&str> = text.split("\n\n").filter(|t| !t.trim().is_empty()).collect();
    assert_eq!(tables.len(), 5);
    for t in tables {
        assert_eq!(run(&["validate"], Some(t)).status.code(), Some(0));
    }
}

#[test]
fn free_rho_tsv_and_json() {
    let out = run(&["--format", "tsv", "words", "rho", "--free", "--alphabet", "2", "--n", "2", "--maxlen", "8"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("length\tclasses\tnormal_forms"));
    assert_eq!(lines.count(), 9);
    let out = run(&["words", "rho", "--free", "--alphabet", "2", "--n", "2", "--maxlen", "8"], None);
    let r = json(&out);
    assert_eq!(r["lallement_violations"], 0);
    assert_eq!(r["invariant_violations"], 0);
}

#[test]
fn free_rho_one_is_commutative_closure() {
    let out = run(&["words", "rho", "--free", "--alphabet", "2", "--n", "1", "--maxlen", "4", "--full"], None);
    let r = json(&out);
    for (len, st) in r["strata"].as_array().unwrap().iter().enumerate() {
        assert_eq!(st["class_count"], len + 1);
    }
}

#[test]
fn words_checks() {
    let r = json(&run(&["words", "qn-check", "s3", "--n", "2"], None));
    assert_eq!(r["holds"], false);
    assert!(r["witness"].is_object());
    let r = json(&run(&["words", "qn-check", "sl2", "--n", "1", "--samples", "20", "--seed", "7"], None));
    assert_eq!(r["exhaustive"], false);
    let r = json(&run(&["words", "cancellative", "sl2"], None));
    assert_eq!(r["cancellative"], false);
    let r = json(&run(&["words", "embed", "z4", "--n", "1"], None));
    assert_eq!(r["embeddable"], true);
    let r = json(&run(&["words", "rho", "s3", "--n", "1"], None));
    assert_eq!(r.as_array().unwrap().len(), 2);
    let r = json(&run(&["words", "lallement", "xxyxx", "yxyxy"], None));
    assert_eq!(r[0]["shape"]["shape"], "plain");
    assert!(r[1]["shape"].is_null());
}

#[test]
fn verify_small_suites_pass() {
    let out = run(&["verify", "--n", "3", "--suites", "csi,containment,rees-roundtrip"], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["total_failed"], 0);
    assert_eq!(r["suites"].as_array().unwrap().len(), 3);
    assert_eq!(run(&["verify", "--suites", "nope"], None).status.code(), Some(1));
}

#[test]
fn tsv_only_for_tables() {
    assert_eq!(run(&["--format", "tsv", "classify", "z2"], None).status.code(), Some(1));
}
