use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn ioalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ioalg")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let o = ioalg(&all);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)));
    (code(&o), v)
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

const B4_LEQ: &str = r#"[[0,0],[0,1],[0,2],[0,3],[1,1],[1,3],[2,2],[2,3],[3,3]]"#;
const B4_JSON: &str =
    r#"{"elements": ["0", "a", "a'", "1"], "leq": [[1,1,1,1], [0,1,0,1], [0,0,1,1], [0,0,0,1]]}"#;

#[test]
fn derive_example() {
    let dir = TempDir::new().unwrap();
    let norms = write(&dir, "n.ion", "p |~ q\n");
    let o = ioalg(&["derive", "--system", "1", "--norms", &norms, "--query", "p&r |~ q|r"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = ioalg(&["derive", "--system", "1", "--norms", &norms, "--query", "p|r |~ q"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn check_identity_from_files() {
    let dir = TempDir::new().unwrap();
    let alg = write(&dir, "b4.json", B4_JSON);
    let prec = write(&dir, "prec.json", B4_LEQ);
    let o = ioalg(&["check", "--algebra", &alg, "--prec", &prec, "--props", "SI"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&ioalg(&["check", "--algebra", "b4", "--prec", B4_LEQ, "--props", "SI,WO,AND,OR"])), 0);
    assert_eq!(code(&ioalg(&["check", "--algebra", "chain3", "--prec", "[[2,0]]", "--props", "SI"])), 1);
    // usage and input errors
    assert_eq!(code(&ioalg(&["check", "--algebra", "nope", "--prec", "[]"])), 2);
    assert_eq!(code(&ioalg(&["check", "--algebra", "b4", "--prec", "[[0,9]]"])), 2);
    assert_eq!(code(&ioalg(&["check", "--algebra", "b4", "--prec", "[]", "--props", "XX"])), 2);
    assert_eq!(code(&ioalg(&["check", "--algebra", "b4", "--prec", "[]", "--strict-boolean"])), 2);
    assert_eq!(code(&ioalg(&["frobnicate"])), 2);
    let o = ioalg(&["slanted", "--algebra", "b4", "--prec", "[]", "--ineq", "<>p <="]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn text_and_json_verdicts_agree() {
    let cases: [&[&str]; 4] = [
        &["check", "--algebra", "chain3", "--prec", "[[2,0]]"],
        &["check", "--algebra", "b4", "--prec", B4_LEQ],
        &["slanted", "--algebra", "chain3", "--prec", "[[0,2],[1,2],[2,2]]", "--ineq", "<>p <= p"],
        &["slanted", "--algebra", "b4", "--prec", B4_LEQ, "--ineq", "<>p <= p"],
    ];
    for args in cases {
        let text = ioalg(args);
        let (c, v) = json(args);
        assert_eq!(code(&text), c, "{args:?}");
        let holds = v.get("holds").or_else(|| v.get("valid")).and_then(Value::as_bool).expect("verdict field");
        assert_eq!(holds, c == 0, "{args:?}");
    }
}

#[test]
fn close_output_reloads() {
    let dir = TempDir::new().unwrap();
    let (c, v) = json(&["close", "--algebra", "b4", "--prec", "[[1,1]]", "--system", "2"]);
    assert_eq!(c, 0);
    let sub = write(&dir, "closed.json", &v["subordination"].to_string());
    let (c, checked) = json(&["check", "--sub", &sub, "--props", "SI,WO,AND,OR,TOP"]);
    assert_eq!(c, 0, "{checked}");
    // closing again adds nothing
    let (_, again) = json(&["close", "--sub", &sub, "--system", "2"]);
    assert_eq!(again["added"], 0);
    assert_eq!(again["subordination"]["prec"], v["subordination"]["prec"]);
}

#[test]
fn completion_output_is_an_algebra() {
    let dir = TempDir::new().unwrap();
    for name in ["n5", "antichain2", "b4"] {
        let (c, v) = json(&["completion", "--algebra", name]);
        assert_eq!(c, 0);
        let n = v["elements"].as_array().unwrap().len();
        let mut alg = v.clone();
        alg.as_object_mut().unwrap().remove("embed");
        let path = write(&dir, &format!("{name}.json"), &alg.to_string());
        let (c, again) = json(&["completion", "--algebra", &path]);
        assert_eq!(c, 0);
        // a complete lattice is its own completion
        assert_eq!(again["elements"].as_array().unwrap().len(), n, "{name}");
    }
}

#[test]
fn help_documents_grammars() {
    let o = ioalg(&["--help"]);
    let help = String::from_utf8_lossy(&o.stdout);
    for needle in ["Algebra JSON:", "\"hasse\"", "Norm file:", "body |~ head", "Formulas", "Modal inequalities", "Exit codes"] {
        assert!(help.contains(needle), "missing {needle}");
    }
}

#[test]
fn verify_replays_an_instance() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "inst.json", &format!(r#"{{"algebra": "b4", "prec": {B4_LEQ}}}"#));
    let o = ioalg(&["verify", "--check", "prec-in-leq-iff-inflationary", "--instance", &inst]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(code(&ioalg(&["verify", "--check", "no-such-check", "--instance", &inst])), 2);
    // counterexample entries from a report are accepted directly
    let cx = write(&dir, "cx.json", &format!(r#"{{"carrier": "b4", "prec": {B4_LEQ}, "lhs": true, "rhs": false}}"#));
    let (c, v) = json(&["verify", "--check", "prec-in-leq-iff-inflationary", "--instance", &cx]);
    assert_eq!((c, v["verdict"].as_str()), (0, Some("pass")));
    let neg = write(&dir, "neg.json", r#"{"carrier": "antichain2", "prec": [], "neg": [1, 0], "lhs": null, "rhs": null}"#);
    let (c, v) = json(&["verify", "--check", "neg-sigma-antitone", "--instance", &neg]);
    assert_eq!((c, v["verdict"].as_str()), (0, Some("pass")));
}

#[test]
fn verify_small_corpus_writes_report() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("report.json");
    let o = ioalg(&["verify", "--corpus", "chain2,chain3", "--no-timing", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let report: Value = serde_json::from_str(&fs::read_to_string(Path::new(&out)).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    assert!(report.get("timing").is_none_or(Value::is_null));
}

#[test]
fn out_lists_and_tests_membership() {
    let dir = TempDir::new().unwrap();
    let norms = write(&dir, "n.ion", "# one norm\np |~ q\n\n");
    let o = ioalg(&["out", "--system", "1", "--norms", &norms, "--gamma", "p", "--query", "q | r"]);
    assert_eq!(code(&o), 0);
    let o = ioalg(&["out", "--system", "1", "--norms", &norms, "--gamma", "r", "--query", "q"]);
    assert_eq!(code(&o), 1);
    let o = ioalg(&["out", "--system", "1", "--norms", &norms, "--gamma", "p", "--query", "q", "--modal"]);
    assert_eq!(code(&o), 0);
    let o = ioalg(&["out", "--system", "1", "--norms", &norms, "--gamma", "p"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains('q'));
}

#[test]
fn dual_on_identity() {
    let (c, v) = json(&["dual", "--algebra", "b4", "--prec", B4_LEQ, "--check", "reflexive,transitive"]);
    assert_eq!(c, 0, "{v}");
}
