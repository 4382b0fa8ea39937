use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn lpa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lpa"))
        .args(args)
        .env_remove("LPA_BUDGET")
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = lpa(args);
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().expect("exit code"), report)
}

fn path(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

#[test]
fn analyze_worked_examples() {
    let (code, r) = run(&["analyze", path(&corpus("full_degenerate.json")), "--seed", "11"]);
    assert_eq!(code, 0);
    assert_eq!(r["seed"], 11);
    let res = &r["results"];
    assert_eq!(res["nondegenerate"], false);
    assert_eq!(res["full"], true);
    assert_eq!(res["a_dimension"], json!({ "v": 1 }));
    assert_eq!(res["ker_j_dims"], json!({ "v": 1 }));

    let (code, r) = run(&["analyze", path(&corpus("nondegenerate_not_full.json")), "--seed", "11"]);
    assert_eq!(code, 0);
    let res = &r["results"];
    assert_eq!(res["nondegenerate"], true);
    assert_eq!(res["full"], false);
    assert_eq!(res["sigma_dims"], json!({ "v": 1 }));
    assert_eq!(res["a_dimension"], json!({ "v": 1 }));
    assert_eq!(res["irreducible"], "no");
}

#[test]
fn malformed_input_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"graph\": \"bouquet2.json\",\n  \"field\": \n}\n").unwrap();
    let (code, r) = run(&["analyze", path(&bad), "--seed", "1"]);
    assert_eq!(code, 2);
    let msg = r["status"]["message"].as_str().unwrap();
    assert!(msg.contains("line 4"), "{msg}");

    let ragged = dir.path().join("ragged.json");
    std::fs::write(
        &ragged,
        r#"{"graph": {"vertices": ["v"], "edges": [{"name": "a", "src": "v", "dst": "v"}]},
            "field": {"kind": "Q"}, "dims": {"v": 2}, "matrices": {"a": [["1", "0"]]}}"#,
    )
    .unwrap();
    let (code, r) = run(&["analyze", path(&ragged), "--seed", "1"]);
    assert_eq!(code, 2);
    assert_eq!(r["status"]["state"], "error");
}

#[test]
fn seed_is_required() {
    let out = lpa(&["analyze", path(&corpus("generic.json"))]);
    assert_eq!(out.status.code(), Some(2));
    let out = lpa(&["verify", path(&corpus("generic.json"))]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn functor_files() {
    let dir = tempfile::tempdir().unwrap();
    let once = dir.path().join("once.json");
    let twice = dir.path().join("twice.json");
    let (code, r) = run(&["recover", path(&corpus("full_degenerate.json")), "--out", path(&once)]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["before"], json!({ "v": 2 }));
    assert_eq!(r["results"]["after"], json!({ "v": 1 }));

    let (_, r1) = run(&["nabla", path(&corpus("full_degenerate.json")), "--out", path(&once)]);
    let (_, r2) = run(&["nabla", path(&once), "--out", path(&twice)]);
    assert_eq!(r1["results"]["rep"], r2["results"]["rep"]);
    assert_eq!(std::fs::read_to_string(&once).unwrap(), std::fs::read_to_string(&twice).unwrap());
}

#[test]
fn sigma_fixes_chen_modules() {
    let dir = tempfile::tempdir().unwrap();
    let chen = dir.path().join("chen.json");
    let (code, r) = run(&[
        "chen", "cyclic", "--graph", path(&corpus("bouquet2.json")), "--cycle", "e1,e2", "--lambda", "3/2", "--out",
        path(&chen),
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["dims"], json!({ "v": 2 }));
    assert_eq!(r["results"]["full"], true);
    let (code, s) = run(&["sigma", path(&chen)]);
    assert_eq!(code, 0);
    assert_eq!(s["results"]["rep"], r["results"]["rep"]);
}

#[test]
fn emitted_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    run(&["chen", "anh-nam", "--graph", "bouquet:2", "--cycle", "e1,e2", "--poly", "1,0,1", "--out", path(&a)]);
    run(&["sigma", path(&a), "--out", path(&b)]);
    assert_eq!(std::fs::read_to_string(&a).unwrap(), std::fs::read_to_string(&b).unwrap());

    let e = dir.path().join("element.json");
    let e2 = dir.path().join("element2.json");
    std::fs::copy(corpus("generic.json"), dir.path().join("generic.json")).unwrap();
    std::fs::copy(corpus("bouquet2.json"), dir.path().join("bouquet2.json")).unwrap();
    std::fs::copy(corpus("caret_element.json"), dir.path().join("caret_element.json")).unwrap();
    let (code, _) = run(&[
        "pi-act",
        path(&dir.path().join("caret_element.json")),
        path(&corpus("glue.json")),
        "--out",
        path(&e),
    ]);
    assert_eq!(code, 0);
    let (_, r) = run(&["pi-act", path(&e), path(&corpus("vertex.json")), "--out", path(&e2)]);
    assert_eq!(r["results"]["terms"], 2);
    assert_eq!(std::fs::read_to_string(&e).unwrap(), std::fs::read_to_string(&e2).unwrap());
}

#[test]
fn figure_actions() {
    let (code, r) = run(&["pi-act", path(&corpus("caret_element.json")), path(&corpus("snip.json"))]);
    assert_eq!(code, 0);
    assert_eq!(
        r["results"]["element"]["terms"],
        json!([{ "path": { "origin": "v", "edges": [] }, "vector": ["-7", "-11"] }])
    );
    let (_, r) = run(&["pi-act", path(&corpus("caret_element.json")), path(&corpus("glue.json"))]);
    assert_eq!(
        r["results"]["element"]["terms"],
        json!([
            { "path": { "origin": "v", "edges": ["e1", "e1"] }, "vector": ["1", "-2"] },
            { "path": { "origin": "v", "edges": ["e1", "e2"] }, "vector": ["3", "5"] },
        ])
    );
    let (_, r) = run(&["pi-act", path(&corpus("nilpotent_element.json")), path(&corpus("vertex.json"))]);
    assert_eq!(r["results"]["zero"], true);
}

#[test]
fn relation_failures_and_mismatches() {
    let dir = tempfile::tempdir().unwrap();
    let element = dir.path().join("element.json");
    std::fs::write(
        &element,
        r#"{"rep": {"graph": {"vertices": ["a", "b", "c"],
                              "edges": [{"name": "f", "src": "a", "dst": "b"}, {"name": "g", "src": "b", "dst": "c"}]},
                    "field": {"kind": "Q"}, "dims": {"a": 1, "b": 1, "c": 1},
                    "matrices": {"f": [["1"]], "g": [["1"]]}},
            "terms": [{"path": {"origin": "a", "edges": []}, "vector": ["1"]}]}"#,
    )
    .unwrap();
    let op = dir.path().join("op.json");
    std::fs::write(&op, r#"{"monomials": [{"p": {"edges": ["f"]}, "q": {"edges": ["f", "g"]}}]}"#).unwrap();
    let (code, r) = run(&["pi-act", path(&element), path(&op)]);
    assert_eq!(code, 2);
    assert!(r["status"]["message"].as_str().unwrap().contains("malformed"));

    let (code, r) = run(&["verify", path(&corpus("generic.json")), "--samples", "1000", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["passed"], true);
    assert_eq!(r["seed"], 7);
}

#[test]
fn moduli_commands() {
    let (code, r) = run(&["moduli", "count", "--graph", path(&corpus("bouquet2.json")), "--dims", "1", "--field", "F2"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["classes"], 4);
    assert_eq!(r["results"]["nonzero_classes"], 3);
    assert!(r["results"].get("representatives").is_none());

    let (_, r) = run(&["moduli", "count", "--graph", "line:2", "--dims", "0,2", "--field", "F3"]);
    assert_eq!(r["results"]["irreducible"], "0");

    let (_, r) = run(&["moduli", "expected-dim", "--graph", "bouquet:3", "--dims", "4"]);
    assert_eq!(r["results"]["expected_dim"], 33);

    let out = Command::new(env!("CARGO_BIN_EXE_lpa"))
        .args(["moduli", "count", "--graph", "bouquet:2", "--dims", "2", "--field", "F3"])
        .env("LPA_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));

    let (code, r) = run(&["moduli", "chen-report", "--n", "2", "--d", "2", "--field", "F2"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["expected_dim"], 5);
}

#[test]
fn undecided_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let rep = dir.path().join("block.json");
    std::fs::write(
        &rep,
        r#"{"graph": {"vertices": ["v"], "edges": [{"name": "a", "src": "v", "dst": "v"}]},
            "field": {"kind": "Q"}, "dims": {"v": 4},
            "matrices": {"a": [["0","-1","1","0"],["1","0","0","1"],["0","0","0","-1"],["0","0","1","0"]]}}"#,
    )
    .unwrap();
    let (code, r) = run(&["indec", path(&rep), "--seed", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["indecomposable"], "unknown");
    let (code, r) = run(&["indec", path(&rep), "--seed", "2", "--require-decision"]);
    assert_eq!(code, 4);
    assert_eq!(r["status"]["code"], 4);
}

#[test]
fn isomorphism_witness() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let c = dir.path().join("c.json");
    let base = ["chen", "cyclic", "--graph", "bouquet:2", "--field", "F5", "--lambda", "2"];
    run(&[&base[..], &["--cycle", "e1,e2", "--out", path(&a)]].concat());
    run(&[&base[..], &["--cycle", "e2,e1", "--out", path(&b)]].concat());
    run(&["chen", "cyclic", "--graph", "bouquet:2", "--field", "F5", "--lambda", "3", "--cycle", "e1,e2", "--out", path(&c)]);
    let (code, r) = run(&["iso", path(&a), path(&b), "--seed", "5", "--require-decision"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["isomorphic"], "yes");
    assert!(r["results"]["witness"]["v"].is_array());
    let (_, r) = run(&["iso", path(&a), path(&c), "--seed", "5"]);
    assert_eq!(r["results"]["isomorphic"], "no");
}

#[test]
fn repro_suite() {
    let (code, r) = run(&["repro", "--seed", "7"]);
    assert_eq!(code, 0, "{r:#}");
    assert_eq!(r["results"]["failed"], 0);
    assert_eq!(r["seed"], 7);
}
