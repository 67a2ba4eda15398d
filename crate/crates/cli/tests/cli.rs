use std::io::Write;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leavitt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn clopen_graph_a_fails_on_the_loop() {
    let o = run(&["clopen", &fixture("graphA.json"), "--H", "v"]);
    assert_eq!(code(&o), 1);
    assert!(
        stdout(&o).contains("cond_i fails, cycle u:e"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn clopen_graph_b_fails_at_the_emitter() {
    let o = run(&["clopen", &fixture("graphB.json"), "--H", "v"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("cond_ii fails, vertex u"));
}

#[test]
fn clopen_graph_c_reports_complement() {
    let o = run(&["clopen", &fixture("graphC.json"), "--H", "u", "--S", "p"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("complement: H={w};S={}"));
}

#[test]
fn decompose_graph_c() {
    let o = run(&["decompose", &fixture("graphC.json")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("H={u} S={p}"), "{}", stdout(&o));
}

#[test]
fn decompose_explains_failures() {
    let o = run(&["decompose", &fixture("graphA.json"), "--explain"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("(a) fails, cycle u:e"));
    let o = run(&["decompose", &fixture("graphE2.json")]);
    assert_eq!(code(&o), 0);
    let o = run(&["decompose", &fixture("graphD.json")]);
    assert_eq!(code(&o), 1);
}

#[test]
fn algebra_ck1_gives_zero() {
    let o = run(&["algebra", &fixture("graphA.json"), "--expr", "e* e - u"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "zero");
}

#[test]
fn algebra_ideal_and_split() {
    let o = run(&[
        "algebra",
        &fixture("graphC.json"),
        "--expr",
        "p - b b*",
        "--ideal-H",
        "u",
        "--ideal-S",
        "p",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("in the ideal of H={u};S={p}: yes"));
    let o = run(&[
        "algebra",
        &fixture("graphC.json"),
        "--expr",
        "w",
        "--ideal-H",
        "u",
        "--ideal-S",
        "p",
    ]);
    assert_eq!(code(&o), 1);
}

#[test]
fn algebra_fields() {
    let o = run(&[
        "algebra",
        &fixture("graphA.json"),
        "--expr",
        "2 e e*",
        "--field",
        "p:2",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "zero");
    let o = run(&[
        "algebra",
        &fixture("graphA.json"),
        "--expr",
        "2 e e*",
        "--field",
        "p:3",
    ]);
    assert_eq!(code(&o), 0);
    assert_ne!(stdout(&o).trim(), "zero");
    for bad in ["p:29", "p:4", "r", "p:x"] {
        let o = run(&[
            "algebra",
            &fixture("graphA.json"),
            "--expr",
            "e",
            "--field",
            bad,
        ]);
        assert_eq!(code(&o), 2, "{bad}");
    }
}

#[test]
fn algebra_parse_error_is_input_error() {
    let o = run(&["algebra", &fixture("graphA.json"), "--expr", "e +"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("column"));
}

#[test]
fn compatible_graph_c() {
    let o = run(&[
        "compatible",
        &fixture("graphC.json"),
        "--H1",
        "u",
        "--H2",
        "w",
    ]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("p: 0 + 1 = 1"));
    assert!(out.contains("path counting into H1 ∪ H2: fails at p"));
    let o = run(&[
        "compatible",
        &fixture("graphC.json"),
        "--H1",
        "u",
        "--H2",
        "u",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn unknown_flag_exits_2() {
    let o = run(&["clopen", &fixture("graphA.json"), "--H", "v", "--bogus"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("Usage"));
}

#[test]
fn bad_inputs_exit_2() {
    let o = run(&["analyze", "/nonexistent/graph.json"]);
    assert_eq!(code(&o), 2);
    let o = run(&["clopen", &fixture("graphA.json"), "--H", "nope"]);
    assert_eq!(code(&o), 2);
    let o = run(&["clopen", &fixture("graphA.json"), "--H", "u"]);
    assert_eq!(code(&o), 2, "{{u}} is not hereditary");

    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "{{\"vertices\": [\"u\"],\n \"bundles\": [oops]}}").unwrap();
    let o = run(&["analyze", f.path().to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"{{"vertices":["u","v"],"bundles":[{{"id":"e","source":"u","target":"v","multiplicity":0}}]}}"#).unwrap();
    let o = run(&["analyze", f.path().to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains('e'));
}

#[test]
fn caps_are_enforced() {
    let o = run(&["--vertex-cap", "2", "analyze", &fixture("graphC.json")]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("resource limit"));
    let o = run(&[
        "analyze",
        &fixture("graphC.json"),
        "--sample-cap",
        "1",
        "--json",
    ]);
    assert_eq!(code(&o), 0);
}

#[test]
fn analyze_json_is_deterministic_and_versioned() {
    for name in [
        "graphA.json",
        "graphB.json",
        "graphC.json",
        "graphD.json",
        "graphE2.json",
    ] {
        let a = run(&["analyze", &fixture(name), "--json"]);
        let b = run(&["analyze", &fixture(name), "--json"]);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout);
        let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
        assert_eq!(v["schema"], "report-v1");
        assert_eq!(v["lattice"]["passed"], true);
        assert_eq!(v["decomposition"]["routes_agree"], true);
    }
    let c: serde_json::Value =
        serde_json::from_slice(&run(&["analyze", &fixture("graphC.json"), "--json"]).stdout)
            .unwrap();
    assert_eq!(c["pairs"].as_array().unwrap().len(), 6);
    assert_eq!(c["naive_an"]["offending_vertex"], "p");
    assert_eq!(c["decomposition"]["conditions"]["witness"]["h"][0], "u");
}

#[test]
fn analyze_text() {
    let o = run(&["analyze", &fixture("graphC.json"), "--text"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("decomposable: yes"));
}

#[test]
fn lattice_exports() {
    let o = run(&["lattice", &fixture("graphC.json"), "--dot"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).matches("label=").count(), 6);
    let o = run(&["lattice", &fixture("graphD.json"), "--dot"]);
    let out = stdout(&o);
    assert_eq!(out.matches("label=").count(), 2);
    assert_eq!(out.matches("->").count(), 1);
    let o = run(&["dot", &fixture("graphB.json")]);
    assert!(stdout(&o).contains('∞'));
}

#[test]
fn selfcheck_passes_on_fixtures() {
    for name in [
        "graphA.json",
        "graphB.json",
        "graphC.json",
        "graphC-finite.json",
        "graphD.json",
        "graphE2.json",
    ] {
        let o = run(&["selfcheck", &fixture(name)]);
        assert_eq!(code(&o), 0, "{name}: {}", stdout(&o));
    }
}
