//! End-to-end checks of the raagqi binary: subcommand outputs, exit codes,
//! byte-level determinism and file emission.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use raagqi_core::fixtures;
use raagqi_core::graph::SimplicialGraph;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_raagqi"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

fn write_fixture(dir: &Path, name: &str) -> PathBuf {
    let path = dir.join(format!("{name}.json"));
    let fixture = fixtures::by_name(name).expect("fixture exists");
    fs::write(&path, fixture.graph.to_json()).unwrap();
    path
}

#[test]
fn classify_hex2() {
    let dir = tempfile::tempdir().unwrap();
    let hex2 = write_fixture(dir.path(), "hex2");
    let value = stdout_json(&run(&["classify", hex2.to_str().unwrap()]));
    assert_eq!(value["schema"], "raagqi/1");
    assert_eq!(value["type_ii"], true);
    assert_eq!(value["weak_type_i"], false);
    assert_eq!(value["separating_star_vertices"], serde_json::json!(["a1"]));

    let explained = stdout_json(&run(&["classify", hex2.to_str().unwrap(), "--explain"]));
    assert!(explained["witnesses"]["weak_type_i_reason"]
        .as_str()
        .unwrap()
        .contains("a1"));
}

#[test]
fn prime_graph_with_emissions() {
    let dir = tempfile::tempdir().unwrap();
    let hex2 = write_fixture(dir.path(), "hex2");
    let dot = dir.path().join("out.dot");
    let complex = dir.path().join("complex.json");
    let value = stdout_json(&run(&[
        "prime-graph",
        hex2.to_str().unwrap(),
        "--emit-dot",
        dot.to_str().unwrap(),
        "--emit-complex",
        complex.to_str().unwrap(),
    ]));
    assert_eq!(value["index"], 2);
    assert_eq!(value["walls"], 1);
    let prime: SimplicialGraph =
        SimplicialGraph::parse_json(&value["prime_graph"].to_string()).unwrap();
    assert_eq!(prime.vertex_count(), 6);
    assert_eq!(prime.edge_count(), 6);

    // DOT lists exactly the prime graph's edges (no isolated vertices here).
    let dot_text = fs::read_to_string(&dot).unwrap();
    let dot_edges = dot_text.lines().filter(|l| l.contains("--")).count();
    assert_eq!(dot_edges, prime.edge_count());
    for v in prime.vertices() {
        assert!(dot_text.contains(prime.label(v)));
    }

    let complex_value: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&complex).unwrap()).unwrap();
    assert_eq!(complex_value["ultrafilters"].as_array().unwrap().len(), 2);
    assert_eq!(complex_value["halfspaces"].as_array().unwrap().len(), 2);
    assert_eq!(complex_value["edges"].as_array().unwrap().len(), 1);
}

#[test]
fn qi_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let hex2 = write_fixture(dir.path(), "hex2");
    let c6 = write_fixture(dir.path(), "c6");
    let ph = write_fixture(dir.path(), "ph");
    let e819b = write_fixture(dir.path(), "ex819b");
    let f2 = write_fixture(dir.path(), "f2");
    let f3 = write_fixture(dir.path(), "f3");

    let yes = run(&["qi", hex2.to_str().unwrap(), c6.to_str().unwrap()]);
    assert_eq!(yes.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&yes.stdout).unwrap();
    assert_eq!(value["verdict"], "yes");
    assert_eq!(value["route"], "typeII-prime-graph");

    let no = run(&["qi", ph.to_str().unwrap(), e819b.to_str().unwrap()]);
    assert_eq!(no.status.code(), Some(1));

    let unknown = run(&["qi", f2.to_str().unwrap(), f3.to_str().unwrap()]);
    assert_eq!(unknown.status.code(), Some(2));

    let upgraded = run(&[
        "qi",
        f2.to_str().unwrap(),
        f3.to_str().unwrap(),
        "--budget",
        "2",
    ]);
    assert_eq!(upgraded.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&upgraded.stdout).unwrap();
    assert_eq!(value["route"], "special-subgroup-search");
}

#[test]
fn special_and_ball() {
    let dir = tempfile::tempdir().unwrap();
    let f2 = write_fixture(dir.path(), "f2");
    let value = stdout_json(&run(&[
        "special",
        f2.to_str().unwrap(),
        "--domain",
        r#"[[],[["a",1]]]"#,
    ]));
    assert_eq!(value["index"], 2);
    assert_eq!(value["defining_graph"]["vertices"].as_array().unwrap().len(), 3);
    assert_eq!(value["defining_graph"]["edges"].as_array().unwrap().len(), 0);

    let k2 = write_fixture(dir.path(), "k2");
    let ball = stdout_json(&run(&["ball", k2.to_str().unwrap(), "-r", "1"]));
    assert_eq!(ball["count"], 5);

    let capped = run(&["ball", f2.to_str().unwrap(), "-r", "6", "--cap", "10"]);
    assert_eq!(capped.status.code(), Some(65));

    let non_convex = run(&[
        "special",
        k2.to_str().unwrap(),
        "--domain",
        r#"[[],[["a",1],["b",1]]]"#,
    ]);
    assert_eq!(non_convex.status.code(), Some(65));
    assert!(String::from_utf8_lossy(&non_convex.stderr).contains("convex"));
}

#[test]
fn fixtures_round_trip() {
    let list = stdout_json(&run(&["fixtures"]));
    let names: Vec<String> = list["fixtures"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["name"].as_str().unwrap().to_string())
        .collect();
    assert!(names.contains(&"hex2".to_string()));
    for name in names {
        let emitted = run(&["fixtures", &name]);
        let text = String::from_utf8(emitted.stdout).unwrap();
        let parsed = SimplicialGraph::parse(&text).unwrap();
        assert_eq!(parsed, fixtures::by_name(&name).unwrap().graph, "{name}");
    }
}

#[test]
fn deterministic_output() {
    let dir = tempfile::tempdir().unwrap();
    let hex3 = write_fixture(dir.path(), "hex3");
    for args in [
        vec!["classify", hex3.to_str().unwrap()],
        vec!["prime", hex3.to_str().unwrap()],
        vec!["prime-graph", hex3.to_str().unwrap()],
        vec!["out", hex3.to_str().unwrap()],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.stdout, second.stdout, "{args:?} not byte-identical");
    }
}

#[test]
fn error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "a a\n").unwrap();
    let parse = run(&["classify", bad.to_str().unwrap()]);
    assert_eq!(parse.status.code(), Some(65));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("self-loop"));

    let usage = run(&["frobnicate"]);
    assert_eq!(usage.status.code(), Some(64));

    let missing = run(&["classify", "/nonexistent/file.json"]);
    assert_eq!(missing.status.code(), Some(65));

    let c4 = write_fixture(dir.path(), "c4");
    let not_type_ii = run(&["prime-graph", c4.to_str().unwrap()]);
    assert_eq!(not_type_ii.status.code(), Some(65));
    assert!(String::from_utf8_lossy(&not_type_ii.stderr).contains("type II"));
}

#[test]
fn stdin_input() {
    use std::io::Write;
    let mut child = bin()
        .args(["classify", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(b"a b\nb c\n")
        .unwrap();
    let output = child.wait_with_output().unwrap();
    let value: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(value["weak_type_ii"], false);
}

#[test]
fn edge_list_input_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c5.txt");
    fs::write(&path, fixtures::cycle(5, "v").to_edge_list()).unwrap();
    let value = stdout_json(&run(&["classify", path.to_str().unwrap()]));
    assert_eq!(value["weak_type_i"], true);
}
