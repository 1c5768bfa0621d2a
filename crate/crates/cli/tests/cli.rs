use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use vancycle::linalg::IntMatrix;
use vancycle::verify::golden::E2_BLOCK;
use vancycle::verify::Manifest;
use vancycle_cli::{parse_json, to_json, ClassifyOutput, OrbitOutput};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vancycle")).args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_vancycle"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Temporary file unique to the test.
fn file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("vancycle-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

/// Parse, re-emit, and demand identical bytes.
fn round_trip<T: serde::Serialize + for<'de> serde::Deserialize<'de>>(text: &str) -> T {
    let v: T = parse_json(text, "output").unwrap();
    assert_eq!(to_json(&v), text);
    v
}

#[test]
fn intmatrix() {
    assert_eq!(stdout(&run(&["intmatrix", "-e", "2", "-d", "2"])), "[[0]]\n");
    let m: IntMatrix = round_trip(&stdout(&run(&["intmatrix", "-e", "2", "-d", "5"])));
    assert_eq!(m.to_rows(), E2_BLOCK.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
    let m: IntMatrix = round_trip(&stdout(&run(&["intmatrix", "-e", "4", "-d", "6"])));
    assert_eq!((m.nrows(), m.is_antisymmetric()), (15, true));
    assert_eq!(run(&["intmatrix", "-e", "1", "-d", "4"]).status.code(), Some(2));
}

#[test]
fn orbit_of_pure_powers() {
    let out: OrbitOutput = round_trip(&stdout(&run(&["orbit", "-e", "4", "-d", "6", "--cycle", "5"])));
    assert_eq!(out.span.positions, vec![5, 11]);
    assert!(out.distinct_eigenvalues.is_some());
    let out: OrbitOutput = round_trip(&stdout(&run(&["orbit", "-e", "4", "-d", "6", "--cycle", "2"])));
    assert_eq!(out.span.positions, vec![2, 5, 8, 11, 14]);
    // the same cycle by cell
    let by_cell: OrbitOutput =
        parse_json(&stdout(&run(&["orbit", "-e", "4", "-d", "6", "--cycle", "2-1"])), "").unwrap();
    assert_eq!(by_cell, out);
    assert_eq!(run(&["orbit", "-e", "4", "-d", "6", "--cycle", "16"]).status.code(), Some(2));
    assert_eq!(run(&["orbit", "-e", "4", "-d", "6", "--cycle", "x"]).status.code(), Some(2));
}

#[test]
fn orbit_of_grids_and_polys() {
    let one = file("one.json", r#"{"e":4,"d":4,"grid":[["a","a","a"],["a","a","a"],["a","a","a"]]}"#);
    let out: OrbitOutput = round_trip(&stdout(&run(&["orbit", "--grid", one.to_str().unwrap(), "--cycle", "1-1"])));
    assert_eq!(out.span.dim, 5);
    assert_eq!(out.distinct_eigenvalues, None);
    let bad = file("bad-grid.json", r#"{"e":4,"d":4,"grid":[["a","b","a"],["c","d","e"],["f","g","h"]]}"#);
    assert_eq!(run(&["orbit", "--grid", bad.to_str().unwrap(), "--cycle", "1"]).status.code(), Some(2));
    let h = file("h.json", r#"["0","0","9","0","-1"]"#);
    let g = file("g.json", r#"["0","8","16","0","-1"]"#);
    let out: OrbitOutput =
        round_trip(&stdout(&run(&["orbit", "--h", h.to_str().unwrap(), "--g", g.to_str().unwrap(), "--cycle", "2-2"])));
    assert!(out.span.dim < 9);
    assert_eq!(run(&["orbit", "--cycle", "1"]).status.code(), Some(2));
}

#[test]
fn classify() {
    let h = file("ch.json", r#"["0","0","9","0","-1"]"#);
    let g = file("cg.json", r#"["0","8","16","0","-1"]"#);
    let out: ClassifyOutput = round_trip(&stdout(&run(&["classify", h.to_str().unwrap(), g.to_str().unwrap()])));
    assert_eq!(out.class.tag.to_string(), "O2");
    assert_eq!(out.verdicts.len(), 9);
    // stdin for one side, integers accepted as coefficients
    let g2 = file("cg2.json", r#"["0","-8","-16","0","1"]"#);
    let out: ClassifyOutput =
        parse_json(&stdout(&run_stdin(&["classify", "-", g2.to_str().unwrap()], "[0, 0, 9, 0, -1]")), "").unwrap();
    assert_eq!(out.class.tag.to_string(), "O2");
    assert_eq!(out.class.witness.pattern, "a b a / c d c / e f e");
    let x4 = file("x4.json", r#"["0","0","0","0","1"]"#);
    let out: ClassifyOutput =
        parse_json(&stdout(&run(&["classify", x4.to_str().unwrap(), x4.to_str().unwrap()])), "").unwrap();
    assert_eq!(out.class.tag.to_string(), "O1");
}

#[test]
fn classify_rejects_bad_input() {
    let h = file("rh.json", r#"["0","0","9","0","-1"]"#);
    let cubic = file("cubic.json", r#"["0","-3","0","1"]"#);
    let complex = file("complex.json", r#"["0","1","0","0","1"]"#);
    let garbage = file("garbage.json", r#"{"not": "a polynomial"}"#);
    for other in [&cubic, &complex, &garbage] {
        let o = run(&["classify", h.to_str().unwrap(), other.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{}", other.display());
        assert!(String::from_utf8_lossy(&o.stderr).contains("invalid input"));
    }
    assert_eq!(run(&["classify", h.to_str().unwrap(), "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn verify_manifest() {
    let text = stdout(&run(&["verify", "tables", "classes", "--no-timings"]));
    let m: Manifest = round_trip(&text);
    assert!(m.pass);
    assert_eq!(m.suites.iter().map(|s| s.suite.as_str()).collect::<Vec<_>>(), ["tables", "classes"]);
    assert!(m.suites.iter().all(|s| s.elapsed_ms.is_none()));
    let timed: Manifest = parse_json(&stdout(&run(&["verify", "classes"])), "").unwrap();
    assert!(timed.suites[0].elapsed_ms.is_some());
    assert_eq!(run(&["verify", "nope"]).status.code(), Some(2));
}

#[test]
fn verify_is_independent_of_jobs() {
    let args = ["verify", "pure-powers", "intersection", "--max-d", "10", "--max-d-e2", "16", "--no-timings"];
    let one = stdout(&run(&[&args[..], &["--jobs", "1"]].concat()));
    let many = stdout(&run(&[&args[..], &["--jobs", "5"]].concat()));
    assert_eq!(one, many);
    assert!(parse_json::<Manifest>(&one, "").unwrap().pass);
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("vancycle-cli-out-{}.json", std::process::id()));
    let o = run(&["intmatrix", "-e", "2", "-d", "3", "-o", path.to_str().unwrap()]);
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "[[0,-1],[1,0]]\n");
    std::fs::remove_file(path).unwrap();
}
