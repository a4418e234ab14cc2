use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use braidpbw_cli::corpus_files::write_corpus;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn corpus() -> PathBuf {
    root().join("corpus")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidpbw"))
        .args(args)
        .env_remove("BRAIDPBW_DEGREE_CAP")
        .output()
        .expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("braidpbw-test-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&d);
    fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn check_exit_codes() {
    let ok = run(&["check", "--input", path(&corpus().join("entries/sweedler/H.json"))]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = run(&["--format", "json", "check", "--input", path(&corpus().join("broken/sweedler_bad_antipode.json"))]);
    assert_eq!(bad.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_slice(&bad.stdout).unwrap();
    assert_eq!(doc["pass"], false);
    assert!(!doc["report"]["violations"][0]["witness"].as_array().unwrap().is_empty());
    let malformed = run(&["check", "--input", path(&corpus().join("broken/truncated.json"))]);
    assert_eq!(malformed.status.code(), Some(2));
    let missing = run(&["check", "--input", "/nonexistent/H.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn shipped_corpus_matches_builders() {
    let d = scratch("emit");
    write_corpus(&d).unwrap();
    for sub in ["entries", "spaces"] {
        let mut shipped: Vec<PathBuf> = walk(&corpus().join(sub));
        let mut fresh: Vec<PathBuf> = walk(&d.join(sub));
        shipped.sort();
        fresh.sort();
        assert_eq!(shipped.len(), fresh.len());
        for (a, b) in shipped.iter().zip(&fresh) {
            assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap(), "{}", a.display());
        }
    }
}

fn walk(dir: &Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    for e in fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        if p.is_dir() {
            out.extend(walk(&p));
        } else {
            out.push(p);
        }
    }
    out
}

#[test]
fn corpus_passes_and_detects_edits() {
    let ok = run(&["corpus", "--dir", path(&corpus().join("entries"))]);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stdout));

    let d = scratch("edited");
    write_corpus(&d).unwrap();
    let expect = d.join("entries/sweedler/expect.json");
    let text = fs::read_to_string(&expect).unwrap().replace("\"r_dim\": 2", "\"r_dim\": 3");
    fs::write(&expect, text).unwrap();
    let red = run(&["corpus", "--dir", path(&d.join("entries"))]);
    assert_eq!(red.status.code(), Some(1));
    let out = String::from_utf8_lossy(&red.stdout);
    assert!(out.lines().any(|l| l.starts_with("sweedler") && l.contains("FAIL") && l.contains("r_dim")));

    let empty = scratch("empty");
    assert_eq!(run(&["corpus", "--dir", path(&empty)]).status.code(), Some(2));
}

#[test]
fn pipeline_reports() {
    let e = corpus().join("entries");
    let h4 = run(&[
        "--format",
        "json",
        "pipeline",
        "--input",
        path(&e.join("sweedler/H.json")),
        "--sub",
        path(&e.join("sweedler/K.json")),
        "--degree",
        "3",
    ]);
    assert_eq!(h4.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&h4.stdout).unwrap();
    assert_eq!(doc["coinvariants"]["dim"], 2);
    assert_eq!(doc["coinvariants"]["braiding"][1][1], "-x⊗x");
    assert_eq!(doc["pbw"]["verdict"], "PBW_TYPE_TRUE");

    let taft = run(&[
        "--format",
        "json",
        "pipeline",
        "--input",
        path(&e.join("taft3/H.json")),
        "--sub",
        path(&e.join("taft3/K.json")),
        "--degree",
        "3",
    ]);
    let doc: serde_json::Value = serde_json::from_slice(&taft.stdout).unwrap();
    assert_eq!(doc["coinvariants"]["braiding_symmetric"], false);
    assert_eq!(doc["pbw"]["verdict"], "PBW_TYPE_FALSE");
    assert_eq!(doc["pbw"]["first_failure_degree"], 2);

    let ub = run(&["--format", "json", "pipeline", "--input", path(&e.join("solvable_enveloping/H.json")), "--degree", "6"]);
    let doc: serde_json::Value = serde_json::from_slice(&ub.stdout).unwrap();
    assert_eq!(doc["pbw"]["verdict"], "PBW_TYPE_TRUE");
    let dims: Vec<(usize, usize)> = serde_json::from_value(doc["pbw"]["degreewise_dims"].clone()).unwrap();
    assert_eq!(dims, (0..=6).map(|n| (n + 1, n + 1)).collect::<Vec<_>>());
}

#[test]
fn invalid_subalgebra_is_a_stage_error() {
    let d = scratch("sub");
    let k = d.join("K.json");
    fs::write(&k, r#"{"span": ["1", "x"]}"#).unwrap();
    let out = run(&["pipeline", "--input", path(&corpus().join("entries/sweedler/H.json")), "--sub", path(&k)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("filtration"));
}

#[test]
fn staged_commands_chain() {
    let e = corpus().join("entries/sweedler");
    let d = scratch("chain");
    let gr = d.join("gr.json");
    let r = d.join("R.json");
    let rep = d.join("report.json");
    assert_eq!(
        run(&["grk", "--input", path(&e.join("H.json")), "--sub", path(&e.join("K.json")), "--out", path(&gr)])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(run(&["coinv", "--input", path(&gr), "--out", path(&r)]).status.code(), Some(0));
    let r_doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&r).unwrap()).unwrap();
    for key in ["mult", "comult", "counit", "action", "coaction", "braiding"] {
        assert!(!r_doc[key].is_null(), "{key}");
    }
    assert_eq!(run(&["pbw", "--input", path(&r), "--degree", "6", "--report", path(&rep)]).status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(&rep).unwrap()).unwrap();
    assert_eq!(report["verdict"], "PBW_TYPE_TRUE");
    assert_eq!(report["basis"], serde_json::json!([[], ["x"]]));
}

#[test]
fn braided_space_commands() {
    let s = corpus().join("spaces");
    let nf = run(&["nf", "--input", path(&s.join("color_klein.json")), "y x"]);
    assert_eq!(String::from_utf8_lossy(&nf.stdout).trim(), "-x y");
    let zero = run(&["nf", "--input", path(&s.join("super_line.json")), "θ θ"]);
    assert_eq!(String::from_utf8_lossy(&zero.stdout).trim(), "0");
    let comm = run(&["commutator", "--input", path(&s.join("super_line.json")), "x", "θ"]);
    assert_eq!(String::from_utf8_lossy(&comm.stdout).trim(), "x θ - θ x");
    let h = run(&["--format", "json", "hilbert", "--input", path(&s.join("super_line.json")), "--degree", "4"]);
    let doc: serde_json::Value = serde_json::from_slice(&h.stdout).unwrap();
    assert_eq!(doc["oracle"], serde_json::json!([1, 2, 2, 2, 2]));
    let unknown = run(&["nf", "--input", path(&s.join("super_line.json")), "q"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn degree_cap_from_environment() {
    let s = corpus().join("spaces/trivial2.json");
    let out = Command::new(env!("CARGO_BIN_EXE_braidpbw"))
        .args(["hilbert", "--input", path(&s), "--degree", "5"])
        .env("BRAIDPBW_DEGREE_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}
