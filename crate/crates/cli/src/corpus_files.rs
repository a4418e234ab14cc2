//! The shipped corpus as files: one directory per bialgebra entry with
//! `H.json`, `K.json` and `expect.json`, and one file per braided space.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde_json::json;

use braidpbw_core::corpus::{braided_spaces, entries, CorpusEntry};
use braidpbw_core::io::{bialgebra_to_value, subspace_to_value, to_canonical_string};
use braidpbw_core::pipeline::Expectations;
use braidpbw_core::Verdict;

fn dims_from(f: impl Fn(usize) -> usize, top: usize) -> Vec<(usize, usize)> {
    (0..=top).map(|n| (f(n), f(n))).collect()
}

fn value(a: &str, b: &str, v: &str) -> [String; 3] {
    [a.into(), b.into(), v.into()]
}

/// Expected outcomes, worked out by hand for each entry.
pub fn expectations(name: &str) -> Option<(usize, Expectations)> {
    let connected = |filtration: Vec<usize>, r_dim: usize, dims: Vec<(usize, usize)>| Expectations {
        axioms_pass: Some(true),
        filtration_dims: Some(filtration),
        gr_c_commutative: Some(true),
        commutator_filtration: Some(true),
        r_dim: Some(r_dim),
        r_braiding_symmetric: Some(true),
        collapse: Some("Confirmed".into()),
        c_r_equals_c: Some(true),
        bosonization: Some(true),
        verdict: Some(Verdict::True),
        degreewise_dims: Some(dims),
        ..Default::default()
    };
    let pairs_up_to = |n: usize| -> Vec<usize> { (0..=n).map(|k| (k + 1) * (k + 2) / 2).collect() };
    let odd_line = |n: usize| -> Vec<usize> { (0..=n).map(|k| 2 * k + 1).collect() };
    let e = match name {
        "group_c2" => (
            3,
            Expectations {
                axioms_pass: Some(true),
                filtration_dims: Some(vec![2]),
                r_dim: Some(1),
                collapse: Some("Confirmed".into()),
                bosonization: Some(true),
                verdict: Some(Verdict::True),
                degreewise_dims: Some(vec![(1, 1), (0, 0), (0, 0), (0, 0)]),
                ..Default::default()
            },
        ),
        "sweedler" => (
            3,
            Expectations {
                axioms_pass: Some(true),
                filtration_dims: Some(vec![2, 4]),
                gr_c_commutative: Some(false),
                r_dim: Some(2),
                r_braiding_symmetric: Some(true),
                r_braiding_values: Some(vec![value("x", "x", "-x⊗x")]),
                collapse: Some("ConditionalVacuous".into()),
                c_r_equals_c: Some(false),
                bosonization: Some(true),
                verdict: Some(Verdict::True),
                degreewise_dims: Some(vec![(1, 1), (1, 1), (0, 0), (0, 0)]),
                pbw_basis_refused: Some(false),
                ..Default::default()
            },
        ),
        "taft3" => (
            3,
            Expectations {
                axioms_pass: Some(true),
                filtration_dims: Some(vec![3, 6, 9]),
                r_dim: Some(3),
                r_braiding_symmetric: Some(false),
                r_braiding_values: Some(vec![value("x", "x", "(ζ3)*x⊗x")]),
                collapse: Some("ConditionalVacuous".into()),
                bosonization: Some(true),
                verdict: Some(Verdict::False),
                first_failure_degree: Some(2),
                degreewise_dims: Some(vec![(1, 1), (1, 1), (1, 0), (0, 0)]),
                pbw_basis_refused: Some(true),
                ..Default::default()
            },
        ),
        "polynomial" => (6, connected((1..=7).collect(), 7, dims_from(|_| 1, 6))),
        "abelian_enveloping" | "solvable_enveloping" | "color_klein" => {
            (6, connected(pairs_up_to(6), 28, dims_from(|n| n + 1, 6)))
        }
        "super_line" => (6, connected(odd_line(6), 13, dims_from(|n| if n == 0 { 1 } else { 2 }, 6))),
        "super_line_mixed" => {
            let mut e = connected(odd_line(6), 13, dims_from(|n| if n == 0 { 1 } else { 2 }, 6));
            e.pbw_basis_refused = Some(true);
            (6, e)
        }
        "solvable_over_y" => {
            // F_n = span{x^a y^b : a ≤ n, a + b ≤ 6}
            let filtration = (0..=6).map(|n| (0..=n).map(|a| 7 - a).sum()).collect();
            let mut e = connected(filtration, 7, dims_from(|_| 1, 6));
            e.commutator_filtration = None;
            (6, e)
        }
        _ => return None,
    };
    Some(e)
}

fn write(path: PathBuf, text: String, written: &mut Vec<String>) -> io::Result<()> {
    fs::write(&path, text)?;
    written.push(path.display().to_string());
    Ok(())
}

fn write_entry(dir: &Path, e: &CorpusEntry, written: &mut Vec<String>) -> io::Result<()> {
    let (degree, expect) = expectations(e.name)
        .ok_or_else(|| io::Error::new(io::ErrorKind::NotFound, format!("no expectations for {}", e.name)))?;
    let d = dir.join(e.name);
    fs::create_dir_all(&d)?;
    write(d.join("H.json"), to_canonical_string(&bialgebra_to_value(&e.algebra)), written)?;
    write(d.join("K.json"), to_canonical_string(&subspace_to_value(&e.sub)), written)?;
    let exp = json!({ "degree": degree, "expect": expect });
    write(d.join("expect.json"), to_canonical_string(&exp), written)
}

/// Writes `entries/<name>/…` and `spaces/<name>.json` under `root`.
pub fn write_corpus(root: &Path) -> io::Result<Vec<String>> {
    let mut written = Vec::new();
    let entries_dir = root.join("entries");
    fs::create_dir_all(&entries_dir)?;
    for e in entries() {
        write_entry(&entries_dir, &e, &mut written)?;
    }
    let spaces_dir = root.join("spaces");
    fs::create_dir_all(&spaces_dir)?;
    for (name, spec) in braided_spaces() {
        let v = serde_json::to_value(&spec).expect("serializable");
        write(spaces_dir.join(format!("{name}.json")), to_canonical_string(&v), &mut written)?;
    }
    Ok(written)
}
