//! Subcommands of the `braidpbw` tool. Each returns an [`Outcome`] holding a
//! JSON document, its text rendering and the exit code.

pub mod corpus_files;

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use braidpbw_core::coinvariants::compute_r;
use braidpbw_core::filtration::{associated_graded_with_report, hopf_filtration};
use braidpbw_core::io::{
    bialgebra_from_str, bialgebra_to_value, braided_space_from_str, coinvariants_to_value, subspace_from_str,
    subspace_to_value,
};
use braidpbw_core::pbw::pbw_verdict_with_cap;
use braidpbw_core::symmetric::oracle_dimension;
use braidpbw_core::{
    check_all, compute_q, pbw_basis, run_pipeline, Error, Expectations, LinComb, PipelineReport, StructureBialgebra,
    Subspace, SymmetricAlgebra, TensorAlgebra,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub json: Value,
    pub text: String,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn compute(e: Error) -> Self {
        CliError {
            code: EXIT_FAIL,
            message: e.to_string(),
        }
    }
}

pub type CliResult = Result<Outcome, CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn load_bialgebra(path: &Path) -> Result<StructureBialgebra, CliError> {
    bialgebra_from_str(&read(path)?).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn load_sub(path: Option<&Path>, h: &StructureBialgebra) -> Result<Subspace, CliError> {
    match path {
        Some(p) => subspace_from_str(&read(p)?, h).map_err(|e| CliError::input(format!("{}: {e}", p.display()))),
        None => Ok(Subspace::coordinate(h.dim(), [0])),
    }
}

fn load_space(path: &Path) -> Result<(braidpbw_core::BraidedSpaceSpec, braidpbw_core::GenericBraiding, Vec<String>), CliError> {
    let spec = braided_space_from_str(&read(path)?).map_err(|e| CliError::input(e.to_string()))?;
    let c = spec.braiding().map_err(|e| CliError::input(e.to_string()))?;
    let names = spec.graded_basis().map_err(|e| CliError::input(e.to_string()))?.names();
    Ok((spec, c, names))
}

pub fn cmd_check(input: &Path) -> CliResult {
    let h = load_bialgebra(input)?;
    let report = check_all(&h);
    let pass = report.pass();
    let mut text = format!(
        "{}: {} axioms checked{}\n",
        if pass { "PASS" } else { "FAIL" },
        report.checked.len(),
        report.degree_limit.map(|t| format!(" through weight {t}")).unwrap_or_default()
    );
    for v in &report.violations {
        text.push_str(&format!(
            "  {} at ({}): {} ≠ {}\n",
            v.axiom,
            v.witness.join(", "),
            v.lhs,
            v.rhs
        ));
    }
    Ok(Outcome {
        code: if pass { EXIT_OK } else { EXIT_FAIL },
        json: json!({ "pass": pass, "report": report }),
        text,
    })
}

fn pipeline_text(r: &PipelineReport) -> String {
    let mut t = String::new();
    t.push_str(&format!("dim H = {}, dim K = {}\n", r.dim, r.sub_dim));
    t.push_str(&format!("axioms: {}\n", if r.axioms.pass() { "pass" } else { "FAIL" }));
    t.push_str(&format!("filtration dims: {:?}\n", r.filtration_dims));
    t.push_str(&format!("gr c-commutative: {}\n", r.graded.c_commutative));
    let c = &r.coinvariants;
    t.push_str(&format!("R: dim {} basis {:?} degrees {:?}\n", c.dim, c.names, c.degrees));
    for (i, a) in c.names.iter().enumerate() {
        for (j, b) in c.names.iter().enumerate() {
            if c.degrees[i] > 0 && c.degrees[j] > 0 && c.degrees[i] + c.degrees[j] <= 2 {
                t.push_str(&format!("  c_R({a}⊗{b}) = {}\n", c.braiding[i][j]));
            }
        }
    }
    t.push_str(&format!("c_R symmetric: {}\n", c.braiding_symmetric));
    t.push_str(&format!(
        "K central: {}, π cocentral: {}, c_R = c: {}, collapse: {:?}\n",
        c.collapse.inclusion_central, c.collapse.projection_cocentral, c.collapse.c_r_equals_c, c.collapse.status
    ));
    t.push_str(&format!("bosonization bijective: {}\n", c.bosonization_bijective));
    t.push_str(&format!("verdict: {}", r.pbw.verdict));
    if let Some(n) = r.pbw.first_failure_degree {
        t.push_str(&format!(" (first failure in degree {n})"));
    }
    t.push_str(&format!(" verified through degree {}\n", r.pbw.verified_through));
    t.push_str(&format!("dims (target, S(Q)): {:?}\n", r.pbw.degreewise_dims));
    match &r.pbw_basis {
        Ok(b) => t.push_str(&format!("PBW basis: {} monomials\n", b.len())),
        Err(why) => t.push_str(&format!("PBW basis: {why}\n")),
    }
    t
}

pub fn cmd_pipeline(input: &Path, sub: Option<&Path>, degree: usize, cap: usize) -> CliResult {
    let h = load_bialgebra(input)?;
    let k = load_sub(sub, &h)?;
    let report = run_pipeline(&h, &k, degree, cap).map_err(CliError::compute)?;
    Ok(Outcome {
        code: EXIT_OK,
        text: pipeline_text(&report),
        json: serde_json::to_value(&report).expect("serializable"),
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExpectFile {
    degree: usize,
    expect: Expectations,
}

struct EntryResult {
    name: String,
    json: Value,
    row: String,
    pass: bool,
}

fn run_entry(dir: &Path, cap: usize) -> EntryResult {
    let name = dir.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let attempt = || -> Result<(PipelineReport, Vec<braidpbw_core::pipeline::Mismatch>), String> {
        let h = load_bialgebra(&dir.join("H.json")).map_err(|e| e.message)?;
        let k_path = dir.join("K.json");
        let k = load_sub(k_path.exists().then_some(k_path.as_path()), &h).map_err(|e| e.message)?;
        let exp: ExpectFile = serde_json::from_str(&read(&dir.join("expect.json")).map_err(|e| e.message)?)
            .map_err(|e| format!("expect.json: {e}"))?;
        let report = run_pipeline(&h, &k, exp.degree, cap).map_err(|e| e.to_string())?;
        let mismatches = exp.expect.compare(&report);
        Ok((report, mismatches))
    };
    match attempt() {
        Ok((report, mismatches)) => {
            let pass = mismatches.is_empty();
            let row = format!(
                "{:<22} {:<5} {:<14} R={:<3} {}",
                name,
                if pass { "ok" } else { "FAIL" },
                report.pbw.verdict.to_string(),
                report.coinvariants.dim,
                mismatches
                    .iter()
                    .map(|m| format!("{}: expected {} got {}", m.field, m.expected, m.actual))
                    .collect::<Vec<_>>()
                    .join("; ")
            )
            .trim_end()
            .to_string();
            EntryResult {
                json: json!({
                    "name": name,
                    "pass": pass,
                    "mismatches": mismatches,
                    "verdict": report.pbw.verdict,
                    "filtration_dims": report.filtration_dims,
                    "r_dim": report.coinvariants.dim,
                    "degreewise_dims": report.pbw.degreewise_dims,
                    "collapse": report.coinvariants.collapse.status,
                }),
                name,
                row,
                pass,
            }
        }
        Err(message) => EntryResult {
            json: json!({ "name": name, "pass": false, "error": message }),
            row: format!("{name:<22} ERROR {message}"),
            name,
            pass: false,
        },
    }
}

/// Runs every entry directory (one holding `expect.json`) under `dir`.
pub fn cmd_corpus(dir: &Path, cap: usize) -> CliResult {
    let listing = fs::read_dir(dir).map_err(|e| CliError::input(format!("{}: {e}", dir.display())))?;
    let mut entries: Vec<PathBuf> = listing
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.join("expect.json").is_file())
        .collect();
    entries.sort();
    if entries.is_empty() {
        return Err(CliError::input(format!("no corpus entries in {}", dir.display())));
    }
    let mut results: Vec<EntryResult> = entries.par_iter().map(|p| run_entry(p, cap)).collect();
    results.sort_by(|a, b| a.name.cmp(&b.name));
    let pass = results.iter().all(|r| r.pass);
    let mut text = String::new();
    for r in &results {
        text.push_str(&r.row);
        text.push('\n');
    }
    text.push_str(&format!(
        "{} of {} entries match\n",
        results.iter().filter(|r| r.pass).count(),
        results.len()
    ));
    Ok(Outcome {
        code: if pass { EXIT_OK } else { EXIT_FAIL },
        json: json!({ "pass": pass, "entries": results.into_iter().map(|r| r.json).collect::<Vec<_>>() }),
        text,
    })
}

pub fn cmd_nf(input: &Path, word: &str) -> CliResult {
    let (_, c, names) = load_space(input)?;
    let alg = TensorAlgebra::new(c.clone(), names.clone()).map_err(|e| CliError::input(e.to_string()))?;
    let w = alg.parse_word(word).map_err(|e| CliError::input(e.to_string()))?;
    let s = SymmetricAlgebra::from_braiding(&c, names).map_err(CliError::compute)?;
    let nf = s.normal_form(&w);
    let rendered = s.render(&nf);
    Ok(Outcome {
        code: EXIT_OK,
        json: json!({ "word": alg.word_name(&w), "normal_form": rendered }),
        text: format!("{rendered}\n"),
    })
}

pub fn cmd_commutator(input: &Path, a: &str, b: &str, cap: usize) -> CliResult {
    let (_, c, names) = load_space(input)?;
    let alg = TensorAlgebra::new(c, names).map_err(|e| CliError::input(e.to_string()))?.with_cap(cap);
    let wa = alg.parse_word(a).map_err(|e| CliError::input(e.to_string()))?;
    let wb = alg.parse_word(b).map_err(|e| CliError::input(e.to_string()))?;
    let r = alg
        .commutator(&LinComb::basis(wa), &LinComb::basis(wb))
        .map_err(CliError::compute)?;
    let rendered = alg.render(&r);
    Ok(Outcome {
        code: EXIT_OK,
        json: json!({ "commutator": rendered }),
        text: format!("{rendered}\n"),
    })
}

pub fn cmd_hilbert(input: &Path, degree: usize, cap: usize) -> CliResult {
    let (_, c, names) = load_space(input)?;
    let scheunert = SymmetricAlgebra::from_braiding(&c, names).ok().map(|s| s.hilbert_series(degree));
    let oracle: Vec<usize> = (0..=degree)
        .map(|n| oracle_dimension(&c, n, cap))
        .collect::<Result<_, _>>()
        .map_err(CliError::compute)?;
    let mut text = format!("oracle:    {oracle:?}\n");
    if let Some(s) = &scheunert {
        text.push_str(&format!("scheunert: {s:?}\n"));
    }
    Ok(Outcome {
        code: EXIT_OK,
        json: json!({ "oracle": oracle, "scheunert": scheunert }),
        text,
    })
}

pub fn cmd_grk(input: &Path, sub: Option<&Path>) -> CliResult {
    let h = load_bialgebra(input)?;
    let k = load_sub(sub, &h)?;
    let ladder = hopf_filtration(&h, &k).map_err(|e| CliError::compute(e.at("filtration")))?;
    let (gr, report) = associated_graded_with_report(&h, &ladder).map_err(|e| CliError::compute(e.at("graded")))?;
    let mut v = bialgebra_to_value(&gr);
    let obj = v.as_object_mut().expect("object");
    obj.insert("filtration_dims".into(), json!(ladder.dims()));
    obj.insert("filtration".into(), json!(ladder.steps.iter().map(subspace_to_value).collect::<Vec<_>>()));
    obj.insert("filtration_report".into(), serde_json::to_value(&report).expect("serializable"));
    Ok(Outcome {
        code: if report.pass() { EXIT_OK } else { EXIT_FAIL },
        text: format!(
            "filtration dims {:?}; gr basis {:?} in degrees {:?}\n",
            ladder.dims(),
            gr.names,
            gr.grading.clone().unwrap_or_default()
        ),
        json: v,
    })
}

pub fn cmd_coinv(input: &Path) -> CliResult {
    let gr = load_bialgebra(input)?;
    let r = compute_r(&gr).map_err(|e| CliError::compute(e.at("coinvariants")))?;
    Ok(Outcome {
        code: EXIT_OK,
        text: format!("R: dim {} basis {:?}\n", r.dim(), r.algebra.names),
        json: coinvariants_to_value(&r),
    })
}

pub fn cmd_pbw(input: &Path, degree: usize, cap: usize) -> CliResult {
    let h = load_bialgebra(input)?;
    let report = pbw_verdict_with_cap(&h, degree, cap).map_err(|e| CliError::compute(e.at("pbw")))?;
    let q = compute_q(&h).map_err(CliError::compute)?;
    let basis = pbw_basis(&q, &report);
    let mut text = format!("{} verified through degree {}", report.verdict, report.verified_through);
    if let Some(n) = report.first_failure_degree {
        text.push_str(&format!(", first failure in degree {n}"));
    }
    text.push_str(&format!("\ndims (target, S(Q)): {:?}\n", report.degreewise_dims));
    let mut v = serde_json::to_value(&report).expect("serializable");
    v.as_object_mut().expect("object").insert(
        "basis".into(),
        match basis {
            Ok(b) => json!(b),
            Err(why) => json!({ "refused": why }),
        },
    );
    Ok(Outcome {
        code: EXIT_OK,
        json: v,
        text,
    })
}

pub fn cmd_corpus_emit(dir: &Path) -> CliResult {
    let written = corpus_files::write_corpus(dir).map_err(|e| CliError::input(format!("{}: {e}", dir.display())))?;
    Ok(Outcome {
        code: EXIT_OK,
        text: format!("wrote {} files under {}\n", written.len(), dir.display()),
        json: json!({ "written": written }),
    })
}
