//! The end-to-end run: axioms, relative filtration, associated graded,
//! coinvariants and the PBW verdict, collected into one report.

use serde::{Deserialize, Serialize};

use crate::braided_space::{braid_check, is_symmetric};
use crate::coinvariants::{
    bosonization_check, bosonization_degrees, check_braiding_collapse, compute_r, BosonizationDegree,
    CollapseReport, CoinvariantAlgebra,
};
use crate::error::Result;
use crate::filtration::{associated_graded_with_report, check_commutator_filtration, hopf_filtration};
use crate::hopf::{check_all, is_c_commutative, is_symmetric_braiding, StructureBialgebra};
use crate::linalg::Subspace;
use crate::lincomb::{LinComb, Tensor};
use crate::pbw::{compute_q, generates_degreewise, pbw_basis, pbw_verdict_with_cap, PbwReport, Verdict};
use crate::report::ValidationReport;
use crate::tensor_algebra::DEFAULT_DEGREE_CAP;

#[derive(Clone, Debug, Serialize)]
pub struct GradedSummary {
    pub names: Vec<String>,
    pub degrees: Vec<usize>,
    pub c_commutative: bool,
    pub axioms: ValidationReport,
    pub filtration_report: ValidationReport,
    /// Only run when `H` is symmetrically braided and connected.
    pub commutator_filtration: Option<ValidationReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoinvariantSummary {
    pub dim: usize,
    pub names: Vec<String>,
    pub degrees: Vec<usize>,
    /// `c_R(r_i ⊗ r_j)` for every pair, rendered.
    pub braiding: Vec<Vec<String>>,
    pub braiding_symmetric: bool,
    pub braid_equation: bool,
    pub degree_filtration_is_coradical: bool,
    pub q_generates: bool,
    pub collapse: CollapseReport,
    pub bosonization: Vec<BosonizationDegree>,
    pub bosonization_bijective: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub dim: usize,
    pub symmetric: bool,
    pub axioms: ValidationReport,
    pub sub_dim: usize,
    pub filtration_dims: Vec<usize>,
    pub graded: GradedSummary,
    pub coinvariants: CoinvariantSummary,
    pub pbw: PbwReport,
    pub pbw_basis: std::result::Result<Vec<Vec<String>>, String>,
}

fn summarize_r(r: &CoinvariantAlgebra) -> CoinvariantSummary {
    let a = &r.algebra;
    let n = r.dim();
    let braiding = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| a.render_tensor(&r.braiding_r(&LinComb::basis(i), &LinComb::basis(j))))
                .collect()
        })
        .collect();
    let q_generates = compute_q(a)
        .map(|q| generates_degreewise(a, &q.representatives))
        .unwrap_or(false);
    CoinvariantSummary {
        dim: n,
        names: a.names.clone(),
        degrees: a.grading.clone().unwrap_or_default(),
        braiding,
        braiding_symmetric: is_symmetric(&a.braiding),
        braid_equation: braid_check(&a.braiding),
        degree_filtration_is_coradical: r.degree_filtration_is_coradical,
        q_generates,
        collapse: check_braiding_collapse(r),
        bosonization: bosonization_degrees(r),
        bosonization_bijective: bosonization_check(r),
    }
}

/// Runs every stage on `h` over the Hopf subalgebra `k`, checking PBW type
/// through `degree`. Errors carry the stage they came from.
pub fn run_pipeline(h: &StructureBialgebra, k: &Subspace, degree: usize, cap: usize) -> Result<PipelineReport> {
    h.validate_shape().map_err(|e| e.at("input"))?;
    let axioms = check_all(h);
    let ladder = hopf_filtration(h, k).map_err(|e| e.at("filtration"))?;
    let (gr, filtration_report) = associated_graded_with_report(h, &ladder).map_err(|e| e.at("graded"))?;
    let symmetric = is_symmetric_braiding(h);
    let connected = k.dim() == 1;
    let commutator_filtration = if symmetric && connected {
        Some(check_commutator_filtration(h, &ladder).map_err(|e| e.at("graded"))?)
    } else {
        None
    };
    let graded = GradedSummary {
        names: gr.names.clone(),
        degrees: gr.grading.clone().unwrap_or_default(),
        c_commutative: is_c_commutative(&gr),
        axioms: check_all(&gr),
        filtration_report,
        commutator_filtration,
    };
    let r = compute_r(&gr).map_err(|e| e.at("coinvariants"))?;
    let coinvariants = summarize_r(&r);
    let pbw = pbw_verdict_with_cap(&r.algebra, degree, cap).map_err(|e| e.at("pbw"))?;
    let q = compute_q(&r.algebra).map_err(|e| e.at("pbw"))?;
    let basis = pbw_basis(&q, &pbw);
    Ok(PipelineReport {
        dim: h.dim(),
        symmetric,
        axioms,
        sub_dim: k.dim(),
        filtration_dims: ladder.dims(),
        graded,
        coinvariants,
        pbw,
        pbw_basis: basis,
    })
}

pub fn run_pipeline_default(h: &StructureBialgebra, k: &Subspace, degree: usize) -> Result<PipelineReport> {
    run_pipeline(h, k, degree, DEFAULT_DEGREE_CAP)
}

/// Expected outcomes for a corpus entry. Absent fields are not checked.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectations {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axioms_pass: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filtration_dims: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gr_c_commutative: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub commutator_filtration: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_braiding_symmetric: Option<bool>,
    /// Selected values `c_R(a ⊗ b)` as `[a, b, rendered]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_braiding_values: Option<Vec<[String; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub collapse: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_r_equals_c: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bosonization: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure_degree: Option<usize>,
    /// `(dim target(n), dim S(Q)(n))` for `n = 0, 1, …`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degreewise_dims: Option<Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pbw_basis_refused: Option<bool>,
}

/// One expectation that did not match.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub field: String,
    pub expected: String,
    pub actual: String,
}

fn collapse_label(c: &CollapseReport) -> String {
    serde_json::to_value(&c.status)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn lookup_braiding(report: &PipelineReport, a: &str, b: &str) -> Option<String> {
    let names = &report.coinvariants.names;
    let i = names.iter().position(|n| n == a)?;
    let j = names.iter().position(|n| n == b)?;
    Some(report.coinvariants.braiding[i][j].clone())
}

impl Expectations {
    pub fn compare(&self, report: &PipelineReport) -> Vec<Mismatch> {
        let mut out = Vec::new();
        let mut cmp = |field: &str, expected: Option<String>, actual: String| {
            if let Some(e) = expected {
                if e != actual {
                    out.push(Mismatch {
                        field: field.to_string(),
                        expected: e,
                        actual,
                    });
                }
            }
        };
        let s = |x: &dyn std::fmt::Debug| format!("{x:?}");
        cmp("axioms_pass", self.axioms_pass.map(|x| s(&x)), s(&report.axioms.pass()));
        cmp("filtration_dims", self.filtration_dims.as_ref().map(|x| s(x)), s(&report.filtration_dims));
        cmp("gr_c_commutative", self.gr_c_commutative.map(|x| s(&x)), s(&report.graded.c_commutative));
        cmp(
            "commutator_filtration",
            self.commutator_filtration.map(|x| s(&Some(x))),
            s(&report.graded.commutator_filtration.as_ref().map(ValidationReport::pass)),
        );
        cmp("r_dim", self.r_dim.map(|x| s(&x)), s(&report.coinvariants.dim));
        cmp(
            "r_braiding_symmetric",
            self.r_braiding_symmetric.map(|x| s(&x)),
            s(&report.coinvariants.braiding_symmetric),
        );
        for [a, b, v] in self.r_braiding_values.iter().flatten() {
            cmp(
                &format!("c_R({a}⊗{b})"),
                Some(v.clone()),
                lookup_braiding(report, a, b).unwrap_or_else(|| "<no such basis pair>".into()),
            );
        }
        cmp("collapse", self.collapse.clone(), collapse_label(&report.coinvariants.collapse));
        cmp("c_r_equals_c", self.c_r_equals_c.map(|x| s(&x)), s(&report.coinvariants.collapse.c_r_equals_c));
        cmp("bosonization", self.bosonization.map(|x| s(&x)), s(&report.coinvariants.bosonization_bijective));
        cmp("verdict", self.verdict.map(|x| x.to_string()), report.pbw.verdict.to_string());
        cmp(
            "first_failure_degree",
            self.first_failure_degree.map(|x| s(&Some(x))),
            s(&report.pbw.first_failure_degree),
        );
        cmp("degreewise_dims", self.degreewise_dims.as_ref().map(|x| s(x)), s(&report.pbw.degreewise_dims));
        cmp(
            "pbw_basis_refused",
            self.pbw_basis_refused.map(|x| s(&x)),
            s(&report.pbw_basis.is_err()),
        );
        out
    }
}

/// `c_R(a ⊗ b)` rendered, for a pair of basis names of `R`.
pub fn r_braiding_value(report: &PipelineReport, a: &str, b: &str) -> Option<String> {
    lookup_braiding(report, a, b)
}

/// The restriction of `c` to `R ⊗ R` in the parent, for comparison in tests.
pub fn restricted_braiding(r: &CoinvariantAlgebra, i: usize, j: usize) -> Tensor<usize> {
    Tensor::product_of(&[&r.lift(i), &r.lift(j)]).braid_at(&r.parent, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{entries, sweedler, taft3};
    use crate::filtration::hopf_filtration;

    fn sub(h: &StructureBialgebra, names: &[&str]) -> Subspace {
        Subspace::coordinate(h.dim(), names.iter().map(|n| h.names.iter().position(|m| m == n).unwrap()))
    }

    #[test]
    fn sweedler_over_group_likes() {
        let h = sweedler();
        let rep = run_pipeline_default(&h, &sub(&h, &["1", "g"]), 3).unwrap();
        assert!(rep.axioms.pass());
        assert_eq!(rep.filtration_dims, vec![2, 4]);
        assert_eq!(rep.coinvariants.dim, 2);
        assert_eq!(rep.coinvariants.names, vec!["1", "x"]);
        assert_eq!(r_braiding_value(&rep, "x", "x").unwrap(), "-x⊗x");
        assert!(rep.coinvariants.braiding_symmetric);
        assert!(rep.coinvariants.bosonization_bijective);
        assert_eq!(rep.pbw.verdict, Verdict::True);
        assert!(!rep.coinvariants.collapse.c_r_equals_c);
        assert_eq!(rep.coinvariants.collapse.status, crate::coinvariants::CollapseStatus::ConditionalVacuous);
        assert!(!rep.coinvariants.collapse.inclusion_central);
        assert!(!rep.coinvariants.collapse.projection_cocentral);
    }

    #[test]
    fn taft_fails_at_degree_two() {
        let h = taft3();
        let rep = run_pipeline_default(&h, &sub(&h, &["1", "g", "g^2"]), 3).unwrap();
        assert_eq!(rep.filtration_dims, vec![3, 6, 9]);
        assert_eq!(rep.coinvariants.dim, 3);
        assert!(!rep.coinvariants.braiding_symmetric);
        assert!(rep.coinvariants.bosonization_bijective);
        assert_eq!(rep.pbw.verdict, Verdict::False);
        assert_eq!(rep.pbw.first_failure_degree, Some(2));
        assert_eq!(rep.pbw.degreewise_dims[2], (1, 0));
    }

    #[test]
    fn connected_entries_collapse() {
        for e in entries().into_iter().filter(|e| e.connected) {
            let rep = run_pipeline_default(&e.algebra, &e.sub, 6).unwrap();
            assert!(rep.coinvariants.collapse.c_r_equals_c, "{}", e.name);
            assert_eq!(rep.pbw.verdict, Verdict::True, "{}", e.name);
            assert!(rep.graded.c_commutative, "{}", e.name);
        }
    }

    #[test]
    fn ladder_for_unit_is_degree_filtration_of_polynomials() {
        let h = crate::corpus::polynomial(4);
        let f = hopf_filtration(&h, &Subspace::coordinate(5, [0])).unwrap();
        assert_eq!(f.dims(), vec![1, 2, 3, 4, 5]);
    }
}
