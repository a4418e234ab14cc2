//! Braided bialgebras and Hopf algebras given by structure constants, with
//! exhaustive checkers for their axioms.

use rayon::prelude::*;

use crate::braided_space::{braid_equation_witness, is_categorical, GenericBraiding};
use crate::error::{Error, Result};
use crate::linalg::{Subspace, Vector};
use crate::lincomb::{
    render_tensor, Braided, BraidedAlgebra, BraidedCoalgebra, HasAntipode, LinComb, Tensor,
};
use crate::report::ValidationReport;
use crate::scalar::Scalar;
use crate::tensor_algebra::{braided_commutator, tensor_square_commutator};

pub type Element = LinComb<usize>;

/// `(H, ∇, 1, Δ, ε, S, c)` on the basis `e_0, …, e_{d-1}`.
///
/// Under a truncation `T`, products of total weight above `T` are absent and
/// every checker only examines basis tuples of total weight at most `T`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureBialgebra {
    pub names: Vec<String>,
    pub unit: Element,
    /// `mult[i][j] = e_i · e_j`
    pub mult: Vec<Vec<Element>>,
    pub counit: Vec<Scalar>,
    /// `comult[i] = Δ(e_i)` as two-slot tensors
    pub comult: Vec<Tensor<usize>>,
    pub antipode: Option<Vec<Element>>,
    pub braiding: GenericBraiding,
    pub grading: Option<Vec<usize>>,
    /// Weights used for truncation; the grading when absent.
    pub weights: Option<Vec<usize>>,
    pub truncation: Option<usize>,
}

/// One failing instance found by a checker.
type Finding = (&'static str, Vec<usize>, String, String);

impl StructureBialgebra {
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    /// Checks that every table has the right shape and indices are in range.
    pub fn validate_shape(&self) -> Result<()> {
        let d = self.dim();
        let bad = |what: &str| Err(Error::Dimension(format!("{what} does not match dim {d}")));
        if self.mult.len() != d || self.mult.iter().any(|r| r.len() != d) {
            return bad("mult");
        }
        if self.counit.len() != d {
            return bad("counit");
        }
        if self.comult.len() != d {
            return bad("comult");
        }
        if self.braiding.dim() != d {
            return bad("braiding");
        }
        if self.antipode.as_ref().is_some_and(|s| s.len() != d) {
            return bad("antipode");
        }
        if self.grading.as_ref().is_some_and(|g| g.len() != d) {
            return bad("grading");
        }
        if self.weights.as_ref().is_some_and(|g| g.len() != d) {
            return bad("weights");
        }
        let in_range = |e: &Element| e.keys().all(|&k| k < d);
        let ok = in_range(&self.unit)
            && self.mult.iter().flatten().all(in_range)
            && self.comult.iter().all(|t| t.keys().all(|k| k.len() == 2 && k.iter().all(|&i| i < d)))
            && self.antipode.iter().flatten().all(in_range);
        if !ok {
            return Err(Error::Invalid("structure constant refers to a basis index out of range".into()));
        }
        if self.truncation.is_some() && self.weights.is_none() && self.grading.is_none() {
            return Err(Error::Invalid("truncation needs a grading or weights".into()));
        }
        Ok(())
    }

    pub fn weight(&self, i: usize) -> usize {
        self.weights
            .as_ref()
            .or(self.grading.as_ref())
            .map_or(0, |w| w[i])
    }

    fn within(&self, tuple: &[usize]) -> bool {
        match self.truncation {
            None => true,
            Some(t) => tuple.iter().map(|&i| self.weight(i)).sum::<usize>() <= t,
        }
    }

    pub fn basis(&self, i: usize) -> Element {
        LinComb::basis(i)
    }

    pub fn name(&self, i: usize) -> String {
        self.names[i].clone()
    }

    pub fn render(&self, e: &Element) -> String {
        crate::lincomb::render_lincomb(e, |&i| self.name(i))
    }

    pub fn render_tensor(&self, t: &Tensor<usize>) -> String {
        render_tensor(t, |&i| self.name(i))
    }

    pub fn element_from_vector(v: &[Scalar]) -> Element {
        LinComb::from_dense(v)
    }

    pub fn product(&self, a: &Element, b: &Element) -> Element {
        crate::tensor_algebra::braided_product(self, a, b)
    }

    pub fn coproduct(&self, a: &Element) -> Tensor<usize> {
        a.as_tensor().comul_at(self, 1)
    }

    pub fn apply_antipode(&self, a: &Element) -> Result<Element> {
        if self.antipode.is_none() {
            return Err(Error::MissingAntipode);
        }
        Ok(a.as_tensor().antipode_at(self, 1).single())
    }

    pub fn counit_of(&self, a: &Element) -> Scalar {
        a.iter().map(|(&i, c)| c * &self.counit[i]).sum()
    }

    /// `[a, b] = ∇(id − c)(a ⊗ b)`.
    pub fn commutator(&self, a: &Element, b: &Element) -> Element {
        braided_commutator(self, a, b)
    }

    /// `∇^op = ∇c`.
    pub fn op_product(&self, a: &Element, b: &Element) -> Element {
        Tensor::product_of(&[a, b])
            .braid_at(self, 1)
            .mul_at(self, 1)
            .single()
    }

    pub fn degree_of(&self, i: usize) -> Option<usize> {
        self.grading.as_ref().map(|g| g[i])
    }

    pub fn kernel_of_counit(&self) -> Subspace {
        let d = self.dim();
        let col: Vec<Vector> = self.counit.iter().map(|c| vec![c.clone()]).collect();
        Subspace::span(d, crate::linalg::left_kernel(&col, 1))
    }

    fn basis_tuples(&self, arity: usize) -> Vec<Vec<usize>> {
        let d = self.dim();
        let mut out: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..arity {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (0..d).map(move |i| {
                        let mut n = t.clone();
                        n.push(i);
                        n
                    })
                })
                .filter(|t| self.within(t))
                .collect();
        }
        out
    }

    fn witness_names(&self, t: &[usize]) -> Vec<String> {
        t.iter().map(|&i| self.name(i)).collect()
    }

    /// Runs `check` on every basis tuple of the given arity in parallel and
    /// records the findings in tuple order.
    fn run_checks(
        &self,
        report: &mut ValidationReport,
        axioms: &[&str],
        arity: usize,
        check: impl Fn(&[usize]) -> Vec<(&'static str, Tensor<usize>, Tensor<usize>)> + Sync,
    ) {
        for a in axioms {
            report.checking(a);
        }
        let tuples = self.basis_tuples(arity);
        let findings: Vec<Vec<Finding>> = tuples
            .par_iter()
            .map(|t| {
                check(t)
                    .into_iter()
                    .filter(|(_, l, r)| l != r)
                    .map(|(ax, l, r)| (ax, t.clone(), self.render_tensor(&l), self.render_tensor(&r)))
                    .collect()
            })
            .collect();
        for (axiom, t, l, r) in findings.into_iter().flatten() {
            report.violation(axiom, self.witness_names(&t), l, r);
        }
    }

    fn new_report(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        r.degree_limit = self.truncation;
        r
    }

    fn unit_tensor(&self) -> Tensor<usize> {
        self.unit.as_tensor()
    }
}

impl StructureBialgebra {
    /// The same bialgebra written in the basis whose vectors are the rows of
    /// `basis` (in current coordinates). Degrees and weights carry over from
    /// the leading entry of each row, so rows should be homogeneous.
    pub fn rebased(&self, basis: &[Vector], names: Vec<String>) -> Result<StructureBialgebra> {
        let d = self.dim();
        if basis.len() != d || names.len() != d {
            return Err(Error::Dimension(format!("need {d} basis vectors and names")));
        }
        let inv = crate::linalg::inverse(basis)?;
        let elems: Vec<Element> = basis.iter().map(|v| LinComb::from_dense(v)).collect();
        let to_new = |e: &Element| -> Element {
            LinComb::from_dense(&crate::linalg::vec_mat(&e.to_dense(d), &inv))
        };
        let tensor_to_new = |t: &Tensor<usize>| -> Tensor<usize> {
            let mut out = Tensor::zero();
            for (k, c) in t.iter() {
                let a = to_new(&LinComb::basis(k[0]));
                let b = to_new(&LinComb::basis(k[1]));
                out.add_scaled(&Tensor::product_of(&[&a, &b]), c);
            }
            out
        };
        let lead = |v: &Vector| v.iter().position(|x| !x.is_zero()).unwrap_or(0);
        let carry = |g: &Option<Vec<usize>>| g.as_ref().map(|g| basis.iter().map(|v| g[lead(v)]).collect());
        let mult = (0..d)
            .map(|i| (0..d).map(|j| to_new(&self.product(&elems[i], &elems[j]))).collect())
            .collect();
        let comult = elems.iter().map(|e| tensor_to_new(&self.coproduct(e))).collect();
        let antipode = match self.antipode {
            Some(_) => Some(
                elems
                    .iter()
                    .map(|e| self.apply_antipode(e).map(|s| to_new(&s)))
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        let braid: Vec<Vec<Tensor<usize>>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| tensor_to_new(&Tensor::product_of(&[&elems[i], &elems[j]]).braid_at(self, 1)))
                    .collect()
            })
            .collect();
        Ok(StructureBialgebra {
            names,
            unit: to_new(&self.unit),
            mult,
            counit: elems.iter().map(|e| self.counit_of(e)).collect(),
            comult,
            antipode,
            braiding: GenericBraiding::from_fn(d, |i, j| {
                braid[i][j].iter().map(|(k, c)| ((k[0], k[1]), c.clone())).collect()
            }),
            grading: carry(&self.grading),
            weights: carry(&self.weights),
            truncation: self.truncation,
        })
    }
}

impl Braided for StructureBialgebra {
    type Basis = usize;

    fn braid(&self, a: &usize, b: &usize) -> Vec<((usize, usize), Scalar)> {
        self.braiding.image(*a, *b).to_vec()
    }
}

impl BraidedAlgebra for StructureBialgebra {
    fn multiply(&self, a: &usize, b: &usize) -> Vec<(usize, Scalar)> {
        self.mult[*a][*b].iter().map(|(&k, c)| (k, c.clone())).collect()
    }
}

impl BraidedCoalgebra for StructureBialgebra {
    fn comultiply(&self, a: &usize) -> Vec<((usize, usize), Scalar)> {
        self.comult[*a].iter().map(|(k, c)| ((k[0], k[1]), c.clone())).collect()
    }

    fn counit(&self, a: &usize) -> Scalar {
        self.counit[*a].clone()
    }
}

impl HasAntipode for StructureBialgebra {
    fn antipode(&self, a: &usize) -> Vec<(usize, Scalar)> {
        let s = self.antipode.as_ref().expect("antipode checked by caller");
        s[*a].iter().map(|(&k, c)| (k, c.clone())).collect()
    }
}

fn slots(t: &[usize]) -> Tensor<usize> {
    Tensor::from_slots(t.to_vec())
}

/// Associativity, unit laws, braid equation, both braiding compatibilities of
/// the product and the braiding of the unit.
pub fn check_braided_algebra(h: &StructureBialgebra) -> ValidationReport {
    let mut report = h.new_report();
    let one = h.unit_tensor();
    h.run_checks(&mut report, &["unit-left", "unit-right", "unit-braiding"], 1, |t| {
        let a = slots(t);
        vec![
            ("unit-left", one.concat(&a).mul_at(h, 1), a.clone()),
            ("unit-right", a.concat(&one).mul_at(h, 1), a.clone()),
            ("unit-braiding", one.concat(&a).braid_at(h, 1), a.concat(&one)),
            ("unit-braiding", a.concat(&one).braid_at(h, 1), one.concat(&a)),
        ]
    });
    h.run_checks(
        &mut report,
        &["associativity", "braid-equation", "alg1", "alg2"],
        3,
        |t| {
            let x = slots(t);
            vec![
                ("associativity", x.mul_at(h, 1).mul_at(h, 1), x.mul_at(h, 2).mul_at(h, 1)),
                (
                    "braid-equation",
                    x.braid_at(h, 1).braid_at(h, 2).braid_at(h, 1),
                    x.braid_at(h, 2).braid_at(h, 1).braid_at(h, 2),
                ),
                // c(∇⊗id) = (id⊗∇)c₁c₂
                ("alg1", x.mul_at(h, 1).braid_at(h, 1), x.braid_at(h, 2).braid_at(h, 1).mul_at(h, 2)),
                // c(id⊗∇) = (∇⊗id)c₂c₁
                ("alg2", x.mul_at(h, 2).braid_at(h, 1), x.braid_at(h, 1).braid_at(h, 2).mul_at(h, 1)),
            ]
        },
    );
    report
}

/// Coassociativity, counit laws and the braiding compatibilities of `Δ` and `ε`.
pub fn check_braided_coalgebra(h: &StructureBialgebra) -> ValidationReport {
    let mut report = h.new_report();
    h.run_checks(&mut report, &["coassociativity", "counit-left", "counit-right"], 1, |t| {
        let a = slots(t);
        let d = a.comul_at(h, 1);
        vec![
            ("coassociativity", d.comul_at(h, 1), d.comul_at(h, 2)),
            ("counit-left", d.counit_at(h, 1), a.clone()),
            ("counit-right", d.counit_at(h, 2), a),
        ]
    });
    h.run_checks(
        &mut report,
        &["coalg1", "coalg2", "counit-braiding"],
        2,
        |t| {
            let x = slots(t);
            let cx = x.braid_at(h, 1);
            let (a, b) = (LinComb::basis(vec![t[0]]), LinComb::basis(vec![t[1]]));
            vec![
                // (Δ⊗id)c = c₂c₁(id⊗Δ)
                ("coalg1", cx.comul_at(h, 1), x.comul_at(h, 2).braid_at(h, 1).braid_at(h, 2)),
                // (id⊗Δ)c = c₁c₂(Δ⊗id)
                ("coalg2", cx.comul_at(h, 2), x.comul_at(h, 1).braid_at(h, 2).braid_at(h, 1)),
                ("counit-braiding", cx.counit_at(h, 1), a.scale(&h.counit[t[1]])),
                ("counit-braiding", cx.counit_at(h, 2), b.scale(&h.counit[t[0]])),
            ]
        },
    );
    report
}

/// `Δ` and `ε` are algebra maps, with the braided product on `H ⊗ H`.
pub fn check_braided_bialgebra(h: &StructureBialgebra) -> ValidationReport {
    let mut report = h.new_report();
    report.checking("comult-unit");
    report.checking("counit-unit");
    let one = h.unit_tensor();
    let d1 = one.comul_at(h, 1);
    let one_one = one.concat(&one);
    if d1 != one_one {
        report.violation("comult-unit", vec!["1".into()], h.render_tensor(&d1), h.render_tensor(&one_one));
    }
    let e1 = h.counit_of(&h.unit);
    if !e1.is_one() {
        report.violation("counit-unit", vec!["1".into()], e1.to_string(), "1".into());
    }
    h.run_checks(
        &mut report,
        &["comult-multiplicative", "counit-multiplicative"],
        2,
        |t| {
            let x = slots(t);
            let lhs = x.mul_at(h, 1).comul_at(h, 1);
            let rhs = x.comul_at(h, 1).comul_at(h, 3).braid_at(h, 2).mul_at(h, 1).mul_at(h, 2);
            vec![
                ("comult-multiplicative", lhs, rhs),
                (
                    "counit-multiplicative",
                    x.mul_at(h, 1).counit_at(h, 1),
                    x.counit_at(h, 1).counit_at(h, 1),
                ),
            ]
        },
    );
    report
}

/// `S` is the convolution inverse of the identity and satisfies the four
/// braided compatibilities.
pub fn check_antipode(h: &StructureBialgebra) -> Result<ValidationReport> {
    if h.antipode.is_none() {
        return Err(Error::MissingAntipode);
    }
    let mut report = h.new_report();
    let one = h.unit_tensor();
    h.run_checks(
        &mut report,
        &["convolution-left", "convolution-right", "antipode-anticomultiplicative"],
        1,
        |t| {
            let a = slots(t);
            let d = a.comul_at(h, 1);
            let eps = one.scale(&h.counit[t[0]]);
            vec![
                ("convolution-left", d.antipode_at(h, 1).mul_at(h, 1), eps.clone()),
                ("convolution-right", d.antipode_at(h, 2).mul_at(h, 1), eps),
                // (S⊗S)cΔ = ΔS
                (
                    "antipode-anticomultiplicative",
                    d.braid_at(h, 1).antipode_at(h, 1).antipode_at(h, 2),
                    a.antipode_at(h, 1).comul_at(h, 1),
                ),
            ]
        },
    );
    h.run_checks(
        &mut report,
        &["antipode-braiding-left", "antipode-braiding-right", "antipode-antimultiplicative"],
        2,
        |t| {
            let x = slots(t);
            vec![
                // (S⊗id)c = c(id⊗S)
                (
                    "antipode-braiding-left",
                    x.braid_at(h, 1).antipode_at(h, 1),
                    x.antipode_at(h, 2).braid_at(h, 1),
                ),
                // (id⊗S)c = c(S⊗id)
                (
                    "antipode-braiding-right",
                    x.braid_at(h, 1).antipode_at(h, 2),
                    x.antipode_at(h, 1).braid_at(h, 1),
                ),
                // ∇c(S⊗S) = S∇
                (
                    "antipode-antimultiplicative",
                    x.antipode_at(h, 1).antipode_at(h, 2).braid_at(h, 1).mul_at(h, 1),
                    x.mul_at(h, 1).antipode_at(h, 1),
                ),
            ]
        },
    );
    Ok(report)
}

/// Algebra, coalgebra, bialgebra and (when present) antipode checks together.
pub fn check_all(h: &StructureBialgebra) -> ValidationReport {
    let mut report = check_braided_algebra(h);
    report.merge(check_braided_coalgebra(h));
    report.merge(check_braided_bialgebra(h));
    if let Ok(r) = check_antipode(h) {
        report.merge(r);
    }
    report
}

/// Both sides of `Δ[a, b] = [Δa, Δb]` in the braided tensor square.
pub fn lemma1_sides(h: &StructureBialgebra, a: &Element, b: &Element) -> (Tensor<usize>, Tensor<usize>) {
    let lhs = h.coproduct(&h.commutator(a, b));
    let quad = h.coproduct(a).concat(&h.coproduct(b));
    (lhs, tensor_square_commutator(h, &quad))
}

pub fn check_lemma1(h: &StructureBialgebra, a: &Element, b: &Element) -> bool {
    let (l, r) = lemma1_sides(h, a, b);
    l == r
}

/// Lemma-1 identity on all basis pairs inside the truncation range.
pub fn check_lemma1_exhaustive(h: &StructureBialgebra) -> ValidationReport {
    let mut report = h.new_report();
    h.run_checks(&mut report, &["lemma1"], 2, |t| {
        let (l, r) = lemma1_sides(h, &h.basis(t[0]), &h.basis(t[1]));
        vec![("lemma1", l, r)]
    });
    report
}

/// `∇c = ∇` on all basis pairs in range.
pub fn is_c_commutative(h: &StructureBialgebra) -> bool {
    h.basis_tuples(2).par_iter().all(|t| {
        let x = slots(t);
        x.braid_at(h, 1).mul_at(h, 1) == x.mul_at(h, 1)
    })
}

/// `cΔ = Δ` on all basis elements in range.
pub fn is_c_cocommutative(h: &StructureBialgebra) -> bool {
    h.basis_tuples(1).par_iter().all(|t| {
        let d = slots(t).comul_at(h, 1);
        d.braid_at(h, 1) == d
    })
}

pub fn is_symmetric_braiding(h: &StructureBialgebra) -> bool {
    h.basis_tuples(2).par_iter().all(|t| {
        let x = slots(t);
        x.braid_at(h, 1).braid_at(h, 1) == x
    })
}

pub fn counit_kernel_is_categorical(h: &StructureBialgebra) -> bool {
    is_categorical(&h.braiding, &h.kernel_of_counit())
}

/// Failing triple of the braid equation, ignoring the truncation.
pub fn braid_failure(h: &StructureBialgebra) -> Option<String> {
    braid_equation_witness(&h.braiding).map(|(i, j, k, _, _)| {
        format!("{}⊗{}⊗{}", h.name(i), h.name(j), h.name(k))
    })
}
