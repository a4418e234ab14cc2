//! Wedge powers, Hopf algebra filtrations, coradical filtrations of connected
//! algebras, associated graded bialgebras and the commutator filtration test.

use serde::Serialize;

use crate::braided_space::is_categorical;
use crate::error::{Error, Result};
use crate::hopf::{Element, StructureBialgebra};
use crate::linalg::{inverse, left_kernel, unit_vector, vec_mat, Subspace, Vector};
use crate::lincomb::{LinComb, Tensor};
use crate::report::ValidationReport;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationLadder {
    pub steps: Vec<Subspace>,
    /// The top step is the whole algebra.
    pub exhaustive: bool,
}

impl FiltrationLadder {
    pub fn dims(&self) -> Vec<usize> {
        self.steps.iter().map(Subspace::dim).collect()
    }

    /// `F_n`, which is the top step for `n` past the end and zero for `n < 0`.
    pub fn step(&self, n: isize) -> Subspace {
        if n < 0 {
            return Subspace::zero(self.steps[0].ambient_dim());
        }
        let i = (n as usize).min(self.steps.len() - 1);
        self.steps[i].clone()
    }
}

pub fn element_of(v: &[Scalar]) -> Element {
    LinComb::from_dense(v)
}

pub fn vector_of(e: &Element, d: usize) -> Vector {
    e.to_dense(d)
}

/// `Δ⁻¹(K⊗H + H⊗W)`: the kernel of `(q_K ⊗ q_W)Δ`.
pub fn wedge(h: &StructureBialgebra, k: &Subspace, w: &Subspace) -> Subspace {
    let d = h.dim();
    let qk: Vec<Vector> = (0..d).map(|a| k.quotient_coords(&unit_vector(d, a))).collect();
    let qw: Vec<Vector> = (0..d).map(|a| w.quotient_coords(&unit_vector(d, a))).collect();
    let (nk, nw) = (d - k.dim(), d - w.dim());
    let cols = nk * nw;
    if cols == 0 {
        return Subspace::full(d);
    }
    let rows: Vec<Vector> = (0..d)
        .map(|i| {
            let mut row = vec![Scalar::zero(); cols];
            for (key, c) in h.comult[i].iter() {
                for (x, a) in qk[key[0]].iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let ca = c * a;
                    for (y, b) in qw[key[1]].iter().enumerate() {
                        if !b.is_zero() {
                            row[x * nw + y] += &(&ca * b);
                        }
                    }
                }
            }
            row
        })
        .collect();
    Subspace::span(d, left_kernel(&rows, cols))
}

/// Stacks wedges of `bottom` until they stop growing.
fn ladder(h: &StructureBialgebra, bottom: Subspace) -> FiltrationLadder {
    let mut steps = vec![bottom.clone()];
    loop {
        let next = wedge(h, &bottom, steps.last().unwrap());
        if &next == steps.last().unwrap() {
            break;
        }
        steps.push(next);
    }
    let exhaustive = steps.last().unwrap().dim() == h.dim();
    FiltrationLadder { steps, exhaustive }
}

/// Checks that `k` contains 1 and is closed under `∇`, `Δ` and `S`, and that it is categorical.
pub fn validate_hopf_subalgebra(h: &StructureBialgebra, k: &Subspace) -> ValidationReport {
    let d = h.dim();
    let mut report = ValidationReport::new();
    report.degree_limit = h.truncation;
    for axiom in ["unit", "product", "coproduct", "antipode", "categorical"] {
        report.checking(axiom);
    }
    let unit = vector_of(&h.unit, d);
    if !k.contains(&unit) {
        report.violation("unit", vec!["1".into()], "1 ∉ K".into(), "1 ∈ K".into());
    }
    let rows: Vec<Element> = k.rows().iter().map(|r| element_of(r)).collect();
    for (i, a) in rows.iter().enumerate() {
        for (j, b) in rows.iter().enumerate() {
            let p = h.product(a, b);
            if !k.contains(&vector_of(&p, d)) {
                report.violation(
                    "product",
                    vec![format!("k{i}"), format!("k{j}")],
                    h.render(&p),
                    "element of K".into(),
                );
            }
        }
        let delta = h.coproduct(a);
        if !tensor_in(&delta, k, k, d) {
            report.violation("coproduct", vec![format!("k{i}")], h.render_tensor(&delta), "element of K⊗K".into());
        }
        if let Ok(s) = h.apply_antipode(a) {
            if !k.contains(&vector_of(&s, d)) {
                report.violation("antipode", vec![format!("k{i}")], h.render(&s), "element of K".into());
            }
        }
    }
    if !is_categorical(&h.braiding, k) {
        report.violation("categorical", vec![], "c(K⊗H) ⊄ H⊗K or c(H⊗K) ⊄ K⊗H".into(), "categorical".into());
    }
    report
}

/// Whether a two-slot tensor lies in `A ⊗ B`.
fn tensor_in(t: &Tensor<usize>, a: &Subspace, b: &Subspace, d: usize) -> bool {
    let qa: Vec<Vector> = (0..d).map(|i| a.quotient_coords(&unit_vector(d, i))).collect();
    let qb: Vec<Vector> = (0..d).map(|i| b.quotient_coords(&unit_vector(d, i))).collect();
    // image under (q_A ⊗ id) and (id ⊗ q_B) must both vanish
    let mut left = vec![Scalar::zero(); (d - a.dim()) * d];
    let mut right = vec![Scalar::zero(); d * (d - b.dim())];
    for (key, c) in t.iter() {
        for (x, v) in qa[key[0]].iter().enumerate() {
            if !v.is_zero() {
                left[x * d + key[1]] += &(c * v);
            }
        }
        let nb = d - b.dim();
        for (y, v) in qb[key[1]].iter().enumerate() {
            if !v.is_zero() {
                right[key[0] * nb + y] += &(c * v);
            }
        }
    }
    left.iter().all(Scalar::is_zero) && right.iter().all(Scalar::is_zero)
}

/// `F_n = ∧^{n+1} K` for a categorical braided Hopf subalgebra `K`.
pub fn hopf_filtration(h: &StructureBialgebra, k: &Subspace) -> Result<FiltrationLadder> {
    if k.ambient_dim() != h.dim() {
        return Err(Error::Dimension(format!(
            "subspace of a {}-dimensional space in a {}-dimensional algebra",
            k.ambient_dim(),
            h.dim()
        )));
    }
    let report = validate_hopf_subalgebra(h, k);
    if !report.pass() {
        return Err(Error::InvalidSubalgebra(report.violated_axioms().join(", ")));
    }
    Ok(ladder(h, k.clone()))
}

/// `C_0 = span(1)`, `C_n = wedge(C_0, C_{n-1})` for a connected graded (or
/// weight-filtered) algebra.
pub fn coradical_filtration_connected(h: &StructureBialgebra) -> Result<FiltrationLadder> {
    if h.grading.is_none() && h.weights.is_none() {
        return Err(Error::NotConnected("no grading".into()));
    }
    let d = h.dim();
    let degree_zero: Vec<usize> = (0..d).filter(|&i| h.weight(i) == 0).collect();
    if degree_zero.len() != 1 {
        return Err(Error::NotConnected(format!(
            "degree-0 component has dimension {}",
            degree_zero.len()
        )));
    }
    let c0 = Subspace::span(d, vec![vector_of(&h.unit, d)]);
    if c0 != Subspace::coordinate(d, degree_zero) {
        return Err(Error::NotConnected("degree-0 component is not spanned by 1".into()));
    }
    Ok(ladder(h, c0))
}

/// A basis adapted to a ladder: complement rows of each step over the one
/// below, lowest step first.
#[derive(Clone, Debug)]
pub struct AdaptedBasis {
    pub vectors: Vec<Vector>,
    pub degrees: Vec<usize>,
    pub pivots: Vec<usize>,
    inverse: Vec<Vector>,
}

impl AdaptedBasis {
    pub fn new(f: &FiltrationLadder) -> Result<Self> {
        if !f.exhaustive {
            return Err(Error::Filtration("ladder does not exhaust the algebra".into()));
        }
        let d = f.steps[0].ambient_dim();
        let (mut vectors, mut degrees, mut pivots) = (Vec::new(), Vec::new(), Vec::new());
        for n in 0..f.steps.len() {
            let below = f.step(n as isize - 1);
            if !below.is_subspace_of(&f.steps[n]) {
                return Err(Error::Filtration(format!("step {} is not contained in step {n}", n - 1)));
            }
            for (p, row) in f.steps[n].complement_rows(&below) {
                vectors.push(row);
                degrees.push(n);
                pivots.push(p);
            }
        }
        debug_assert_eq!(vectors.len(), d);
        let inverse = inverse(&vectors)?;
        Ok(AdaptedBasis {
            vectors,
            degrees,
            pivots,
            inverse,
        })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Coordinates of `v` in the adapted basis.
    pub fn coords(&self, v: &[Scalar]) -> Vector {
        vec_mat(v, &self.inverse)
    }

    pub fn element(&self, k: usize) -> Element {
        element_of(&self.vectors[k])
    }

    fn coords_of(&self, e: &Element) -> Vec<(usize, Scalar)> {
        let d = self.len();
        self.coords(&vector_of(e, d))
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    /// A two-slot tensor rewritten in the adapted basis on both slots.
    fn tensor_coords(&self, t: &Tensor<usize>) -> Vec<((usize, usize), Scalar)> {
        let mut out: Tensor<usize> = Tensor::zero();
        for (key, c) in t.iter() {
            let row_a = &self.inverse[key[0]];
            let row_b = &self.inverse[key[1]];
            for (x, a) in row_a.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let ca = c * a;
                for (y, b) in row_b.iter().enumerate() {
                    if !b.is_zero() {
                        out.add_term(vec![x, y], &ca * b);
                    }
                }
            }
        }
        out.into_iter().map(|(k, c)| ((k[0], k[1]), c)).collect()
    }
}

fn gr_name(h: &StructureBialgebra, v: &[Scalar], pivot: usize) -> String {
    let e = element_of(v);
    if e.len() == 1 && e.coeff(&pivot).is_one() {
        h.name(pivot)
    } else {
        format!("[{}]", h.render(&e))
    }
}

/// The graded bialgebra `⊕ F_n/F_{n-1}` with structure constants taken from
/// the top-degree parts in an adapted basis, plus the report of every term
/// that violated the filtration axioms on the way.
pub fn associated_graded_with_report(
    h: &StructureBialgebra,
    f: &FiltrationLadder,
) -> Result<(StructureBialgebra, ValidationReport)> {
    let basis = AdaptedBasis::new(f)?;
    let d = basis.len();
    let deg = &basis.degrees;
    let mut report = ValidationReport::new();
    report.degree_limit = h.truncation;
    for axiom in ["filtration-unit", "filtration-product", "filtration-coproduct", "filtration-braiding", "filtration-antipode"] {
        report.checking(axiom);
    }
    let names: Vec<String> = (0..d)
        .map(|k| gr_name(h, &basis.vectors[k], basis.pivots[k]))
        .collect();
    let weights: Option<Vec<usize>> = h.truncation.map(|_| {
        (0..d)
            .map(|k| basis.element(k).keys().map(|&i| h.weight(i)).max().unwrap_or(0))
            .collect()
    });
    let within = |ks: &[usize]| match (h.truncation, &weights) {
        (Some(t), Some(w)) => ks.iter().map(|&k| w[k]).sum::<usize>() <= t,
        _ => true,
    };
    let elems: Vec<Element> = (0..d).map(|k| basis.element(k)).collect();

    let mut unit = Element::zero();
    for (k, c) in basis.coords_of(&h.unit) {
        if deg[k] > 0 {
            report.violation("filtration-unit", vec!["1".into()], names[k].clone(), "F_0".into());
        } else {
            unit.add_term(k, c);
        }
    }

    let mut mult = vec![vec![Element::zero(); d]; d];
    for i in 0..d {
        for j in 0..d {
            if !within(&[i, j]) {
                continue;
            }
            let top = deg[i] + deg[j];
            for (k, c) in basis.coords_of(&h.product(&elems[i], &elems[j])) {
                if deg[k] > top {
                    report.violation(
                        "filtration-product",
                        vec![names[i].clone(), names[j].clone()],
                        format!("term {} of degree {}", names[k], deg[k]),
                        format!("degree ≤ {top}"),
                    );
                } else if deg[k] == top {
                    mult[i][j].add_term(k, c);
                }
            }
        }
    }

    let mut comult = vec![Tensor::zero(); d];
    for i in 0..d {
        for ((a, b), c) in basis.tensor_coords(&h.coproduct(&elems[i])) {
            let total = deg[a] + deg[b];
            if total > deg[i] {
                report.violation(
                    "filtration-coproduct",
                    vec![names[i].clone()],
                    format!("term {}⊗{}", names[a], names[b]),
                    format!("total degree ≤ {}", deg[i]),
                );
            } else if total == deg[i] {
                comult[i].add_term(vec![a, b], c);
            }
        }
    }

    let counit: Vec<Scalar> = (0..d)
        .map(|k| if deg[k] == 0 { h.counit_of(&elems[k]) } else { Scalar::zero() })
        .collect();

    let mut braid = vec![vec![Vec::new(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let t = Tensor::product_of(&[&elems[i], &elems[j]]).braid_at(h, 1);
            for ((a, b), c) in basis.tensor_coords(&t) {
                if deg[a] > deg[j] || deg[b] > deg[i] {
                    report.violation(
                        "filtration-braiding",
                        vec![names[i].clone(), names[j].clone()],
                        format!("term {}⊗{}", names[a], names[b]),
                        format!("degrees ≤ ({}, {})", deg[j], deg[i]),
                    );
                } else if deg[a] == deg[j] && deg[b] == deg[i] {
                    braid[i][j].push(((a, b), c));
                }
            }
        }
    }
    let braiding = crate::braided_space::GenericBraiding::from_fn(d, |i, j| braid[i][j].clone());

    let antipode = match &h.antipode {
        None => None,
        Some(_) => {
            let mut s = vec![Element::zero(); d];
            for i in 0..d {
                for (k, c) in basis.coords_of(&h.apply_antipode(&elems[i])?) {
                    if deg[k] > deg[i] {
                        report.violation(
                            "filtration-antipode",
                            vec![names[i].clone()],
                            format!("term {}", names[k]),
                            format!("degree ≤ {}", deg[i]),
                        );
                    } else if deg[k] == deg[i] {
                        s[i].add_term(k, c);
                    }
                }
            }
            Some(s)
        }
    };

    let gr = StructureBialgebra {
        names,
        unit,
        mult,
        counit,
        comult,
        antipode,
        braiding,
        grading: Some(deg.clone()),
        weights,
        truncation: h.truncation,
    };
    Ok((gr, report))
}

pub fn associated_graded(h: &StructureBialgebra, f: &FiltrationLadder) -> Result<StructureBialgebra> {
    let (gr, report) = associated_graded_with_report(h, f)?;
    if let Some(v) = report.violations.first() {
        return Err(Error::Filtration(format!(
            "{} violated at ({}): {} vs {}",
            v.axiom,
            v.witness.join(", "),
            v.lhs,
            v.rhs
        )));
    }
    Ok(gr)
}

/// `[F_m, F_n] ⊆ F_{m+n-1}` on adapted basis vectors; pairs with `m = 0` are
/// the hypothesis `[F_0, F_n] ⊆ F_{n-1}`.
pub fn check_commutator_filtration(h: &StructureBialgebra, f: &FiltrationLadder) -> Result<ValidationReport> {
    let basis = AdaptedBasis::new(f)?;
    let d = basis.len();
    let mut report = ValidationReport::new();
    report.degree_limit = h.truncation;
    report.checking("hypothesis");
    report.checking("commutator-filtration");
    let elems: Vec<Element> = (0..d).map(|k| basis.element(k)).collect();
    let weight = |k: usize| elems[k].keys().map(|&i| h.weight(i)).max().unwrap_or(0);
    for i in 0..d {
        for j in 0..d {
            if h.truncation.is_some_and(|t| weight(i) + weight(j) > t) {
                continue;
            }
            let (m, n) = (basis.degrees[i], basis.degrees[j]);
            let target = f.step(m as isize + n as isize - 1);
            let bracket = h.commutator(&elems[i], &elems[j]);
            if !target.contains(&vector_of(&bracket, d)) {
                let axiom = if m == 0 || n == 0 { "hypothesis" } else { "commutator-filtration" };
                report.violation(
                    axiom,
                    vec![h.render(&elems[i]), h.render(&elems[j])],
                    h.render(&bracket),
                    format!("element of F_{}", m as isize + n as isize - 1),
                );
            }
        }
    }
    Ok(report)
}
