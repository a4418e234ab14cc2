//! Coinvariants of a graded braided Hopf algebra over its degree-0 part:
//! the projection `π`, the map `Π`, the algebra `R`, its action, coaction and
//! braiding, centrality tests and the bosonization check.

use serde::Serialize;

use crate::braided_space::{braid_equation_witness, GenericBraiding};
use crate::error::{Error, Result};
use crate::filtration::{coradical_filtration_connected, element_of, vector_of};
use crate::hopf::{Element, StructureBialgebra};
use crate::linalg::{left_kernel, rank, Subspace, Vector};
use crate::lincomb::{LinComb, Tensor};
use crate::scalar::Scalar;

fn degrees(gr: &StructureBialgebra) -> Result<&[usize]> {
    gr.grading
        .as_deref()
        .ok_or_else(|| Error::Coinvariant("input has no grading".into()))
}

/// Indices of the degree-0 basis vectors, which span `K`.
pub fn degree_zero(gr: &StructureBialgebra) -> Result<Vec<usize>> {
    let deg = degrees(gr)?;
    Ok((0..gr.dim()).filter(|&i| deg[i] == 0).collect())
}

/// `π`: the projection onto degree 0 along the positive degrees.
pub fn projection_pi(gr: &StructureBialgebra, a: &Element) -> Result<Element> {
    let deg = degrees(gr)?;
    Ok(a.filter(|&i| deg[i] == 0))
}

fn pi_tensor_slot(gr: &StructureBialgebra, t: &Tensor<usize>, slot: usize) -> Tensor<usize> {
    let deg = gr.grading.as_ref().expect("graded");
    t.filter(|k| deg[k[slot - 1]] == 0)
}

/// Verifies that `π` is a morphism of algebras and coalgebras.
pub fn check_projection(gr: &StructureBialgebra) -> Result<()> {
    let d = gr.dim();
    let deg = degrees(gr)?;
    let pi = |e: &Element| e.filter(|&i| deg[i] == 0);
    if pi(&gr.unit) != gr.unit {
        return Err(Error::Coinvariant("π(1) ≠ 1".into()));
    }
    for i in 0..d {
        for j in 0..d {
            let (a, b) = (gr.basis(i), gr.basis(j));
            if pi(&gr.product(&a, &b)) != gr.product(&pi(&a), &pi(&b)) {
                return Err(Error::Coinvariant(format!(
                    "π is not multiplicative on ({}, {})",
                    gr.name(i),
                    gr.name(j)
                )));
            }
        }
        let a = gr.basis(i);
        let lhs = pi_tensor_slot(gr, &pi_tensor_slot(gr, &gr.coproduct(&a), 1), 2);
        if lhs != gr.coproduct(&pi(&a)) {
            return Err(Error::Coinvariant(format!("π is not comultiplicative on {}", gr.name(i))));
        }
    }
    Ok(())
}

/// `Π(a) = ∇(id ⊗ Sπ)Δ(a)`.
pub fn pi_map(gr: &StructureBialgebra, a: &Element) -> Result<Element> {
    if gr.antipode.is_none() {
        return Err(Error::MissingAntipode);
    }
    let t = pi_tensor_slot(gr, &gr.coproduct(a), 2);
    Ok(t.antipode_at(gr, 2).mul_at(gr, 1).single())
}

/// `ad_K(k, b) = ∇(∇⊗S)(id⊗c)(Δ⊗id)(k⊗b)`, computed in the ambient algebra.
pub fn adjoint(gr: &StructureBialgebra, k: &Element, b: &Element) -> Element {
    Tensor::product_of(&[k, b])
        .comul_at(gr, 1)
        .braid_at(gr, 2)
        .antipode_at(gr, 3)
        .mul_at(gr, 1)
        .mul_at(gr, 1)
        .single()
}

/// `δ(b) = (π⊗id)Δ(b)`.
pub fn coaction_in(gr: &StructureBialgebra, b: &Element) -> Tensor<usize> {
    pi_tensor_slot(gr, &gr.coproduct(b), 1)
}

/// `(ad⊗id)(id⊗c)(δ⊗id)(a⊗b)` as a tensor in the ambient algebra.
pub fn braiding_formula(gr: &StructureBialgebra, a: &Element, b: &Element) -> Tensor<usize> {
    let t = coaction_in(gr, a).concat(&b.as_tensor()).braid_at(gr, 2);
    t.map_slots(0, 2, |s| {
        adjoint(gr, &gr.basis(s[0]), &gr.basis(s[1]))
            .into_iter()
            .map(|(k, c)| (vec![k], c))
            .collect()
    })
}

#[derive(Clone, Debug)]
pub struct CoinvariantAlgebra {
    pub parent: StructureBialgebra,
    /// Degree-0 basis indices of the parent.
    pub k_basis: Vec<usize>,
    /// `R` inside the parent; its echelon rows are the basis of `R`.
    pub inclusion: Subspace,
    /// `R` with its product, `Δ_R`, antipode and braiding `c_R`.
    pub algebra: StructureBialgebra,
    /// `action[a][j] = ad(k_a, r_j)` in `R`'s basis.
    pub action: Vec<Vec<Element>>,
    /// `coaction[j] = δ(r_j)`, first slot a parent index in `K`, second slot an `R` index.
    pub coaction: Vec<Tensor<usize>>,
    /// The filtration by degree is the coradical filtration of `R`.
    pub degree_filtration_is_coradical: bool,
}

impl CoinvariantAlgebra {
    pub fn dim(&self) -> usize {
        self.inclusion.dim()
    }

    /// `r_j` as an element of the parent.
    pub fn lift(&self, j: usize) -> Element {
        element_of(&self.inclusion.rows()[j])
    }

    pub fn lift_element(&self, e: &Element) -> Element {
        let mut out = Element::zero();
        for (&j, c) in e.iter() {
            out.add_scaled(&self.lift(j), c);
        }
        out
    }

    pub fn lift_tensor(&self, t: &Tensor<usize>) -> Tensor<usize> {
        let mut out = Tensor::zero();
        for (k, c) in t.iter() {
            let part = Tensor::product_of(&[&self.lift(k[0]), &self.lift(k[1])]);
            out.add_scaled(&part, c);
        }
        out
    }

    /// `ad(k, r)` for `k ∈ K` and `r ∈ R` given in their own bases.
    pub fn ad_action(&self, k: &Element, r: &Element) -> Result<Element> {
        let b = adjoint(&self.parent, k, &self.lift_element(r));
        r_coords(&self.inclusion, &b).ok_or_else(|| Error::Coinvariant("ad_K(k, r) escapes R".into()))
    }

    pub fn coaction_of(&self, r: &Element) -> Tensor<usize> {
        let mut out = Tensor::zero();
        for (&j, c) in r.iter() {
            out.add_scaled(&self.coaction[j], c);
        }
        out
    }

    pub fn braiding_r(&self, a: &Element, b: &Element) -> Tensor<usize> {
        Tensor::product_of(&[a, b]).braid_at(&self.algebra, 1)
    }
}

/// Coordinates of a parent element on the echelon rows of `r`, if it lies in `r`.
fn r_coords(r: &Subspace, e: &Element) -> Option<Element> {
    let d = r.ambient_dim();
    r.coords(&vector_of(e, d)).map(|c| LinComb::from_dense(&c))
}

/// A two-slot parent tensor rewritten on `R ⊗ R`, if it lies there.
fn rr_coords(r: &Subspace, t: &Tensor<usize>) -> Option<Tensor<usize>> {
    let piv = r.pivots();
    let mut out = Tensor::zero();
    for (x, &p) in piv.iter().enumerate() {
        for (y, &q) in piv.iter().enumerate() {
            let c = t.coeff(&vec![p, q]);
            if !c.is_zero() {
                out.add_term(vec![x, y], c);
            }
        }
    }
    let rebuilt: Tensor<usize> = {
        let mut acc = Tensor::zero();
        for (k, c) in out.iter() {
            let a = element_of(&r.rows()[k[0]]);
            let b = element_of(&r.rows()[k[1]]);
            acc.add_scaled(&Tensor::product_of(&[&a, &b]), c);
        }
        acc
    };
    (&rebuilt == t).then_some(out)
}

/// `K ⊗ R` coordinates: first slot stays a parent index, second goes to `R`.
fn kr_coords(r: &Subspace, t: &Tensor<usize>) -> Option<Tensor<usize>> {
    let mut by_first: std::collections::BTreeMap<usize, Element> = Default::default();
    for (k, c) in t.iter() {
        by_first.entry(k[0]).or_default().add_term(k[1], c.clone());
    }
    let mut out = Tensor::zero();
    for (a, e) in by_first {
        for (j, c) in r_coords(r, &e)?.into_iter() {
            out.add_term(vec![a, j], c);
        }
    }
    Some(out)
}

fn r_name(gr: &StructureBialgebra, row: &[Scalar], pivot: usize) -> String {
    let e = element_of(row);
    if e.len() == 1 && e.coeff(&pivot).is_one() {
        gr.name(pivot)
    } else {
        format!("[{}]", gr.render(&e))
    }
}

/// `R` as the image of `Π` and as `{b : (id⊗π)Δb = b⊗1}`; both must agree,
/// and `ker Π` must be the left ideal generated by `ker ε|_K`.
pub fn compute_r(gr: &StructureBialgebra) -> Result<CoinvariantAlgebra> {
    gr.validate_shape()?;
    check_projection(gr)?;
    let d = gr.dim();
    let deg = degrees(gr)?.to_vec();
    let k_basis = degree_zero(gr)?;

    let pi_rows: Vec<Vector> = (0..d)
        .map(|i| pi_map(gr, &gr.basis(i)).map(|e| vector_of(&e, d)))
        .collect::<Result<_>>()?;
    let image = Subspace::span(d, pi_rows.clone());

    // b ↦ (id⊗π)Δb − b⊗1 as a d × d² matrix
    let unit = &gr.unit;
    let rows: Vec<Vector> = (0..d)
        .map(|i| {
            let b = gr.basis(i);
            let t = &pi_tensor_slot(gr, &gr.coproduct(&b), 2) - &Tensor::product_of(&[&b, unit]);
            let mut row = vec![Scalar::zero(); d * d];
            for (k, c) in t.iter() {
                row[k[0] * d + k[1]] = c.clone();
            }
            row
        })
        .collect();
    let coinvariant = Subspace::span(d, left_kernel(&rows, d * d));
    if image != coinvariant {
        return Err(Error::Coinvariant(format!(
            "image of Π has dimension {} but the coinvariants have dimension {}",
            image.dim(),
            coinvariant.dim()
        )));
    }

    let kernel = Subspace::span(d, left_kernel(&pi_rows, d));
    let k_space = Subspace::coordinate(d, k_basis.iter().copied());
    let ker_eps_k = k_space.intersection(&gr.kernel_of_counit());
    let ideal_gens: Vec<Vector> = (0..d)
        .flat_map(|i| {
            ker_eps_k
                .rows()
                .iter()
                .map(move |k| vector_of(&gr.product(&gr.basis(i), &element_of(k)), d))
        })
        .collect();
    let ideal = Subspace::span(d, ideal_gens);
    if kernel != ideal {
        return Err(Error::Coinvariant(format!(
            "ker Π has dimension {} but the left ideal generated by ker ε|K has dimension {}",
            kernel.dim(),
            ideal.dim()
        )));
    }

    let r = image;
    let m = r.dim();
    let lifts: Vec<Element> = r.rows().iter().map(|v| element_of(v)).collect();
    let mut r_deg = Vec::with_capacity(m);
    for (j, e) in lifts.iter().enumerate() {
        let mut ds = e.keys().map(|&i| deg[i]);
        let first = ds.next().unwrap_or(0);
        if ds.any(|x| x != first) {
            return Err(Error::Coinvariant(format!("basis vector {j} of R is not homogeneous")));
        }
        r_deg.push(first);
    }
    let escape = |what: &str| Error::Coinvariant(format!("{what} escapes R"));
    let names: Vec<String> = (0..m).map(|j| r_name(gr, &r.rows()[j], r.pivots()[j])).collect();

    let unit_r = r_coords(&r, &gr.unit).ok_or_else(|| escape("the unit"))?;
    let mut mult = vec![vec![Element::zero(); m]; m];
    for i in 0..m {
        for j in 0..m {
            mult[i][j] = r_coords(&r, &gr.product(&lifts[i], &lifts[j])).ok_or_else(|| escape("a product"))?;
        }
    }
    let counit: Vec<Scalar> = lifts.iter().map(|e| gr.counit_of(e)).collect();

    let comult: Vec<Tensor<usize>> = lifts
        .iter()
        .map(|e| {
            let t = gr.coproduct(e).map_slots(0, 1, |s| {
                pi_map(gr, &gr.basis(s[0]))
                    .expect("antipode present")
                    .into_iter()
                    .map(|(k, c)| (vec![k], c))
                    .collect()
            });
            rr_coords(&r, &t).ok_or_else(|| escape("Δ_R"))
        })
        .collect::<Result<_>>()?;

    let action: Vec<Vec<Element>> = k_basis
        .iter()
        .map(|&a| {
            lifts
                .iter()
                .map(|e| r_coords(&r, &adjoint(gr, &gr.basis(a), e)).ok_or_else(|| escape("ad_K")))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;

    let coaction: Vec<Tensor<usize>> = lifts
        .iter()
        .map(|e| kr_coords(&r, &coaction_in(gr, e)).ok_or_else(|| escape("δ_R")))
        .collect::<Result<_>>()?;
    for (j, t) in coaction.iter().enumerate() {
        let back = t.counit_at(gr, 1).single();
        if back != LinComb::basis(j) {
            return Err(Error::Coinvariant(format!("δ_R is not counital on {}", names[j])));
        }
    }

    let mut braid = vec![vec![Vec::new(); m]; m];
    for i in 0..m {
        for j in 0..m {
            let t = braiding_formula(gr, &lifts[i], &lifts[j]);
            let rr = rr_coords(&r, &t).ok_or_else(|| escape("c_R"))?;
            braid[i][j] = rr.into_iter().map(|(k, c)| ((k[0], k[1]), c)).collect();
        }
    }
    let braiding = GenericBraiding::from_fn(m, |i, j| braid[i][j].clone());
    if let Some((a, b, c, _, _)) = braid_equation_witness(&braiding) {
        return Err(Error::BraidEquation(format!(
            "c_R fails on {}⊗{}⊗{}",
            names[a], names[b], names[c]
        )));
    }

    let weights: Option<Vec<usize>> = gr.truncation.map(|_| {
        lifts
            .iter()
            .map(|e| e.keys().map(|&i| gr.weight(i)).max().unwrap_or(0))
            .collect()
    });

    let mut algebra = StructureBialgebra {
        names,
        unit: unit_r,
        mult,
        counit,
        comult,
        antipode: None,
        braiding,
        grading: Some(r_deg),
        weights,
        truncation: gr.truncation,
    };
    algebra.antipode = Some(connected_antipode(&algebra)?);

    let degree_filtration_is_coradical = match coradical_filtration_connected(&algebra) {
        Ok(f) => {
            let g = algebra.grading.as_ref().unwrap();
            let top = g.iter().copied().max().unwrap_or(0);
            f.steps.len() == top + 1
                && f.steps.iter().enumerate().all(|(n, s)| {
                    *s == Subspace::coordinate(m, (0..m).filter(|&i| g[i] <= n))
                })
        }
        Err(_) => false,
    };

    Ok(CoinvariantAlgebra {
        parent: gr.clone(),
        k_basis,
        inclusion: r,
        algebra,
        action,
        coaction,
        degree_filtration_is_coradical,
    })
}

/// `S(1) = 1`, `S(r) = ε(r)1 − Σ r' S(r'')` over the terms of `Δr` whose left
/// factor has positive degree, processed in increasing degree.
pub fn connected_antipode(h: &StructureBialgebra) -> Result<Vec<Element>> {
    let deg = h
        .grading
        .as_ref()
        .ok_or_else(|| Error::NotConnected("no grading".into()))?;
    let d = h.dim();
    if (0..d).filter(|&i| deg[i] == 0).count() != 1 {
        return Err(Error::NotConnected("degree-0 part is not one-dimensional".into()));
    }
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by_key(|&i| deg[i]);
    let mut s: Vec<Option<Element>> = vec![None; d];
    for &i in &order {
        let mut out = h.unit.scale(&h.counit[i]);
        for (k, c) in h.comult[i].iter() {
            if deg[k[0]] == 0 {
                continue;
            }
            let sb = s[k[1]].as_ref().ok_or_else(|| {
                Error::NotConnected(format!("coproduct of {} is not degree-bounded", h.name(i)))
            })?;
            let prod = h.product(&h.basis(k[0]), sb);
            out.add_scaled(&prod, &-c);
        }
        s[i] = Some(out);
    }
    Ok(s.into_iter().map(Option::unwrap).collect())
}

/// `∇(f⊗id) = ∇c(f⊗id)` and `∇(id⊗f) = ∇c(id⊗f)` for the inclusion of a
/// subspace spanned by `domain`.
pub fn is_central(h: &StructureBialgebra, domain: &[Element]) -> bool {
    let d = h.dim();
    domain.iter().all(|k| {
        (0..d).all(|i| {
            let b = h.basis(i);
            h.product(k, &b) == h.op_product(k, &b) && h.product(&b, k) == h.op_product(&b, k)
        })
    })
}

/// `(f⊗id)Δ = (f⊗id)cΔ` and `(id⊗f)Δ = (id⊗f)cΔ` for a linear map `f` on `H`.
pub fn is_cocentral(h: &StructureBialgebra, f: impl Fn(usize) -> Element) -> bool {
    (0..h.dim()).all(|i| {
        let delta = h.coproduct(&h.basis(i));
        let twisted = delta.braid_at(h, 1);
        let apply = |t: &Tensor<usize>, slot: usize| {
            t.apply_at(slot, |&b| f(b).into_iter().collect())
        };
        apply(&delta, 1) == apply(&twisted, 1) && apply(&delta, 2) == apply(&twisted, 2)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CollapseStatus {
    /// A hypothesis holds and `c_R` equals the restricted braiding.
    Confirmed,
    /// A hypothesis holds but the braidings differ.
    Violated,
    /// Neither hypothesis holds; `c_R_equals_c` is still recorded.
    ConditionalVacuous,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollapseReport {
    pub inclusion_central: bool,
    pub projection_cocentral: bool,
    pub c_r_equals_c: bool,
    /// `(π⊗id)c = c(id⊗π)` on all basis pairs.
    pub graded_morphism_identity: bool,
    pub status: CollapseStatus,
    pub witness: Option<String>,
}

pub fn check_braiding_collapse(r: &CoinvariantAlgebra) -> CollapseReport {
    let gr = &r.parent;
    let d = gr.dim();
    let k_elems: Vec<Element> = r.k_basis.iter().map(|&a| gr.basis(a)).collect();
    let inclusion_central = is_central(gr, &k_elems);
    let pi = |i: usize| projection_pi(gr, &gr.basis(i)).expect("graded");
    let projection_cocentral = is_cocentral(gr, pi);

    let mut c_r_equals_c = true;
    let mut witness = None;
    'outer: for i in 0..r.dim() {
        for j in 0..r.dim() {
            let via_r = r.lift_tensor(&r.braiding_r(&LinComb::basis(i), &LinComb::basis(j)));
            let direct = Tensor::product_of(&[&r.lift(i), &r.lift(j)]).braid_at(gr, 1);
            if via_r != direct {
                c_r_equals_c = false;
                witness = Some(format!(
                    "c_R({n}⊗{m}) = {} but c({n}⊗{m}) = {}",
                    gr.render_tensor(&via_r),
                    gr.render_tensor(&direct),
                    n = r.algebra.name(i),
                    m = r.algebra.name(j)
                ));
                break 'outer;
            }
        }
    }

    let graded_morphism_identity = (0..d).all(|i| {
        (0..d).all(|j| {
            let x = Tensor::from_slots(vec![i, j]);
            let lhs = pi_tensor_slot(gr, &x.braid_at(gr, 1), 1);
            let rhs = pi_tensor_slot(gr, &x, 2).braid_at(gr, 1);
            lhs == rhs
        })
    });

    let status = match (inclusion_central || projection_cocentral, c_r_equals_c) {
        (true, true) => CollapseStatus::Confirmed,
        (true, false) => CollapseStatus::Violated,
        (false, _) => CollapseStatus::ConditionalVacuous,
    };
    CollapseReport {
        inclusion_central,
        projection_cocentral,
        c_r_equals_c,
        graded_morphism_identity,
        status,
        witness,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BosonizationDegree {
    pub degree: usize,
    pub domain_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

/// Rank of `k ⊗ r ↦ kr` from `K ⊗ R(n)` to the degree-`n` part, per degree.
/// Under a truncation only pairs of total weight within range are counted,
/// and only target vectors within range.
pub fn bosonization_degrees(r: &CoinvariantAlgebra) -> Vec<BosonizationDegree> {
    let gr = &r.parent;
    let d = gr.dim();
    let deg = gr.grading.as_ref().expect("graded");
    let r_deg = r.algebra.grading.as_ref().expect("graded");
    let top = deg.iter().copied().max().unwrap_or(0);
    let lift_weight = |j: usize| r.lift(j).keys().map(|&i| gr.weight(i)).max().unwrap_or(0);
    let in_range = |w: usize| gr.truncation.is_none_or(|t| w <= t);
    (0..=top)
        .map(|n| {
            let rows: Vec<Vector> = r
                .k_basis
                .iter()
                .flat_map(|&a| (0..r.dim()).map(move |j| (a, j)))
                .filter(|&(a, j)| r_deg[j] == n && in_range(gr.weight(a) + lift_weight(j)))
                .map(|(a, j)| vector_of(&gr.product(&gr.basis(a), &r.lift(j)), d))
                .collect();
            BosonizationDegree {
                degree: n,
                domain_dim: rows.len(),
                target_dim: (0..d).filter(|&i| deg[i] == n && in_range(gr.weight(i))).count(),
                rank: rank(&rows, d),
            }
        })
        .collect()
}

pub fn bosonization_check(r: &CoinvariantAlgebra) -> bool {
    bosonization_degrees(r)
        .iter()
        .all(|b| b.rank == b.domain_dim && b.rank == b.target_dim)
}
