//! `Q(H) = I/I²` for the augmentation ideal `I` of a connected graded
//! braided bialgebra, the canonical map `S(Q) → H`, and PBW verdicts.

use serde::{Deserialize, Serialize};

use crate::braided_space::{braid_check, is_symmetric, GenericBraiding};
use crate::error::{Error, Result};
use crate::filtration::vector_of;
use crate::hopf::{Element, StructureBialgebra};
use crate::linalg::{rank, Subspace, Vector};
use crate::lincomb::Tensor;
use crate::scalar::Scalar;
use crate::symmetric::{oracle_standard_words, SymmetricAlgebra};
use crate::tensor_algebra::{Word, DEFAULT_DEGREE_CAP};

/// Homogeneous representatives of a basis of `I/I²` and the braiding they inherit.
#[derive(Clone, Debug)]
pub struct QSpace {
    /// Basis indices of the ambient algebra.
    pub representatives: Vec<usize>,
    pub names: Vec<String>,
    pub degrees: Vec<usize>,
    pub braiding: GenericBraiding,
    /// `c` maps `span(reps) ⊗ span(reps)` into itself exactly, not just modulo `I²`.
    pub intertwines_exactly: bool,
    /// Lowest `deg q_a + deg q_b` where it does not.
    pub non_intertwining_degree: Option<usize>,
}

impl QSpace {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_diagonal(&self) -> bool {
        self.braiding.diagonal_coefficients().is_some()
    }

    pub fn is_symmetric(&self) -> bool {
        is_symmetric(&self.braiding)
    }

    /// `S(Q)` with Scheunert monomials, when the braiding is diagonal and symmetric.
    pub fn symmetric_algebra(&self) -> Option<SymmetricAlgebra> {
        SymmetricAlgebra::from_braiding(&self.braiding, self.names.clone()).ok()
    }
}

fn connected_degrees(h: &StructureBialgebra) -> Result<&[usize]> {
    let deg = h
        .grading
        .as_deref()
        .ok_or_else(|| Error::NotConnected("no grading".into()))?;
    if deg.iter().filter(|&&g| g == 0).count() != 1 {
        return Err(Error::NotConnected("degree-0 part is not one-dimensional".into()));
    }
    Ok(deg)
}

/// `Q = I/I²`: representatives are the positive-degree basis vectors at the
/// non-pivot columns of `I²`.
pub fn compute_q(h: &StructureBialgebra) -> Result<QSpace> {
    let deg = connected_degrees(h)?;
    let d = h.dim();
    let positive: Vec<usize> = (0..d).filter(|&i| deg[i] > 0).collect();
    let squares: Vec<Vector> = positive
        .iter()
        .flat_map(|&i| positive.iter().map(move |&j| (i, j)))
        .map(|(i, j)| vector_of(&h.product(&h.basis(i), &h.basis(j)), d))
        .collect();
    let i2 = Subspace::span(d, squares);
    let pivots = i2.pivots();
    let representatives: Vec<usize> = positive
        .iter()
        .copied()
        .filter(|p| pivots.binary_search(p).is_err())
        .collect();
    let m = representatives.len();
    // column of the quotient coordinates belonging to each representative
    let non_pivots = i2.non_pivots();
    let slot: Vec<usize> = representatives
        .iter()
        .map(|r| non_pivots.iter().position(|c| c == r).expect("representative is a non-pivot"))
        .collect();
    let project = |b: usize| -> Vec<Scalar> {
        let q = i2.quotient_coords(&crate::linalg::unit_vector(d, b));
        slot.iter().map(|&s| q[s].clone()).collect()
    };
    let projections: Vec<Vec<Scalar>> = (0..d).map(project).collect();
    let mut non_intertwining_degree: Option<usize> = None;
    let braiding = GenericBraiding::from_fn(m, |a, b| {
        let t = Tensor::from_slots(vec![representatives[a], representatives[b]]).braid_at(h, 1);
        let mut out = Vec::new();
        for (key, c) in t.iter() {
            if !(representatives.contains(&key[0]) && representatives.contains(&key[1])) {
                let n = deg[representatives[a]] + deg[representatives[b]];
                non_intertwining_degree = Some(non_intertwining_degree.map_or(n, |m| m.min(n)));
            }
            for (x, u) in projections[key[0]].iter().enumerate() {
                for (y, v) in projections[key[1]].iter().enumerate() {
                    if !u.is_zero() && !v.is_zero() {
                        out.push(((x, y), &(c * u) * v));
                    }
                }
            }
        }
        out
    });
    Ok(QSpace {
        names: representatives.iter().map(|&i| h.name(i)).collect(),
        degrees: representatives.iter().map(|&i| deg[i]).collect(),
        representatives,
        braiding,
        intertwines_exactly: non_intertwining_degree.is_none(),
        non_intertwining_degree,
    })
}

/// A basis of `S(Q)` in one weighted degree, as words in `Q`'s letters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MonomialSource {
    Scheunert,
    Oracle,
}

pub fn sym_basis_in_degree(q: &QSpace, n: usize, cap: usize) -> Result<(MonomialSource, Vec<Word>)> {
    if let Some(s) = q.symmetric_algebra() {
        let words = s
            .basis_in_weight(&q.degrees, n)
            .into_iter()
            .map(|m| Word(m.0))
            .collect();
        return Ok((MonomialSource::Scheunert, words));
    }
    let words = oracle_standard_words(&q.braiding, &q.degrees, n, cap)?;
    Ok((MonomialSource::Oracle, words))
}

/// The ordered product of lifted representatives.
pub fn lift_word(h: &StructureBialgebra, q: &QSpace, w: &Word) -> Element {
    let mut acc = h.unit.clone();
    for &letter in &w.0 {
        acc = h.product(&acc, &h.basis(q.representatives[letter]));
    }
    acc
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeMap {
    pub degree: usize,
    pub source: MonomialSource,
    pub monomials: Vec<Vec<String>>,
    /// Basis indices of the target in this degree (the matrix columns).
    pub target_basis: Vec<String>,
    pub matrix: Vec<Vec<Scalar>>,
    pub rank: usize,
}

/// The canonical map `S(Q) → H` in degrees `0..=n_max`, as one matrix per degree.
pub fn canonical_map(h: &StructureBialgebra, q: &QSpace, n_max: usize, cap: usize) -> Result<Vec<DegreeMap>> {
    let deg = connected_degrees(h)?;
    let d = h.dim();
    (0..=n_max)
        .map(|n| {
            let (source, words) = sym_basis_in_degree(q, n, cap)?;
            let cols: Vec<usize> = (0..d).filter(|&i| deg[i] == n).collect();
            let matrix: Vec<Vec<Scalar>> = words
                .iter()
                .map(|w| {
                    let v = lift_word(h, q, w);
                    cols.iter().map(|c| v.coeff(c)).collect()
                })
                .collect();
            let r = rank(&matrix, cols.len());
            Ok(DegreeMap {
                degree: n,
                source,
                monomials: words
                    .iter()
                    .map(|w| w.0.iter().map(|&l| q.names[l].clone()).collect())
                    .collect(),
                target_basis: cols.iter().map(|&c| h.name(c)).collect(),
                matrix,
                rank: r,
            })
        })
        .collect()
}

/// Lowest weighted degree where `∇(id − c_Q)(q_a ⊗ q_b) ≠ 0` in `H`.
pub fn ill_defined_degree(h: &StructureBialgebra, q: &QSpace) -> Option<usize> {
    let mut worst: Option<usize> = None;
    for a in 0..q.dim() {
        for b in 0..q.dim() {
            let n = q.degrees[a] + q.degrees[b];
            if h.truncation.is_some_and(|t| n > t) {
                continue;
            }
            let mut rel = lift_word(h, q, &Word(vec![a, b]));
            for ((k, l), c) in q.braiding.image(a, b) {
                rel.add_scaled(&lift_word(h, q, &Word(vec![*k, *l])), &-c);
            }
            if !rel.is_zero() {
                worst = Some(worst.map_or(n, |w: usize| w.min(n)));
            }
        }
    }
    worst
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "PBW_TYPE_TRUE")]
    True,
    #[serde(rename = "PBW_TYPE_FALSE")]
    False,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::True => "PBW_TYPE_TRUE",
            Verdict::False => "PBW_TYPE_FALSE",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PbwReport {
    pub verdict: Verdict,
    /// `(dim H(n), dim S(Q)(n))` for each checked degree.
    pub degreewise_dims: Vec<(usize, usize)>,
    pub ranks: Vec<usize>,
    pub first_failure_degree: Option<usize>,
    /// Highest degree for which the comparison was carried out.
    pub verified_through: usize,
    pub requested_degree: usize,
    pub q_names: Vec<String>,
    pub q_degrees: Vec<usize>,
    pub q_braiding_diagonal: bool,
    pub q_braiding_symmetric: bool,
    pub well_defined: bool,
    pub intertwines_braiding: bool,
    /// Per-degree matrices of the canonical map, kept when the verdict is true.
    pub witness: Option<Vec<DegreeMap>>,
    pub scheunert_basis: Option<Vec<Vec<String>>>,
}

/// Compares `S(Q)` with `H` degree by degree through the canonical map.
pub fn pbw_verdict(h: &StructureBialgebra, n_max: usize) -> Result<PbwReport> {
    pbw_verdict_with_cap(h, n_max, DEFAULT_DEGREE_CAP)
}

pub fn pbw_verdict_with_cap(h: &StructureBialgebra, n_max: usize, cap: usize) -> Result<PbwReport> {
    let q = compute_q(h)?;
    if !braid_check(&q.braiding) {
        return Err(Error::BraidEquation("induced braiding on Q".into()));
    }
    let mut reach = n_max;
    if let Some(t) = h.truncation {
        reach = reach.min(t);
    }
    if q.symmetric_algebra().is_none() {
        reach = reach.min(cap);
    }
    let maps = canonical_map(h, &q, reach, cap)?;
    let ill = ill_defined_degree(h, &q);
    let mut first_failure = ill;
    for m in &maps {
        let ok = m.rank == m.matrix.len() && m.rank == m.target_basis.len();
        if !ok {
            first_failure = Some(first_failure.map_or(m.degree, |f| f.min(m.degree)));
            break;
        }
    }
    if let Some(n) = q.non_intertwining_degree {
        first_failure = Some(first_failure.map_or(n, |f| f.min(n)));
    }
    let verdict = match first_failure {
        Some(_) => Verdict::False,
        None if reach < n_max => Verdict::Inconclusive,
        None => Verdict::True,
    };
    let scheunert_basis = match (verdict, q.symmetric_algebra()) {
        (Verdict::True, Some(_)) => Some(maps.iter().flat_map(|m| m.monomials.clone()).collect()),
        _ => None,
    };
    Ok(PbwReport {
        verdict,
        degreewise_dims: maps.iter().map(|m| (m.target_basis.len(), m.matrix.len())).collect(),
        ranks: maps.iter().map(|m| m.rank).collect(),
        first_failure_degree: first_failure,
        verified_through: reach,
        requested_degree: n_max,
        q_names: q.names.clone(),
        q_degrees: q.degrees.clone(),
        q_braiding_diagonal: q.is_diagonal(),
        q_braiding_symmetric: q.is_symmetric(),
        well_defined: ill.is_none(),
        intertwines_braiding: q.intertwines_exactly,
        witness: (verdict == Verdict::True).then_some(maps),
        scheunert_basis,
    })
}

/// The lifted Scheunert monomial basis, or the reason it is not produced.
pub fn pbw_basis(q: &QSpace, report: &PbwReport) -> std::result::Result<Vec<Vec<String>>, String> {
    if report.verdict != Verdict::True {
        return Err(format!("verdict is {}, not PBW_TYPE_TRUE", report.verdict));
    }
    if !q.is_diagonal() {
        return Err("non-diagonal braiding: monomial basis not guaranteed".into());
    }
    if !q.is_symmetric() {
        return Err("braiding on Q is not symmetric".into());
    }
    report
        .scheunert_basis
        .clone()
        .ok_or_else(|| "report carries no monomial basis".into())
}

/// Products of the given elements span every degree of `h` up to the top
/// (or the truncation).
pub fn generates_degreewise(h: &StructureBialgebra, gens: &[usize]) -> bool {
    let d = h.dim();
    let mut span = Subspace::span(d, vec![vector_of(&h.unit, d)]);
    let mut frontier: Vec<Element> = vec![h.unit.clone()];
    loop {
        let mut grown = Vec::new();
        for f in &frontier {
            for &g in gens {
                let p = h.product(f, &h.basis(g));
                let v = vector_of(&p, d);
                if !span.contains(&v) {
                    span = span.sum(&Subspace::span(d, vec![v]));
                    grown.push(p);
                }
            }
        }
        if grown.is_empty() {
            break;
        }
        frontier = grown;
    }
    (0..d)
        .filter(|&i| h.truncation.is_none_or(|t| h.weight(i) <= t))
        .all(|i| span.contains(&crate::linalg::unit_vector(d, i)))
}
