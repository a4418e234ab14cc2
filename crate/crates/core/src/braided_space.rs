//! Finite abelian groups, bicharacters, graded bases and braidings given by
//! structure tensors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lincomb::{render_tensor, Braided, Tensor};
use crate::linalg::Subspace;
use crate::report::ValidationReport;
use crate::scalar::{gcd, Scalar};

/// `Z/n_1 × … × Z/n_r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    pub factors: Vec<u32>,
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if let Some(bad) = factors.iter().find(|&&n| n < 2) {
            return Err(Error::Invalid(format!("invariant factor {bad} < 2")));
        }
        Ok(FiniteAbelianGroup { factors })
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn contains(&self, g: &[u32]) -> bool {
        g.len() == self.rank() && g.iter().zip(&self.factors).all(|(x, n)| x < n)
    }

    pub fn add(&self, g: &[u32], h: &[u32]) -> Vec<u32> {
        g.iter()
            .zip(h)
            .zip(&self.factors)
            .map(|((a, b), n)| (a + b) % n)
            .collect()
    }
}

/// A bicharacter stored on generators: `table[i][j] = χ(a_i, a_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bicharacter {
    pub group: FiniteAbelianGroup,
    pub table: Vec<Vec<Scalar>>,
}

impl Bicharacter {
    pub fn new(group: FiniteAbelianGroup, table: Vec<Vec<Scalar>>) -> Self {
        Bicharacter { group, table }
    }

    /// `χ(g, h)`, extended bimultiplicatively from the generator table.
    pub fn eval(&self, g: &[u32], h: &[u32]) -> Scalar {
        let mut acc = Scalar::one();
        for (i, &gi) in g.iter().enumerate() {
            for (j, &hj) in h.iter().enumerate() {
                let e = gi as i64 * hj as i64;
                if e != 0 {
                    acc = &acc * &self.table[i][j].pow(e).expect("root of unity is invertible");
                }
            }
        }
        acc
    }

    pub fn is_skew_symmetric(&self) -> bool {
        let r = self.group.rank();
        (0..r).all(|i| (0..r).all(|j| (&self.table[i][j] * &self.table[j][i]).is_one()))
    }
}

/// Checks the order constraints and skew-symmetry of a generator table.
pub fn validate_bicharacter(chi: &Bicharacter) -> ValidationReport {
    let mut report = ValidationReport::new();
    let r = chi.group.rank();
    report.checking("shape");
    if chi.table.len() != r || chi.table.iter().any(|row| row.len() != r) {
        report.violation(
            "shape",
            vec![],
            format!("{} rows", chi.table.len()),
            format!("{r}x{r} table"),
        );
        return report;
    }
    report.checking("order");
    report.checking("skew-symmetry");
    for i in 0..r {
        for j in 0..r {
            let order = gcd(chi.group.factors[i], chi.group.factors[j]);
            let t = &chi.table[i][j];
            if !t.pow(order as i64).map(|p| p.is_one()).unwrap_or(false) {
                report.violation(
                    "order",
                    vec![format!("a{i}"), format!("a{j}")],
                    format!("χ^{order} = {}", t.pow(order as i64).unwrap_or_default()),
                    "1".into(),
                );
            }
            let prod = t * &chi.table[j][i];
            if i <= j && !prod.is_one() {
                report.violation(
                    "skew-symmetry",
                    vec![format!("a{i}"), format!("a{j}")],
                    prod.to_string(),
                    "1".into(),
                );
            }
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub deg: Vec<u32>,
}

/// Homogeneous generators in their well-order (declaration order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    pub generators: Vec<Generator>,
}

impl GradedBasis {
    pub fn new(generators: Vec<Generator>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::Invalid(format!("duplicate generator name {:?}", g.name)));
            }
        }
        Ok(GradedBasis { generators })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }
}

/// A braiding on a `dim`-dimensional space:
/// `c(e_i ⊗ e_j) = Σ entries[i][j] (k, l, coefficient)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericBraiding {
    dim: usize,
    entries: Vec<Vec<Vec<((usize, usize), Scalar)>>>,
}

pub type DenseTensor4 = Vec<Vec<Vec<Vec<Scalar>>>>;

impl GenericBraiding {
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Vec<((usize, usize), Scalar)>) -> Self {
        let entries = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        let mut t = Tensor::zero();
                        for ((k, l), c) in f(i, j) {
                            t.add_term(vec![k, l], c);
                        }
                        t.into_iter().map(|(kl, c)| ((kl[0], kl[1]), c)).collect()
                    })
                    .collect()
            })
            .collect();
        GenericBraiding { dim, entries }
    }

    /// The trivial braiding `v ⊗ w ↦ w ⊗ v`.
    pub fn flip(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| vec![((j, i), Scalar::one())])
    }

    /// `q[i][j]` gives `c(e_i ⊗ e_j) = q_ij e_j ⊗ e_i`.
    pub fn diagonal(q: &[Vec<Scalar>]) -> Self {
        Self::from_fn(q.len(), |i, j| vec![((j, i), q[i][j].clone())])
    }

    pub fn from_dense(tensor: &DenseTensor4) -> Result<Self> {
        let d = tensor.len();
        let shape_ok = tensor.iter().all(|a| {
            a.len() == d && a.iter().all(|b| b.len() == d && b.iter().all(|c| c.len() == d))
        });
        if !shape_ok {
            return Err(Error::Dimension(format!("braiding tensor is not {d}^4")));
        }
        Ok(Self::from_fn(d, |i, j| {
            let mut out = Vec::new();
            for (k, row) in tensor[i][j].iter().enumerate() {
                for (l, c) in row.iter().enumerate() {
                    out.push(((k, l), c.clone()));
                }
            }
            out
        }))
    }

    pub fn to_dense(&self) -> DenseTensor4 {
        let d = self.dim;
        let mut t = vec![vec![vec![vec![Scalar::zero(); d]; d]; d]; d];
        for i in 0..d {
            for j in 0..d {
                for ((k, l), c) in &self.entries[i][j] {
                    t[i][j][*k][*l] = c.clone();
                }
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn image(&self, i: usize, j: usize) -> &[((usize, usize), Scalar)] {
        &self.entries[i][j]
    }

    /// `Some(q)` when every `c(e_i⊗e_j)` is a multiple of `e_j⊗e_i`.
    pub fn diagonal_coefficients(&self) -> Option<Vec<Vec<Scalar>>> {
        let d = self.dim;
        let mut q = vec![vec![Scalar::zero(); d]; d];
        for i in 0..d {
            for j in 0..d {
                match self.entries[i][j].as_slice() {
                    [((k, l), c)] if *k == j && *l == i => q[i][j] = c.clone(),
                    _ => return None,
                }
            }
        }
        Some(q)
    }
}

impl Braided for GenericBraiding {
    type Basis = usize;

    fn braid(&self, a: &usize, b: &usize) -> Vec<((usize, usize), Scalar)> {
        self.entries[*a][*b].clone()
    }
}

/// `c(x_i ⊗ x_j) = χ(g_i, g_j) x_j ⊗ x_i`.
pub fn diagonal_braiding(chi: &Bicharacter, basis: &GradedBasis) -> Result<GenericBraiding> {
    let report = validate_bicharacter(chi);
    if !report.pass() {
        return Err(Error::InvalidBicharacter(
            report.violated_axioms().join(", "),
        ));
    }
    for g in &basis.generators {
        if !chi.group.contains(&g.deg) {
            return Err(Error::Invalid(format!(
                "degree {:?} of {:?} is not a group element",
                g.deg, g.name
            )));
        }
    }
    let q: Vec<Vec<Scalar>> = basis
        .generators
        .iter()
        .map(|a| {
            basis
                .generators
                .iter()
                .map(|b| chi.eval(&a.deg, &b.deg))
                .collect()
        })
        .collect();
    Ok(GenericBraiding::diagonal(&q))
}

/// First basis triple where `c_1 c_2 c_1` and `c_2 c_1 c_2` differ.
pub fn braid_equation_witness(c: &GenericBraiding) -> Option<(usize, usize, usize, String, String)> {
    let d = c.dim();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let t = Tensor::from_slots(vec![i, j, k]);
                let lhs = t.braid_at(c, 1).braid_at(c, 2).braid_at(c, 1);
                let rhs = t.braid_at(c, 2).braid_at(c, 1).braid_at(c, 2);
                if lhs != rhs {
                    let name = |b: &usize| format!("e{b}");
                    return Some((i, j, k, render_tensor(&lhs, name), render_tensor(&rhs, name)));
                }
            }
        }
    }
    None
}

/// Braid equation on all `d³` basis vectors.
pub fn braid_check(c: &GenericBraiding) -> bool {
    braid_equation_witness(c).is_none()
}

/// `c ∘ c = id` on all basis pairs.
pub fn is_symmetric(c: &GenericBraiding) -> bool {
    let d = c.dim();
    (0..d).all(|i| {
        (0..d).all(|j| {
            let t = Tensor::from_slots(vec![i, j]);
            t.braid_at(c, 1).braid_at(c, 1) == t
        })
    })
}

/// `c(X⊗V) ⊆ V⊗X` and `c(V⊗X) ⊆ X⊗V`.
pub fn is_categorical(c: &GenericBraiding, x: &Subspace) -> bool {
    let d = c.dim();
    assert_eq!(x.ambient_dim(), d, "subspace lives in a different space");
    let quotient: Vec<Vec<Scalar>> = (0..d)
        .map(|a| x.quotient_coords(&crate::linalg::unit_vector(d, a)))
        .collect();
    let q_dim = d - x.dim();
    if q_dim == 0 {
        return true;
    }
    // (id ⊗ q)(c(x ⊗ e_j)) and (q ⊗ id)(c(e_i ⊗ x)) must vanish
    for row in x.rows() {
        for j in 0..d {
            let mut right = vec![Scalar::zero(); d * q_dim];
            let mut left = vec![Scalar::zero(); d * q_dim];
            for (a, coef) in row.iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                for ((k, l), v) in c.image(a, j) {
                    let s = coef * v;
                    for (m, qv) in quotient[*l].iter().enumerate() {
                        if !qv.is_zero() {
                            right[k * q_dim + m] += &(&s * qv);
                        }
                    }
                }
                for ((k, l), v) in c.image(j, a) {
                    let s = coef * v;
                    for (m, qv) in quotient[*k].iter().enumerate() {
                        if !qv.is_zero() {
                            left[l * q_dim + m] += &(&s * qv);
                        }
                    }
                }
            }
            if right.iter().any(|v| !v.is_zero()) || left.iter().any(|v| !v.is_zero()) {
                return false;
            }
        }
    }
    true
}

/// The braided-space input file: group, generator table and graded basis.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BraidedSpaceSpec {
    pub group: FiniteAbelianGroup,
    pub bichar: Vec<Vec<Scalar>>,
    pub basis: Vec<Generator>,
}

impl BraidedSpaceSpec {
    pub fn bicharacter(&self) -> Result<Bicharacter> {
        let group = FiniteAbelianGroup::new(self.group.factors.clone())?;
        Ok(Bicharacter::new(group, self.bichar.clone()))
    }

    pub fn graded_basis(&self) -> Result<GradedBasis> {
        GradedBasis::new(self.basis.clone())
    }

    pub fn braiding(&self) -> Result<GenericBraiding> {
        diagonal_braiding(&self.bicharacter()?, &self.graded_basis()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(vec![2]).unwrap()
    }

    fn gen(name: &str, deg: &[u32]) -> Generator {
        Generator {
            name: name.into(),
            deg: deg.to_vec(),
        }
    }

    #[test]
    fn super_bicharacter_is_valid() {
        let chi = Bicharacter::new(z2(), vec![vec![Scalar::from_integer(-1)]]);
        assert!(validate_bicharacter(&chi).pass());
    }

    #[test]
    fn order_three_value_on_z2_is_rejected() {
        let chi = Bicharacter::new(z2(), vec![vec![Scalar::root_of_unity(3, 1)]]);
        let r = validate_bicharacter(&chi);
        assert!(r.violated_axioms().contains(&"order"));
    }

    #[test]
    fn non_skew_table_is_rejected() {
        let g = FiniteAbelianGroup::new(vec![4, 4]).unwrap();
        let i = Scalar::root_of_unity(4, 1);
        let chi = Bicharacter::new(
            g,
            vec![vec![Scalar::one(), i.clone()], vec![i, Scalar::one()]],
        );
        let r = validate_bicharacter(&chi);
        assert_eq!(r.violated_axioms(), vec!["skew-symmetry"]);
    }

    #[test]
    fn odd_line_braids_with_sign() {
        let chi = Bicharacter::new(z2(), vec![vec![Scalar::from_integer(-1)]]);
        let basis = GradedBasis::new(vec![gen("θ", &[1])]).unwrap();
        let c = diagonal_braiding(&chi, &basis).unwrap();
        assert_eq!(c.image(0, 0), &[((0, 0), Scalar::from_integer(-1))]);
        assert!(braid_check(&c));
        assert!(is_symmetric(&c));
    }

    #[test]
    fn trivial_character_gives_flip() {
        let chi = Bicharacter::new(z2(), vec![vec![Scalar::one()]]);
        let basis = GradedBasis::new(vec![gen("x", &[0]), gen("y", &[1])]).unwrap();
        assert_eq!(diagonal_braiding(&chi, &basis).unwrap(), GenericBraiding::flip(2));
    }

    #[test]
    fn cube_root_pairing() {
        let g = FiniteAbelianGroup::new(vec![3, 3]).unwrap();
        let w = Scalar::root_of_unity(3, 1);
        let w2 = Scalar::root_of_unity(3, 2);
        let chi = Bicharacter::new(
            g,
            vec![vec![Scalar::one(), w.clone()], vec![w2.clone(), Scalar::one()]],
        );
        let basis = GradedBasis::new(vec![gen("x", &[1, 0]), gen("y", &[0, 1])]).unwrap();
        let c = diagonal_braiding(&chi, &basis).unwrap();
        assert_eq!(c.image(0, 1), &[((1, 0), w)]);
        assert_eq!(c.image(1, 0), &[((0, 1), w2)]);
        assert!(is_symmetric(&c));
    }

    fn perturbed_flip(extra: (usize, usize)) -> GenericBraiding {
        GenericBraiding::from_fn(2, |i, j| {
            let mut out = vec![((j, i), Scalar::one())];
            if (i, j) == (0, 0) {
                out.push((extra, Scalar::one()));
            }
            out
        })
    }

    #[test]
    fn braid_equation_failure_is_found() {
        assert!(braid_check(&GenericBraiding::flip(2)));
        // c(e1⊗e1) = e1⊗e1 + e1⊗e2
        let c = perturbed_flip((0, 1));
        assert!(!braid_check(&c));
        let w = braid_equation_witness(&c).unwrap();
        assert_eq!((w.0, w.1, w.2), (0, 0, 0));
    }

    #[test]
    fn square_zero_perturbation_still_braids() {
        // c(e1⊗e1) = e1⊗e1 + e2⊗e2 is a solution; checked against a dense 8x8 evaluation
        let c = perturbed_flip((1, 1));
        assert!(braid_check(&c));
        assert!(!is_symmetric(&c));
    }

    #[test]
    fn non_skew_diagonal_is_not_symmetric() {
        let w = Scalar::root_of_unity(3, 1);
        let c = GenericBraiding::diagonal(&[
            vec![Scalar::one(), w.clone()],
            vec![w, Scalar::one()],
        ]);
        assert!(braid_check(&c));
        assert!(!is_symmetric(&c));
    }

    #[test]
    fn categorical_subspaces() {
        let g = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let one = Scalar::one();
        let chi = Bicharacter::new(
            g,
            vec![vec![one.clone(), one.clone()], vec![one.clone(), Scalar::from_integer(-1)]],
        );
        let basis = GradedBasis::new(vec![gen("e1", &[1, 0]), gen("e2", &[0, 1])]).unwrap();
        let c = diagonal_braiding(&chi, &basis).unwrap();
        assert!(is_categorical(&c, &Subspace::full(2)));
        assert!(is_categorical(&c, &Subspace::coordinate(2, [0])));
        assert!(is_categorical(&c, &Subspace::coordinate(2, [1])));
        let diag = Subspace::span(2, vec![vec![one.clone(), one]]);
        assert!(!is_categorical(&c, &diag));
    }

    #[test]
    fn spec_file_round_trip() {
        let text = r#"{"group":{"factors":[2]},"bichar":[["-1"]],
            "basis":[{"name":"x","deg":[0]},{"name":"θ","deg":[1]}]}"#;
        let spec: BraidedSpaceSpec = serde_json::from_str(text).unwrap();
        let c = spec.braiding().unwrap();
        assert_eq!(c.image(1, 1), &[((1, 1), Scalar::from_integer(-1))]);
        assert_eq!(c.image(0, 1), &[((1, 0), Scalar::one())]);
    }
}
