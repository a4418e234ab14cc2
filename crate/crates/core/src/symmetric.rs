//! The braided symmetric algebra `S(V) = T(V)/((id − c)(V⊗V))`: normal forms
//! and monomial bases for diagonal symmetric braidings, and a linear-algebra
//! dimension oracle that works for any braiding.

use std::collections::HashMap;
use std::fmt;

use crate::braided_space::{Bicharacter, GenericBraiding, GradedBasis};
use crate::error::{Error, Result};
use crate::linalg::{EchelonBuilder, SparseVector};
use crate::lincomb::{render_lincomb, Braided, BraidedAlgebra, LinComb};
use crate::scalar::Scalar;
use crate::tensor_algebra::Word;

/// Non-decreasing indices, strictly increasing where `χ(g_i, g_i) ≠ 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ScheunertMonomial(pub Vec<usize>);

impl ScheunertMonomial {
    pub fn degree(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for ScheunertMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("e{i}")).collect();
        write!(f, "{}", parts.join("·"))
    }
}

pub type SymElement = LinComb<ScheunertMonomial>;

/// Order in which straightening picks the next offending adjacent pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteStrategy {
    Leftmost,
    Rightmost,
}

/// `S(V)` for `c(x_i ⊗ x_j) = q_ij x_j ⊗ x_i` with `q_ij q_ji = 1`.
#[derive(Clone, Debug)]
pub struct SymmetricAlgebra {
    q: Vec<Vec<Scalar>>,
    names: Vec<String>,
}

impl SymmetricAlgebra {
    pub fn new(q: Vec<Vec<Scalar>>, names: Vec<String>) -> Result<Self> {
        let d = q.len();
        if names.len() != d || q.iter().any(|r| r.len() != d) {
            return Err(Error::Dimension(format!("{d} generators, {} names", names.len())));
        }
        for i in 0..d {
            for j in 0..d {
                if !(&q[i][j] * &q[j][i]).is_one() {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(SymmetricAlgebra { q, names })
    }

    pub fn from_bicharacter(chi: &Bicharacter, basis: &GradedBasis) -> Result<Self> {
        let c = crate::braided_space::diagonal_braiding(chi, basis)?;
        Self::from_braiding(&c, basis.names())
    }

    /// Fails with `NotSymmetric` for non-symmetric diagonal braidings and with
    /// `Invalid` for non-diagonal ones; use the oracle functions for those.
    pub fn from_braiding(c: &GenericBraiding, names: Vec<String>) -> Result<Self> {
        let q = c.diagonal_coefficients().ok_or_else(|| {
            Error::Invalid("braiding is not diagonal in the given basis; use the dimension oracle".into())
        })?;
        Self::new(q, names)
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn q(&self, i: usize, j: usize) -> &Scalar {
        &self.q[i][j]
    }

    fn is_admissible(&self, a: usize, b: usize) -> bool {
        a < b || (a == b && self.q[a][a].is_one())
    }

    pub fn is_scheunert(&self, letters: &[usize]) -> bool {
        letters.windows(2).all(|p| self.is_admissible(p[0], p[1]))
    }

    pub fn normal_form(&self, w: &Word) -> SymElement {
        self.normal_form_with(w, RewriteStrategy::Leftmost)
    }

    /// Rewrites `x_j x_i → q_ji x_i x_j` for `j > i` and `x_i x_i → 0` when `q_ii ≠ 1`.
    pub fn normal_form_with(&self, w: &Word, strategy: RewriteStrategy) -> SymElement {
        let mut out = SymElement::zero();
        let mut work = vec![(w.0.clone(), Scalar::one())];
        while let Some((letters, coef)) = work.pop() {
            let mut offending = (0..letters.len().saturating_sub(1))
                .filter(|&p| !self.is_admissible(letters[p], letters[p + 1]));
            let pos = match strategy {
                RewriteStrategy::Leftmost => offending.next(),
                RewriteStrategy::Rightmost => offending.last(),
            };
            match pos {
                None => out.add_term(ScheunertMonomial(letters), coef),
                Some(p) => {
                    let (j, i) = (letters[p], letters[p + 1]);
                    if i != j {
                        let mut next = letters;
                        next.swap(p, p + 1);
                        work.push((next, &coef * &self.q[j][i]));
                    }
                }
            }
        }
        out
    }

    pub fn normal_form_element(&self, e: &LinComb<Word>) -> SymElement {
        e.map_basis(|w| self.normal_form(w))
    }

    pub fn sym_product(&self, a: &SymElement, b: &SymElement) -> SymElement {
        let mut out = SymElement::zero();
        for (ma, ca) in a.iter() {
            for (mb, cb) in b.iter() {
                let w = Word(ma.0.iter().chain(&mb.0).copied().collect());
                out.add_scaled(&self.normal_form(&w), &(ca * cb));
            }
        }
        out
    }

    /// Scheunert monomials of length `n` in lexicographic order.
    pub fn basis_in_degree(&self, n: usize) -> Vec<ScheunertMonomial> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        self.extend_monomials(n, &mut cur, &mut out);
        out
    }

    /// Scheunert monomials whose letters' weights sum to `n`.
    pub fn basis_in_weight(&self, weights: &[usize], n: usize) -> Vec<ScheunertMonomial> {
        fn go(
            alg: &SymmetricAlgebra,
            weights: &[usize],
            left: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<ScheunertMonomial>,
        ) {
            if left == 0 {
                out.push(ScheunertMonomial(cur.clone()));
                return;
            }
            for i in 0..alg.dim() {
                if weights[i] <= left && cur.last().is_none_or(|&last| alg.is_admissible(last, i)) {
                    cur.push(i);
                    go(alg, weights, left - weights[i], cur, out);
                    cur.pop();
                }
            }
        }
        assert!(weights.iter().all(|&w| w > 0), "generator weights must be positive");
        let mut out = Vec::new();
        go(self, weights, n, &mut Vec::new(), &mut out);
        out
    }

    fn extend_monomials(&self, n: usize, cur: &mut Vec<usize>, out: &mut Vec<ScheunertMonomial>) {
        if cur.len() == n {
            out.push(ScheunertMonomial(cur.clone()));
            return;
        }
        for i in 0..self.dim() {
            if cur.last().is_none_or(|&last| self.is_admissible(last, i)) {
                cur.push(i);
                self.extend_monomials(n, cur, out);
                cur.pop();
            }
        }
    }

    pub fn hilbert_series(&self, n_max: usize) -> Vec<usize> {
        (0..=n_max).map(|n| self.basis_in_degree(n).len()).collect()
    }

    /// `χ(deg a, deg b)` for monomials.
    pub fn pairing(&self, a: &[usize], b: &[usize]) -> Scalar {
        let mut acc = Scalar::one();
        for &i in a {
            for &j in b {
                acc = &acc * &self.q[i][j];
            }
        }
        acc
    }

    pub fn monomial_name(&self, m: &ScheunertMonomial) -> String {
        if m.0.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut k = 0;
        while k < m.0.len() {
            let mut run = 1;
            while k + run < m.0.len() && m.0[k + run] == m.0[k] {
                run += 1;
            }
            let name = &self.names[m.0[k]];
            parts.push(if run == 1 { name.clone() } else { format!("{name}^{run}") });
            k += run;
        }
        parts.join(" ")
    }

    pub fn render(&self, e: &SymElement) -> String {
        render_lincomb(e, |m| self.monomial_name(m))
    }
}

impl Braided for SymmetricAlgebra {
    type Basis = ScheunertMonomial;

    fn braid(&self, a: &ScheunertMonomial, b: &ScheunertMonomial) -> Vec<((ScheunertMonomial, ScheunertMonomial), Scalar)> {
        vec![((b.clone(), a.clone()), self.pairing(&a.0, &b.0))]
    }
}

impl BraidedAlgebra for SymmetricAlgebra {
    fn multiply(&self, a: &ScheunertMonomial, b: &ScheunertMonomial) -> Vec<(ScheunertMonomial, Scalar)> {
        let w = Word(a.0.iter().chain(&b.0).copied().collect());
        self.normal_form(&w).into_iter().collect()
    }
}

/// All words whose letters' weights sum to `n`, in lexicographic order.
pub fn words_of_weight(weights: &[usize], n: usize) -> Vec<Word> {
    fn go(weights: &[usize], left: usize, cur: &mut Vec<usize>, out: &mut Vec<Word>) {
        if left == 0 {
            out.push(Word(cur.clone()));
            return;
        }
        for (i, &w) in weights.iter().enumerate() {
            if w <= left {
                cur.push(i);
                go(weights, left - w, cur, out);
                cur.pop();
            }
        }
    }
    assert!(weights.iter().all(|&w| w > 0), "generator weights must be positive");
    let mut out = Vec::new();
    go(weights, n, &mut Vec::new(), &mut out);
    out
}

/// The weight-`n` part of `T(V)/((id − c)(V⊗V))` for generators of the given
/// positive weights. Returns the words of weight `n` and the echelon form of
/// the relation span inside their span.
pub fn relation_span(c: &GenericBraiding, weights: &[usize], n: usize) -> (Vec<Word>, EchelonBuilder) {
    assert_eq!(weights.len(), c.dim(), "one weight per generator");
    let words = words_of_weight(weights, n);
    let index: HashMap<&[usize], usize> = words.iter().enumerate().map(|(k, w)| (w.0.as_slice(), k)).collect();
    let mut ech = EchelonBuilder::new(words.len());
    for w in &words {
        for p in 0..w.len().saturating_sub(1) {
            let (a, b) = (w.0[p], w.0[p + 1]);
            // u (x_a x_b − c(x_a ⊗ x_b)) v
            let mut v = SparseVector::new();
            v.insert(index[w.0.as_slice()], Scalar::one());
            for ((k, l), s) in c.image(a, b) {
                let mut image = w.0.clone();
                image[p] = *k;
                image[p + 1] = *l;
                // a braiding that does not respect weights leaves the graded piece
                let Some(&idx) = index.get(image.as_slice()) else {
                    panic!("braiding does not preserve generator weights");
                };
                let e = v.entry(idx).or_insert_with(Scalar::zero);
                *e -= s;
            }
            ech.insert(v);
        }
    }
    (words, ech)
}

/// `dim T(V)_n − rank` of the relation span, for any braiding (standard grading).
pub fn oracle_dimension(c: &GenericBraiding, n: usize, cap: usize) -> Result<usize> {
    weighted_oracle_dimension(c, &vec![1; c.dim()], n, cap)
}

pub fn weighted_oracle_dimension(c: &GenericBraiding, weights: &[usize], n: usize, cap: usize) -> Result<usize> {
    if n > cap {
        return Err(Error::DegreeCap { degree: n, cap });
    }
    let (words, ech) = relation_span(c, weights, n);
    Ok(words.len() - ech.rank())
}

/// Words at the non-pivot positions of the relation span: a basis of the
/// weight-`n` part of the quotient.
pub fn oracle_standard_words(c: &GenericBraiding, weights: &[usize], n: usize, cap: usize) -> Result<Vec<Word>> {
    if n > cap {
        return Err(Error::DegreeCap { degree: n, cap });
    }
    let (words, ech) = relation_span(c, weights, n);
    let pivots: std::collections::BTreeSet<usize> = ech.pivots().collect();
    Ok(words
        .into_iter()
        .enumerate()
        .filter(|(k, _)| !pivots.contains(k))
        .map(|(_, w)| w)
        .collect())
}
