//! The free braided algebra `T(V)` over a braided vector space.

use std::fmt;

use crate::braided_space::GenericBraiding;
use crate::error::{Error, Result};
use crate::lincomb::{render_lincomb, Braided, BraidedAlgebra, LinComb, Tensor};
use crate::scalar::Scalar;

pub const DEFAULT_DEGREE_CAP: usize = 8;

/// A word in the generators; the empty word is the unit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: usize) -> Self {
        Word(vec![i])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("e{i}")).collect();
        write!(f, "{}", parts.join("·"))
    }
}

pub type TensorElement = LinComb<Word>;

/// The degree of `e` if every term has the same length.
pub fn homogeneous_degree(e: &TensorElement) -> Option<usize> {
    let mut lens = e.keys().map(Word::len);
    let first = lens.next()?;
    lens.all(|l| l == first).then_some(first)
}

/// Splits `e` into its homogeneous components, lowest degree first.
pub fn homogeneous_components(e: &TensorElement) -> Vec<(usize, TensorElement)> {
    let mut out: Vec<(usize, TensorElement)> = Vec::new();
    for (w, c) in e.iter() {
        match out.iter_mut().find(|(d, _)| *d == w.len()) {
            Some((_, part)) => part.add_term(w.clone(), c.clone()),
            None => out.push((w.len(), LinComb::term(w.clone(), c.clone()))),
        }
    }
    out.sort_by_key(|(d, _)| *d);
    out
}

/// `T(V)` with the lifted braiding `⊕ c_{n,m}`.
#[derive(Clone, Debug)]
pub struct TensorAlgebra {
    braiding: GenericBraiding,
    names: Vec<String>,
    cap: usize,
}

impl TensorAlgebra {
    pub fn new(braiding: GenericBraiding, names: Vec<String>) -> Result<Self> {
        if names.len() != braiding.dim() {
            return Err(Error::Dimension(format!(
                "{} generator names for a {}-dimensional braiding",
                names.len(),
                braiding.dim()
            )));
        }
        Ok(TensorAlgebra {
            braiding,
            names,
            cap: DEFAULT_DEGREE_CAP,
        })
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn dim(&self) -> usize {
        self.braiding.dim()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn braiding(&self) -> &GenericBraiding {
        &self.braiding
    }

    pub fn generator(&self, i: usize) -> TensorElement {
        LinComb::basis(Word::letter(i))
    }

    /// Parses whitespace-separated generator names; `1` or empty input is the unit.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            match self.names.iter().position(|n| n == tok) {
                Some(i) => letters.push(i),
                None => return Err(Error::Invalid(format!("unknown generator {tok:?}"))),
            }
        }
        Ok(Word(letters))
    }

    pub fn word_name(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let parts: Vec<&str> = w.0.iter().map(|&i| self.names[i].as_str()).collect();
        parts.join(" ")
    }

    pub fn render(&self, e: &TensorElement) -> String {
        render_lincomb(e, |w| self.word_name(w))
    }

    pub fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.cap {
            return Err(Error::DegreeCap {
                degree: n,
                cap: self.cap,
            });
        }
        Ok(())
    }

    fn check_letters(&self, e: &TensorElement) -> Result<()> {
        for w in e.keys() {
            if let Some(&bad) = w.0.iter().find(|&&i| i >= self.dim()) {
                return Err(Error::Invalid(format!("letter index {bad} out of range")));
            }
        }
        Ok(())
    }

    fn require_degree(&self, e: &TensorElement, n: usize) -> Result<()> {
        if e.keys().any(|w| w.len() != n) {
            return Err(Error::DegreeMismatch { expected: n });
        }
        self.check_letters(e)
    }

    /// `c_i` on `V^{⊗n}`.
    pub fn apply_ci(&self, n: usize, i: usize, e: &TensorElement) -> Result<TensorElement> {
        if i == 0 || i >= n {
            return Err(Error::PositionOutOfRange {
                position: i,
                degree: n,
            });
        }
        self.require_degree(e, n)?;
        Ok(e.map_basis(|w| letters_ci(&self.braiding, &w.0, i)))
    }

    /// The block exchange `c_{n,m}: V^{⊗n} ⊗ V^{⊗m} → V^{⊗m} ⊗ V^{⊗n}`.
    pub fn c_nm(&self, n: usize, m: usize, e: &TensorElement) -> Result<TensorElement> {
        self.require_degree(e, n + m)?;
        self.check_degree(n + m)?;
        Ok(e.map_basis(|w| block_exchange(&self.braiding, &w.0, n)))
    }

    pub fn multiply(&self, a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
        self.check_letters(a)?;
        self.check_letters(b)?;
        let top = a.keys().map(Word::len).max().unwrap_or(0) + b.keys().map(Word::len).max().unwrap_or(0);
        self.check_degree(top)?;
        Ok(braided_product(self, a, b))
    }

    /// `∇(id − c)` on bihomogeneous components.
    pub fn commutator(&self, a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
        self.check_letters(a)?;
        self.check_letters(b)?;
        let top = a.keys().map(Word::len).max().unwrap_or(0) + b.keys().map(Word::len).max().unwrap_or(0);
        self.check_degree(top)?;
        Ok(braided_commutator(self, a, b))
    }
}

/// `c_i` on a single word of letters.
fn letters_ci(c: &GenericBraiding, letters: &[usize], i: usize) -> TensorElement {
    let t: Tensor<usize> = Tensor::from_slots(letters.to_vec());
    t.braid_at(c, i).into_iter().map(|(w, s)| (Word(w), s)).collect()
}

/// `c_{n,m}` on one word of length `n+m`: for `k = 1..m` apply
/// `c_{n+k-1}, c_{n+k-2}, …, c_k` in that order.
fn block_exchange(c: &GenericBraiding, letters: &[usize], n: usize) -> TensorElement {
    let m = letters.len() - n;
    let mut t: Tensor<usize> = Tensor::from_slots(letters.to_vec());
    if n > 0 {
        for k in 1..=m {
            for i in (k..=n + k - 1).rev() {
                t = t.braid_at(c, i);
            }
        }
    }
    t.into_iter().map(|(w, s)| (Word(w), s)).collect()
}

impl Braided for TensorAlgebra {
    type Basis = Word;

    fn braid(&self, a: &Word, b: &Word) -> Vec<((Word, Word), Scalar)> {
        let m = b.len();
        block_exchange(&self.braiding, &a.concat(b).0, a.len())
            .into_iter()
            .map(|(w, s)| {
                let (left, right) = w.0.split_at(m);
                ((Word(left.to_vec()), Word(right.to_vec())), s)
            })
            .collect()
    }
}

impl BraidedAlgebra for TensorAlgebra {
    fn multiply(&self, a: &Word, b: &Word) -> Vec<(Word, Scalar)> {
        vec![(a.concat(b), Scalar::one())]
    }
}

pub fn braided_product<A: BraidedAlgebra>(
    alg: &A,
    a: &LinComb<A::Basis>,
    b: &LinComb<A::Basis>,
) -> LinComb<A::Basis> {
    Tensor::product_of(&[a, b]).mul_at(alg, 1).single()
}

/// `[a, b] = ∇(id − c)(a ⊗ b)`.
pub fn braided_commutator<A: BraidedAlgebra>(
    alg: &A,
    a: &LinComb<A::Basis>,
    b: &LinComb<A::Basis>,
) -> LinComb<A::Basis> {
    let t = Tensor::product_of(&[a, b]);
    (&t - &t.braid_at(alg, 1)).mul_at(alg, 1).single()
}

/// Which right-hand side of the tensor-square commutator identity to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lemma2Rhs {
    Exact,
    /// Mutation used to show the check has teeth: the `∇^op ⊗ [·,·]` term is dropped.
    DropOpTerm,
}

/// `[X, Y]` in the braided tensor square, for `X = a⊗b`, `Y = c⊗d`, as a
/// two-slot tensor. The square has product `(∇⊗∇)c₂` and braiding `c₂c₁c₃c₂`.
pub fn tensor_square_commutator<A: BraidedAlgebra>(alg: &A, t: &Tensor<A::Basis>) -> Tensor<A::Basis> {
    let braided = t
        .braid_at(alg, 2)
        .braid_at(alg, 3)
        .braid_at(alg, 1)
        .braid_at(alg, 2);
    let diff = t - &braided;
    diff.braid_at(alg, 2).mul_at(alg, 1).mul_at(alg, 2)
}

/// The right-hand side `([,]⊗∇ + ∇^op⊗[,])c₂ + (∇⊗∇)(id − c₂²)c₁c₃c₂` on a four-slot tensor.
pub fn lemma2_rhs<A: BraidedAlgebra>(alg: &A, t: &Tensor<A::Basis>, variant: Lemma2Rhs) -> Tensor<A::Basis> {
    let u = t.braid_at(alg, 2);
    // [,] ⊗ ∇
    let first = (&u - &u.braid_at(alg, 1)).mul_at(alg, 1).mul_at(alg, 2);
    // ∇^op ⊗ [,]
    let second = {
        let v = u.braid_at(alg, 1).mul_at(alg, 1);
        (&v - &v.braid_at(alg, 2)).mul_at(alg, 2)
    };
    let w = t.braid_at(alg, 2).braid_at(alg, 3).braid_at(alg, 1);
    let third = (&w - &w.braid_at(alg, 2).braid_at(alg, 2)).mul_at(alg, 1).mul_at(alg, 2);
    let mut rhs = &first + &third;
    if variant == Lemma2Rhs::Exact {
        rhs = &rhs + &second;
    }
    rhs
}

/// Both sides of the tensor-square commutator identity on `a⊗b` and `c⊗d`.
pub fn lemma2_sides<A: BraidedAlgebra>(
    alg: &A,
    quad: [&LinComb<A::Basis>; 4],
    variant: Lemma2Rhs,
) -> (Tensor<A::Basis>, Tensor<A::Basis>) {
    let t = Tensor::product_of(&quad);
    (tensor_square_commutator(alg, &t), lemma2_rhs(alg, &t, variant))
}

pub fn check_lemma2<A: BraidedAlgebra>(alg: &A, quad: [&LinComb<A::Basis>; 4]) -> bool {
    let (lhs, rhs) = lemma2_sides(alg, quad, Lemma2Rhs::Exact);
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn super_line() -> TensorAlgebra {
        // x even, θ odd
        let q = vec![
            vec![Scalar::one(), Scalar::one()],
            vec![Scalar::one(), Scalar::from_integer(-1)],
        ];
        TensorAlgebra::new(GenericBraiding::diagonal(&q), vec!["x".into(), "θ".into()]).unwrap()
    }

    fn word(letters: &[usize]) -> TensorElement {
        LinComb::basis(Word(letters.to_vec()))
    }

    #[test]
    fn ci_on_words() {
        let flip = TensorAlgebra::new(GenericBraiding::flip(2), vec!["x".into(), "y".into()]).unwrap();
        assert_eq!(flip.apply_ci(2, 1, &word(&[0, 1])).unwrap(), word(&[1, 0]));
        let s = super_line();
        let t = word(&[1, 1]);
        assert_eq!(s.apply_ci(2, 1, &t).unwrap(), t.scale(&Scalar::from_integer(-1)));
        assert!(matches!(
            s.apply_ci(2, 2, &t),
            Err(Error::PositionOutOfRange { .. })
        ));
        assert!(matches!(
            s.apply_ci(3, 1, &t),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn block_exchange_super_sign() {
        let s = super_line();
        // θ ⊗ (θ x) ↦ −(θ x) ⊗ θ
        let out = s.c_nm(1, 2, &word(&[1, 1, 0])).unwrap();
        assert_eq!(out, word(&[1, 0, 1]).scale(&Scalar::from_integer(-1)));
        assert_eq!(s.c_nm(0, 3, &word(&[1, 0, 1])).unwrap(), word(&[1, 0, 1]));
        assert_eq!(s.c_nm(3, 0, &word(&[1, 0, 1])).unwrap(), word(&[1, 0, 1]));
    }

    #[test]
    fn block_exchange_flip_moves_blocks() {
        let t = TensorAlgebra::new(GenericBraiding::flip(3), vec!["a".into(), "b".into(), "c".into()]).unwrap();
        assert_eq!(t.c_nm(2, 1, &word(&[0, 1, 2])).unwrap(), word(&[2, 0, 1]));
        assert_eq!(t.c_nm(1, 2, &word(&[0, 1, 2])).unwrap(), word(&[1, 2, 0]));
    }

    #[test]
    fn commutators() {
        let flip = TensorAlgebra::new(GenericBraiding::flip(2), vec!["x".into(), "y".into()]).unwrap();
        let c = flip.commutator(&word(&[0]), &word(&[1])).unwrap();
        assert_eq!(c, &word(&[0, 1]) - &word(&[1, 0]));
        let s = super_line();
        let c = s.commutator(&word(&[1]), &word(&[1])).unwrap();
        assert_eq!(c, word(&[1, 1]).scale(&Scalar::from_integer(2)));
    }

    #[test]
    fn multiply_is_concatenation() {
        let s = super_line();
        let xy = &word(&[0]) + &word(&[1]);
        assert_eq!(
            s.multiply(&xy, &word(&[0])).unwrap(),
            &word(&[0, 0]) + &word(&[1, 0])
        );
        assert_eq!(s.multiply(&word(&[]), &xy).unwrap(), xy);
    }

    #[test]
    fn degree_cap_is_an_error() {
        let s = super_line().with_cap(3);
        assert!(matches!(
            s.multiply(&word(&[0, 0]), &word(&[1, 1])),
            Err(Error::DegreeCap { degree: 4, cap: 3 })
        ));
    }

    #[test]
    fn parse_and_render() {
        let s = super_line();
        let w = s.parse_word("x θ θ").unwrap();
        assert_eq!(w, Word(vec![0, 1, 1]));
        assert_eq!(s.word_name(&w), "x θ θ");
        assert!(s.parse_word("y").is_err());
    }

    #[test]
    fn lemma2_on_odd_letters_and_mutation() {
        let s = super_line();
        let th = word(&[1]);
        let x = word(&[0]);
        assert!(check_lemma2(&s, [&th, &x, &th, &th]));
        let found = [[&th, &th, &th, &th], [&x, &th, &th, &x], [&th, &x, &x, &th]]
            .iter()
            .any(|q| {
                let (l, r) = lemma2_sides(&s, *q, Lemma2Rhs::DropOpTerm);
                l != r
            });
        assert!(found);
    }
}
