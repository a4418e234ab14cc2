//! Sparse linear combinations and multi-slot tensors over an arbitrary basis.
//!
//! Every identity in this crate is evaluated by pushing a [`Tensor`] through a
//! composite of slot-local maps: a braiding on two adjacent slots, a product
//! collapsing two slots, a coproduct splitting one, and so on. Positions in
//! the helper methods are 1-based so that `c_i` in a formula reads as
//! `braid_at(alg, i)`.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Neg, Sub};

use crate::linalg::Vector;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinComb<B: Ord>(BTreeMap<B, Scalar>);

pub type Tensor<B> = LinComb<Vec<B>>;

impl<B: Ord + Clone> Default for LinComb<B> {
    fn default() -> Self {
        LinComb(BTreeMap::new())
    }
}

impl<B: Ord + Clone> LinComb<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        Self::term(b, Scalar::one())
    }

    pub fn term(b: B, c: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(b, c);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (B, Scalar)>) -> Self {
        let mut out = Self::zero();
        for (b, c) in terms {
            out.add_term(b, c);
        }
        out
    }

    pub fn add_term(&mut self, b: B, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(b) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, factor: &Scalar) {
        for (b, c) in &other.0 {
            self.add_term(b.clone(), factor * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, b: &B) -> Scalar {
        self.0.get(b).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &Scalar)> {
        self.0.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &B> {
        self.0.keys()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb(self.0.iter().map(|(b, x)| (b.clone(), x * c)).collect())
    }

    pub fn map_basis<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> LinComb<C>) -> LinComb<C> {
        let mut out = LinComb::zero();
        for (b, c) in &self.0 {
            out.add_scaled(&f(b), c);
        }
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(&B) -> bool) -> Self {
        LinComb(
            self.0
                .iter()
                .filter(|(b, _)| keep(b))
                .map(|(b, c)| (b.clone(), c.clone()))
                .collect(),
        )
    }
}

impl<B: Ord + Clone> IntoIterator for LinComb<B> {
    type Item = (B, Scalar);
    type IntoIter = std::collections::btree_map::IntoIter<B, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<B: Ord + Clone> FromIterator<(B, Scalar)> for LinComb<B> {
    fn from_iter<T: IntoIterator<Item = (B, Scalar)>>(iter: T) -> Self {
        Self::from_terms(iter)
    }
}

impl<B: Ord + Clone> Add for &LinComb<B> {
    type Output = LinComb<B>;
    fn add(self, rhs: Self) -> LinComb<B> {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl<B: Ord + Clone> Sub for &LinComb<B> {
    type Output = LinComb<B>;
    fn sub(self, rhs: Self) -> LinComb<B> {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::from_integer(-1));
        out
    }
}

impl<B: Ord + Clone> Neg for &LinComb<B> {
    type Output = LinComb<B>;
    fn neg(self) -> LinComb<B> {
        self.scale(&Scalar::from_integer(-1))
    }
}

impl LinComb<usize> {
    pub fn from_dense(v: &[Scalar]) -> Self {
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect()
    }

    pub fn to_dense(&self, n: usize) -> Vector {
        let mut out = vec![Scalar::zero(); n];
        for (&i, c) in &self.0 {
            out[i] = c.clone();
        }
        out
    }
}

/// A braiding `c: V⊗V → V⊗V` on the span of `Basis`.
pub trait Braided {
    type Basis: Ord + Clone + Debug;

    fn braid(&self, a: &Self::Basis, b: &Self::Basis) -> Vec<((Self::Basis, Self::Basis), Scalar)>;
}

pub trait BraidedAlgebra: Braided {
    fn multiply(&self, a: &Self::Basis, b: &Self::Basis) -> Vec<(Self::Basis, Scalar)>;
}

pub trait BraidedCoalgebra: Braided {
    fn comultiply(&self, a: &Self::Basis) -> Vec<((Self::Basis, Self::Basis), Scalar)>;
    fn counit(&self, a: &Self::Basis) -> Scalar;
}

pub trait HasAntipode: Braided {
    fn antipode(&self, a: &Self::Basis) -> Vec<(Self::Basis, Scalar)>;
}

impl<B: Ord + Clone> Tensor<B> {
    /// `a_1 ⊗ a_2 ⊗ … ⊗ a_n` for one-slot elements.
    pub fn product_of(parts: &[&LinComb<B>]) -> Self {
        let mut acc = Tensor::basis(Vec::new());
        for part in parts {
            let mut next = Tensor::zero();
            for (key, c) in acc.iter() {
                for (b, d) in part.iter() {
                    let mut k = key.clone();
                    k.push(b.clone());
                    next.add_term(k, c * d);
                }
            }
            acc = next;
        }
        acc
    }

    /// `self ⊗ other` as a tensor with the slots of both.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Tensor::zero();
        for (k1, c1) in self.iter() {
            for (k2, c2) in other.iter() {
                let mut k = k1.clone();
                k.extend(k2.iter().cloned());
                out.add_term(k, c1 * c2);
            }
        }
        out
    }

    pub fn from_slots(slots: Vec<B>) -> Self {
        Tensor::basis(slots)
    }

    /// Replaces slots `start..start+width` of every term by `f` of them.
    pub fn map_slots(
        &self,
        start: usize,
        width: usize,
        mut f: impl FnMut(&[B]) -> Vec<(Vec<B>, Scalar)>,
    ) -> Self {
        let mut out = Tensor::zero();
        for (key, c) in self.iter() {
            assert!(start + width <= key.len(), "slot range out of bounds");
            for (replacement, d) in f(&key[start..start + width]) {
                let mut k = Vec::with_capacity(key.len() - width + replacement.len());
                k.extend_from_slice(&key[..start]);
                k.extend(replacement);
                k.extend_from_slice(&key[start + width..]);
                out.add_term(k, c * &d);
            }
        }
        out
    }

    /// `c_i`: the braiding on slots `i, i+1`.
    pub fn braid_at<A: Braided<Basis = B>>(&self, alg: &A, i: usize) -> Self {
        self.map_slots(i - 1, 2, |s| {
            alg.braid(&s[0], &s[1])
                .into_iter()
                .map(|((x, y), c)| (vec![x, y], c))
                .collect()
        })
    }

    /// `∇` on slots `i, i+1`.
    pub fn mul_at<A: BraidedAlgebra<Basis = B>>(&self, alg: &A, i: usize) -> Self {
        self.map_slots(i - 1, 2, |s| {
            alg.multiply(&s[0], &s[1])
                .into_iter()
                .map(|(x, c)| (vec![x], c))
                .collect()
        })
    }

    /// `Δ` on slot `i`.
    pub fn comul_at<A: BraidedCoalgebra<Basis = B>>(&self, alg: &A, i: usize) -> Self {
        self.map_slots(i - 1, 1, |s| {
            alg.comultiply(&s[0])
                .into_iter()
                .map(|((x, y), c)| (vec![x, y], c))
                .collect()
        })
    }

    /// `ε` on slot `i`.
    pub fn counit_at<A: BraidedCoalgebra<Basis = B>>(&self, alg: &A, i: usize) -> Self {
        self.map_slots(i - 1, 1, |s| vec![(Vec::new(), alg.counit(&s[0]))])
    }

    pub fn antipode_at<A: HasAntipode<Basis = B>>(&self, alg: &A, i: usize) -> Self {
        self.apply_at(i, |b| alg.antipode(b))
    }

    /// A linear endomorphism on slot `i`.
    pub fn apply_at(&self, i: usize, mut f: impl FnMut(&B) -> Vec<(B, Scalar)>) -> Self {
        self.map_slots(i - 1, 1, |s| {
            f(&s[0]).into_iter().map(|(x, c)| (vec![x], c)).collect()
        })
    }

    /// Inserts the unit element at slot position `i` (1-based, so `i = n+1` appends).
    pub fn insert_at(&self, i: usize, unit: &LinComb<B>) -> Self {
        self.map_slots(i - 1, 0, |_| unit.iter().map(|(b, c)| (vec![b.clone()], c.clone())).collect())
    }

    /// Collapses a one-slot tensor into a linear combination.
    pub fn single(&self) -> LinComb<B> {
        self.iter()
            .map(|(k, c)| {
                assert_eq!(k.len(), 1, "tensor is not one-slot");
                (k[0].clone(), c.clone())
            })
            .collect()
    }
}

impl<B: Ord + Clone> LinComb<B> {
    pub fn as_tensor(&self) -> Tensor<B> {
        self.iter().map(|(b, c)| (vec![b.clone()], c.clone())).collect()
    }
}

/// Coefficient prefix for rendering: `""` for 1, `"-"` for -1, `"c*"` otherwise.
fn coefficient_prefix(c: &Scalar) -> (bool, String) {
    let neg_one = Scalar::from_integer(-1);
    if c.is_one() {
        return (false, String::new());
    }
    if *c == neg_one {
        return (true, String::new());
    }
    if let Some(r) = c.as_rational() {
        if r < &num_rational::BigRational::from_integer(0.into()) {
            return (true, format!("{}*", -c));
        }
        return (false, format!("{c}*"));
    }
    (false, format!("({c})*"))
}

/// Renders `2*g⊗x - x⊗1` style strings in canonical (basis) order.
pub fn render_tensor<B: Ord + Clone>(t: &Tensor<B>, name: impl Fn(&B) -> String) -> String {
    if t.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (key, c)) in t.iter().enumerate() {
        let (neg, prefix) = coefficient_prefix(c);
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if key.is_empty() {
            let shown = if neg { -c } else { c.clone() };
            out.push_str(&shown.to_string());
            continue;
        }
        out.push_str(&prefix);
        let slots: Vec<String> = key.iter().map(&name).collect();
        out.push_str(&slots.join("⊗"));
    }
    out
}

pub fn render_lincomb<B: Ord + Clone>(v: &LinComb<B>, name: impl Fn(&B) -> String) -> String {
    render_tensor(&v.as_tensor(), name)
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Flip;

    impl Braided for Flip {
        type Basis = usize;
        fn braid(&self, a: &usize, b: &usize) -> Vec<((usize, usize), Scalar)> {
            vec![((*b, *a), Scalar::one())]
        }
    }

    #[test]
    fn zero_terms_are_dropped() {
        let mut v = LinComb::basis(3usize);
        v.add_term(3, Scalar::from_integer(-1));
        assert!(v.is_zero());
    }

    #[test]
    fn braid_positions_are_one_based() {
        let t = Tensor::from_slots(vec![0usize, 1, 2]);
        assert_eq!(t.braid_at(&Flip, 1), Tensor::from_slots(vec![1, 0, 2]));
        assert_eq!(t.braid_at(&Flip, 2), Tensor::from_slots(vec![0, 2, 1]));
    }

    #[test]
    fn rendering() {
        let mut t = Tensor::zero();
        t.add_term(vec![0usize, 1], Scalar::from_integer(2));
        t.add_term(vec![1, 0], Scalar::from_integer(-1));
        let names = ["g", "x"];
        assert_eq!(render_tensor(&t, |b| names[*b].to_string()), "2*g⊗x - x⊗g");
        let s: Tensor<usize> = Tensor::term(Vec::new(), Scalar::from_integer(-3));
        assert_eq!(render_tensor(&s, |b| names[*b].to_string()), "-3");
    }
}
