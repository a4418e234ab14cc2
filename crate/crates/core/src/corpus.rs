//! The built-in corpus of braided spaces and braided Hopf algebras.
//!
//! Coproducts and antipodes are given on generators and extended: `Δ`
//! multiplicatively into the braided tensor square, `S` by `S(ab) = ∇c(Sa ⊗ Sb)`.

use std::collections::BTreeMap;

use crate::braided_space::{BraidedSpaceSpec, FiniteAbelianGroup, GenericBraiding, Generator};
use crate::hopf::{Element, StructureBialgebra};
use crate::linalg::{unit_vector, Subspace, Vector};
use crate::lincomb::{LinComb, Tensor};
use crate::scalar::Scalar;

fn int(n: i64) -> Scalar {
    Scalar::from_integer(n)
}

/// A bialgebra presented on a monomial basis, with generator data.
struct Presentation {
    names: Vec<String>,
    mult: Vec<Vec<Element>>,
    braiding: GenericBraiding,
    grading: Option<Vec<usize>>,
    weights: Option<Vec<usize>>,
    truncation: Option<usize>,
    /// Each basis vector as a product of generator basis vectors, left to right.
    words: Vec<Vec<usize>>,
    gen_comult: BTreeMap<usize, Tensor<usize>>,
    gen_counit: BTreeMap<usize, Scalar>,
    gen_antipode: BTreeMap<usize, Element>,
}

impl Presentation {
    fn finish(self) -> StructureBialgebra {
        let d = self.names.len();
        let mut h = StructureBialgebra {
            names: self.names,
            unit: LinComb::basis(0),
            mult: self.mult,
            counit: vec![Scalar::zero(); d],
            comult: vec![Tensor::zero(); d],
            antipode: None,
            braiding: self.braiding,
            grading: self.grading,
            weights: self.weights,
            truncation: self.truncation,
        };
        let mut comult = Vec::with_capacity(d);
        let mut counit = Vec::with_capacity(d);
        let mut antipode = Vec::with_capacity(d);
        for (i, word) in self.words.iter().enumerate() {
            let mut value = h.unit.clone();
            let mut delta = Tensor::from_slots(vec![0, 0]);
            let mut eps = Scalar::one();
            let mut s = h.unit.clone();
            for g in word {
                value = h.product(&value, &h.basis(*g));
                // (∇⊗∇)c₂ on Δ(u) ⊗ Δ(g)
                delta = delta
                    .concat(&self.gen_comult[g])
                    .braid_at(&h, 2)
                    .mul_at(&h, 1)
                    .mul_at(&h, 2);
                eps = &eps * &self.gen_counit[g];
                s = h.op_product(&s, &self.gen_antipode[g]);
            }
            let lambda = value.coeff(&i);
            assert!(
                value == LinComb::term(i, lambda.clone()),
                "word for basis vector {i} does not multiply to a multiple of it"
            );
            let inv = lambda.inv().expect("nonzero leading coefficient");
            comult.push(delta.scale(&inv));
            counit.push(&eps * &inv);
            antipode.push(s.scale(&inv));
        }
        h.comult = comult;
        h.counit = counit;
        h.antipode = Some(antipode);
        h
    }
}

fn flip(d: usize) -> GenericBraiding {
    GenericBraiding::flip(d)
}

fn primitive(g: usize) -> Tensor<usize> {
    let mut t = Tensor::from_slots(vec![g, 0]);
    t.add_term(vec![0, g], Scalar::one());
    t
}

fn monomial_name(parts: &[(&str, usize)]) -> String {
    let s: String = parts
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    if s.is_empty() { "1".into() } else { s }
}

/// `kC₂` with basis `1, g`.
pub fn group_algebra_c2() -> StructureBialgebra {
    let e = |i| LinComb::basis(i);
    Presentation {
        names: vec!["1".into(), "g".into()],
        mult: vec![vec![e(0), e(1)], vec![e(1), e(0)]],
        braiding: flip(2),
        grading: None,
        weights: None,
        truncation: None,
        words: vec![vec![], vec![1]],
        gen_comult: BTreeMap::from([(1, Tensor::from_slots(vec![1, 1]))]),
        gen_counit: BTreeMap::from([(1, Scalar::one())]),
        gen_antipode: BTreeMap::from([(1, e(1))]),
    }
    .finish()
}

/// `g^a x^b` with `g^n = 1`, `x^n = 0`, `x g = q^{-1} g x`, `Δx = x⊗1 + g⊗x`,
/// indexed by `a + n b`.
fn taft_like(n: usize, q: Scalar) -> StructureBialgebra {
    let d = n * n;
    let idx = |a: usize, b: usize| a + n * b;
    let qinv = q.inv().expect("root of unity");
    let mut mult = vec![vec![Element::zero(); d]; d];
    for (a, b, c, e) in itertools4(n) {
        if b + e < n {
            let coef = qinv.pow((b * c) as i64).expect("invertible");
            mult[idx(a, b)][idx(c, e)] = LinComb::term(idx((a + c) % n, b + e), coef);
        }
    }
    let names = (0..d)
        .map(|i| {
            let (a, b) = (i % n, i / n);
            monomial_name(&[("g", a), ("x", b)])
        })
        .collect();
    let words = (0..d)
        .map(|i| {
            let (a, b) = (i % n, i / n);
            std::iter::repeat_n(1, a).chain(std::iter::repeat_n(n, b)).collect()
        })
        .collect();
    let g = 1;
    let x = n;
    let mut dx = Tensor::from_slots(vec![x, 0]);
    dx.add_term(vec![g, x], Scalar::one());
    let ginv = idx(n - 1, 0);
    Presentation {
        names,
        mult,
        braiding: flip(d),
        grading: None,
        weights: None,
        truncation: None,
        words,
        gen_comult: BTreeMap::from([(g, Tensor::from_slots(vec![g, g])), (x, dx)]),
        gen_counit: BTreeMap::from([(g, Scalar::one()), (x, Scalar::zero())]),
        gen_antipode: BTreeMap::from([
            (g, LinComb::basis(ginv)),
            (x, LinComb::term(idx(n - 1, 1), int(-1))),
        ]),
    }
    .finish()
}

fn itertools4(n: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..n).flat_map(move |a| {
        (0..n).flat_map(move |b| (0..n).flat_map(move |c| (0..n).map(move |e| (a, b, c, e))))
    })
}

/// Sweedler's four-dimensional Hopf algebra: basis `1, g, x, gx`.
pub fn sweedler() -> StructureBialgebra {
    taft_like(2, int(-1))
}

/// The Taft algebra of dimension 9 at a primitive cube root of unity.
pub fn taft3() -> StructureBialgebra {
    taft_like(3, Scalar::root_of_unity(3, 1))
}

/// Monomials `v_1^{a_1} ⋯ v_r^{a_r}` of total degree at most `t`, by degree
/// and then with higher powers of earlier letters first.
fn monomials(r: usize, t: usize, max_exp: &[usize]) -> Vec<Vec<usize>> {
    fn go(r: usize, left: usize, max_exp: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r - 1 {
            if left <= max_exp[r - 1] {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        let i = cur.len();
        for e in (0..=left.min(max_exp[i])).rev() {
            cur.push(e);
            go(r, left - e, max_exp, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for n in 0..=t {
        go(r, n, max_exp, &mut Vec::new(), &mut out);
    }
    out
}

/// A commutative-up-to-signs monomial algebra truncated at total degree `t`,
/// with primitive generators.
///
/// `product(a, b)` returns the product of exponent vectors as a list of
/// (exponents, coefficient); `parity` gives the group degree used by the braiding.
fn truncated_monomial_algebra(
    letters: &[&str],
    max_exp: &[usize],
    t: usize,
    product: impl Fn(&[usize], &[usize]) -> Vec<(Vec<usize>, Scalar)>,
    braid_sign: impl Fn(&[usize], &[usize]) -> Scalar,
) -> StructureBialgebra {
    let r = letters.len();
    let basis = monomials(r, t, max_exp);
    let d = basis.len();
    let index: BTreeMap<Vec<usize>, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let deg: Vec<usize> = basis.iter().map(|m| m.iter().sum()).collect();
    let mut mult = vec![vec![Element::zero(); d]; d];
    for i in 0..d {
        for j in 0..d {
            if deg[i] + deg[j] > t {
                continue;
            }
            for (m, c) in product(&basis[i], &basis[j]) {
                if let Some(&k) = index.get(&m) {
                    mult[i][j].add_term(k, c);
                }
            }
        }
    }
    let braiding = GenericBraiding::from_fn(d, |i, j| vec![((j, i), braid_sign(&basis[i], &basis[j]))]);
    let names = basis
        .iter()
        .map(|m| monomial_name(&letters.iter().copied().zip(m.iter().copied()).collect::<Vec<_>>()))
        .collect();
    let gens: Vec<usize> = (0..r)
        .map(|l| index[&(0..r).map(|k| usize::from(k == l)).collect::<Vec<_>>()])
        .collect();
    let words = basis
        .iter()
        .map(|m| m.iter().enumerate().flat_map(|(l, &e)| std::iter::repeat_n(gens[l], e)).collect())
        .collect();
    Presentation {
        names,
        mult,
        braiding,
        grading: Some(deg),
        weights: None,
        truncation: Some(t),
        words,
        gen_comult: gens.iter().map(|&g| (g, primitive(g))).collect(),
        gen_counit: gens.iter().map(|&g| (g, Scalar::zero())).collect(),
        gen_antipode: gens.iter().map(|&g| (g, LinComb::term(g, int(-1)))).collect(),
    }
    .finish()
}

fn add_exps(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `k[x]` truncated at degree `t`, `x` primitive.
pub fn polynomial(t: usize) -> StructureBialgebra {
    truncated_monomial_algebra(&["x"], &[t], t, |a, b| vec![(add_exps(a, b), Scalar::one())], |_, _| Scalar::one())
}

/// The enveloping algebra of the two-dimensional abelian Lie algebra, truncated.
pub fn abelian_enveloping(t: usize) -> StructureBialgebra {
    truncated_monomial_algebra(
        &["x", "y"],
        &[t, t],
        t,
        |a, b| vec![(add_exps(a, b), Scalar::one())],
        |_, _| Scalar::one(),
    )
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// The enveloping algebra of `[x, y] = y`, truncated by PBW degree.
/// It is filtered, not graded, so the truncation uses weights.
pub fn solvable_enveloping(t: usize) -> StructureBialgebra {
    // x^a y^b · x^c y^d = x^a (x − b)^c y^{b+d}
    let mut h = truncated_monomial_algebra(
        &["x", "y"],
        &[t, t],
        t,
        |l, r| {
            let (a, b, c, e) = (l[0], l[1], r[0], r[1]);
            (0..=c)
                .map(|k| {
                    let coef = binomial(c, k) * (-(b as i64)).pow((c - k) as u32);
                    (vec![a + k, b + e], int(coef))
                })
                .filter(|(_, s)| !s.is_zero())
                .collect()
        },
        |_, _| Scalar::one(),
    );
    h.weights = h.grading.take();
    h
}

/// `k[x] ⊗ Λ(θ)` with `θ` odd, truncated.
pub fn super_line(t: usize) -> StructureBialgebra {
    truncated_monomial_algebra(
        &["x", "θ"],
        &[t, 1],
        t,
        |a, b| {
            if a[1] + b[1] > 1 {
                vec![]
            } else {
                vec![(add_exps(a, b), Scalar::one())]
            }
        },
        |a, b| int(if a[1] * b[1] % 2 == 1 { -1 } else { 1 }),
    )
}

/// Two even-looking generators over `Z/2 × Z/2` whose degrees pair to `−1`,
/// so `xy = −yx` while `x² , y² ≠ 0`.
pub fn color_klein(t: usize) -> StructureBialgebra {
    truncated_monomial_algebra(
        &["x", "y"],
        &[t, t],
        t,
        |a, b| {
            let sign = if a[1] * b[0] % 2 == 1 { -1 } else { 1 };
            vec![(add_exps(a, b), int(sign))]
        },
        |a, b| int(if (a[0] * b[1] + a[1] * b[0]) % 2 == 1 { -1 } else { 1 }),
    )
}

/// The super line in degree-one basis `x + θ, x − θ`: a symmetric braiding
/// that is not diagonal on the generators.
pub fn super_line_mixed_basis(t: usize) -> StructureBialgebra {
    let h = super_line(t);
    let d = h.dim();
    let (x, th) = (1, 2);
    let mut basis: Vec<Vector> = (0..d).map(|i| unit_vector(d, i)).collect();
    let mut names = h.names.clone();
    basis[x][th] = Scalar::one();
    basis[th] = unit_vector(d, x);
    basis[th][th] = int(-1);
    names[x] = "u".into();
    names[th] = "v".into();
    h.rebased(&basis, names).expect("invertible change of basis")
}

/// A named entry of the bialgebra corpus with the subalgebra `K` it is used with.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub algebra: StructureBialgebra,
    /// `K`; `span(1)` when the entry is used with the coradical filtration.
    pub sub: Subspace,
    pub symmetric: bool,
    pub connected: bool,
    /// The Q-space of the relevant graded object is symmetric and diagonal.
    pub expect_pbw: bool,
}

fn span_of(h: &StructureBialgebra, names: &[&str]) -> Subspace {
    let d = h.dim();
    Subspace::coordinate(
        d,
        names.iter().map(|n| h.names.iter().position(|m| m == n).expect("known basis name")),
    )
}

pub const TRUNCATION: usize = 6;

/// The enveloping algebra of `[x,y] = y` over `K = k[y]`, which is central in
/// the associated graded algebra.
pub fn central_k_entry() -> CorpusEntry {
    let h = solvable_enveloping(TRUNCATION);
    let sub = span_of(&h, &["1", "y", "y^2", "y^3", "y^4", "y^5", "y^6"]);
    CorpusEntry {
        name: "solvable_over_y",
        algebra: h,
        sub,
        symmetric: true,
        connected: true,
        expect_pbw: true,
    }
}

pub fn entries() -> Vec<CorpusEntry> {
    let unit_sub = |h: &StructureBialgebra| Subspace::coordinate(h.dim(), [0]);
    let mut out = Vec::new();
    let mut push = |name, h: StructureBialgebra, sub: Option<&[&str]>, symmetric, connected, expect_pbw| {
        let sub = match sub {
            Some(names) => span_of(&h, names),
            None => unit_sub(&h),
        };
        out.push(CorpusEntry {
            name,
            algebra: h,
            sub,
            symmetric,
            connected,
            expect_pbw,
        });
    };
    push("group_c2", group_algebra_c2(), Some(&["1", "g"]), true, false, true);
    push("sweedler", sweedler(), Some(&["1", "g"]), true, false, true);
    push("taft3", taft3(), Some(&["1", "g", "g^2"]), true, false, false);
    push("polynomial", polynomial(TRUNCATION), None, true, true, true);
    push("abelian_enveloping", abelian_enveloping(TRUNCATION), None, true, true, true);
    push("solvable_enveloping", solvable_enveloping(TRUNCATION), None, true, true, true);
    push("super_line", super_line(TRUNCATION), None, true, true, true);
    push("color_klein", color_klein(TRUNCATION), None, true, true, true);
    push("super_line_mixed", super_line_mixed_basis(TRUNCATION), None, true, true, true);
    out.push(central_k_entry());
    out
}

pub fn entry(name: &str) -> Option<CorpusEntry> {
    entries().into_iter().find(|e| e.name == name)
}

fn gen(name: &str, deg: &[u32]) -> Generator {
    Generator {
        name: name.into(),
        deg: deg.to_vec(),
    }
}

/// The braided vector spaces of the corpus, all with skew-symmetric bicharacters.
pub fn braided_spaces() -> Vec<(&'static str, BraidedSpaceSpec)> {
    let s = |x: i64| Scalar::from_integer(x);
    let w = Scalar::root_of_unity(3, 1);
    let w2 = Scalar::root_of_unity(3, 2);
    let z2 = FiniteAbelianGroup { factors: vec![2] };
    let klein = FiniteAbelianGroup { factors: vec![2, 2] };
    vec![
        (
            "trivial2",
            BraidedSpaceSpec {
                group: z2.clone(),
                bichar: vec![vec![s(1)]],
                basis: vec![gen("x", &[0]), gen("y", &[1])],
            },
        ),
        (
            "super_line",
            BraidedSpaceSpec {
                group: z2.clone(),
                bichar: vec![vec![s(-1)]],
                basis: vec![gen("x", &[0]), gen("θ", &[1])],
            },
        ),
        (
            "exterior2",
            BraidedSpaceSpec {
                group: z2,
                bichar: vec![vec![s(-1)]],
                basis: vec![gen("a", &[1]), gen("b", &[1])],
            },
        ),
        (
            "color_klein",
            BraidedSpaceSpec {
                group: klein.clone(),
                bichar: vec![vec![s(1), s(-1)], vec![s(-1), s(1)]],
                basis: vec![gen("x", &[1, 0]), gen("y", &[0, 1])],
            },
        ),
        (
            "color_z3",
            BraidedSpaceSpec {
                group: FiniteAbelianGroup { factors: vec![3, 3] },
                bichar: vec![vec![s(1), w], vec![w2, s(1)]],
                basis: vec![gen("x", &[1, 0]), gen("y", &[0, 1]), gen("z", &[1, 1])],
            },
        ),
        (
            "mixed3",
            BraidedSpaceSpec {
                group: klein,
                bichar: vec![vec![s(-1), s(-1)], vec![s(-1), s(1)]],
                basis: vec![gen("x", &[0, 0]), gen("θ", &[1, 0]), gen("η", &[0, 1]), gen("ξ", &[1, 1])],
            },
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::check_all;

    fn name_index(h: &StructureBialgebra, n: &str) -> usize {
        h.names.iter().position(|m| m == n).unwrap()
    }

    #[test]
    fn sweedler_table() {
        let h = sweedler();
        assert_eq!(h.names, vec!["1", "g", "x", "gx"]);
        let (g, x, gx) = (1, 2, 3);
        assert_eq!(h.mult[x][g], LinComb::term(gx, int(-1)));
        assert_eq!(h.mult[g][x], LinComb::basis(gx));
        assert!(h.mult[x][x].is_zero());
        assert_eq!(h.antipode.as_ref().unwrap()[x], LinComb::term(gx, int(-1)));
        assert_eq!(h.antipode.as_ref().unwrap()[gx], LinComb::basis(x));
    }

    #[test]
    fn taft_antipode() {
        let h = taft3();
        let x = name_index(&h, "x");
        assert_eq!(h.antipode.as_ref().unwrap()[x], LinComb::term(name_index(&h, "g^2x"), int(-1)));
    }

    #[test]
    fn sizes() {
        assert_eq!(polynomial(6).dim(), 7);
        assert_eq!(abelian_enveloping(6).dim(), 28);
        assert_eq!(super_line(6).dim(), 13);
        assert_eq!(color_klein(6).dim(), 28);
        assert_eq!(taft3().dim(), 9);
    }

    #[test]
    fn every_entry_passes_the_axioms() {
        for e in entries() {
            let r = check_all(&e.algebra);
            assert!(r.pass(), "{}: {:?}", e.name, r.violations.first());
        }
    }

    #[test]
    fn solvable_bracket() {
        let h = solvable_enveloping(4);
        let (x, y) = (name_index(&h, "x"), name_index(&h, "y"));
        let c = h.commutator(&h.basis(x), &h.basis(y));
        assert_eq!(c, h.basis(y));
    }
}
