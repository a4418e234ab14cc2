use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use braidpbw_core::corpus::{braided_spaces, entries};
use braidpbw_core::symmetric::RewriteStrategy;
use braidpbw_core::tensor_algebra::{lemma2_sides, Lemma2Rhs};
use braidpbw_core::{
    braid_check, diagonal_braiding, is_symmetric, validate_bicharacter, Bicharacter, FiniteAbelianGroup, Generator,
    GradedBasis, LinComb, Scalar, SymmetricAlgebra, Tensor, TensorAlgebra, Word,
};

/// A skew-symmetric bicharacter on `Z/n_1 × … × Z/n_r` from exponents:
/// `χ(a_i, a_j) = ζ_m^{e_ij}` with `m = gcd(n_i, n_j)` above the diagonal.
fn skew_bicharacter(factors: &[u32], exps: &[u32], diag_signs: &[bool]) -> Bicharacter {
    let r = factors.len();
    let gcd = |a: u32, b: u32| num_integer::gcd(a, b);
    let mut table = vec![vec![Scalar::one(); r]; r];
    let mut k = 0;
    for i in 0..r {
        for j in (i + 1)..r {
            let m = gcd(factors[i], factors[j]);
            let t = Scalar::root_of_unity(m, (exps[k] % m) as i64);
            table[j][i] = t.inv().unwrap();
            table[i][j] = t;
            k += 1;
        }
        if factors[i] % 2 == 0 && diag_signs[i] {
            table[i][i] = Scalar::from_integer(-1);
        }
    }
    Bicharacter::new(FiniteAbelianGroup::new(factors.to_vec()).unwrap(), table)
}

fn basis_of(degrees: &[Vec<u32>], factors: &[u32]) -> GradedBasis {
    GradedBasis::new(
        degrees
            .iter()
            .enumerate()
            .map(|(i, d)| Generator {
                name: format!("v{i}"),
                deg: d.iter().zip(factors).map(|(x, n)| x % n).collect(),
            })
            .collect(),
    )
    .unwrap()
}

prop_compose! {
    fn bicharacter_space()(
        factors in prop::collection::vec(2u32..=4, 1..=2),
        exps in prop::collection::vec(0u32..12, 1),
        signs in prop::collection::vec(any::<bool>(), 2),
        degrees in prop::collection::vec(prop::collection::vec(0u32..4, 2), 1..=3),
    ) -> (Bicharacter, GradedBasis) {
        let chi = skew_bicharacter(&factors, &exps, &signs);
        let degs: Vec<Vec<u32>> = degrees.into_iter().map(|d| d[..factors.len()].to_vec()).collect();
        let basis = basis_of(&degs, &factors);
        (chi, basis)
    }
}

fn word_strategy(dim: usize, max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..dim, 0..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn skew_bicharacters_give_symmetric_braidings((chi, basis) in bicharacter_space()) {
        prop_assert!(validate_bicharacter(&chi).pass());
        let c = diagonal_braiding(&chi, &basis).unwrap();
        prop_assert!(braid_check(&c));
        prop_assert!(is_symmetric(&c));
    }

    #[test]
    fn bicharacter_is_bimultiplicative((chi, _b) in bicharacter_space(), g in prop::collection::vec(0u32..4, 2), h in prop::collection::vec(0u32..4, 2), k in prop::collection::vec(0u32..4, 2)) {
        let r = chi.group.rank();
        let (g, h, k) = (&g[..r], &h[..r], &k[..r]);
        let hk = chi.group.add(h, k);
        prop_assert_eq!(chi.eval(g, &hk), &chi.eval(g, h) * &chi.eval(g, k));
        prop_assert!((&chi.eval(g, h) * &chi.eval(h, g)).is_one());
    }

    #[test]
    fn rewriting_is_confluent((chi, basis) in bicharacter_space(), w in word_strategy(3, 6)) {
        let s = SymmetricAlgebra::from_bicharacter(&chi, &basis).unwrap();
        let w = Word(w.into_iter().filter(|&l| l < s.dim()).collect());
        prop_assert_eq!(
            s.normal_form_with(&w, RewriteStrategy::Leftmost),
            s.normal_form_with(&w, RewriteStrategy::Rightmost)
        );
    }

    #[test]
    fn normal_form_is_multiplicative((chi, basis) in bicharacter_space(), u in word_strategy(3, 4), v in word_strategy(3, 4)) {
        let s = SymmetricAlgebra::from_bicharacter(&chi, &basis).unwrap();
        let keep = |w: Vec<usize>| Word(w.into_iter().filter(|&l| l < s.dim()).collect());
        let (u, v) = (keep(u), keep(v));
        let lhs = s.normal_form(&u.concat(&v));
        let rhs = s.sym_product(&s.normal_form(&u), &s.normal_form(&v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_forms_are_scheunert((chi, basis) in bicharacter_space(), w in word_strategy(3, 6)) {
        let s = SymmetricAlgebra::from_bicharacter(&chi, &basis).unwrap();
        let w = Word(w.into_iter().filter(|&l| l < s.dim()).collect());
        for (m, _) in s.normal_form(&w).iter() {
            prop_assert!(s.is_scheunert(&m.0));
        }
    }

    #[test]
    fn tensor_algebra_is_a_braided_algebra(
        space in 0usize..6,
        a in word_strategy(4, 2), b in word_strategy(4, 2), c in word_strategy(4, 2),
    ) {
        let (_, spec) = &braided_spaces()[space];
        let alg = TensorAlgebra::new(spec.braiding().unwrap(), spec.graded_basis().unwrap().names()).unwrap();
        let d = alg.dim();
        let w = |x: &[usize]| Word(x.iter().map(|&l| l % d).collect());
        let x = Tensor::from_slots(vec![w(&a), w(&b), w(&c)]);
        // c(∇⊗id) = (id⊗∇)c₁c₂ and c(id⊗∇) = (∇⊗id)c₂c₁
        prop_assert_eq!(x.mul_at(&alg, 1).braid_at(&alg, 1), x.braid_at(&alg, 2).braid_at(&alg, 1).mul_at(&alg, 2));
        prop_assert_eq!(x.mul_at(&alg, 2).braid_at(&alg, 1), x.braid_at(&alg, 1).braid_at(&alg, 2).mul_at(&alg, 1));
        // braid equation on words
        prop_assert_eq!(
            x.braid_at(&alg, 1).braid_at(&alg, 2).braid_at(&alg, 1),
            x.braid_at(&alg, 2).braid_at(&alg, 1).braid_at(&alg, 2)
        );
        // symmetric: c² = id
        prop_assert_eq!(x.braid_at(&alg, 1).braid_at(&alg, 1), x.clone());
    }

    #[test]
    fn c_nm_agrees_with_block_exchange(space in 0usize..6, a in word_strategy(4, 3), b in word_strategy(4, 3)) {
        let (_, spec) = &braided_spaces()[space];
        let alg = TensorAlgebra::new(spec.braiding().unwrap(), spec.graded_basis().unwrap().names()).unwrap();
        let d = alg.dim();
        let (a, b) = (Word(a.iter().map(|l| l % d).collect()), Word(b.iter().map(|l| l % d).collect()));
        let joined = LinComb::basis(a.concat(&b));
        let via_c = alg.c_nm(a.len(), b.len(), &joined).unwrap();
        let via_tensor: LinComb<Word> = Tensor::from_slots(vec![a, b])
            .braid_at(&alg, 1)
            .iter()
            .map(|(k, s)| (k[0].concat(&k[1]), s.clone()))
            .collect();
        prop_assert_eq!(via_c, via_tensor);
    }
}

/// A random bihomogeneous element: a combination of words of one length
/// whose letters have the same group degree multiset.
fn random_bihomogeneous(rng: &mut ChaCha8Rng, dim: usize, degs: &[Vec<u32>]) -> LinComb<Word> {
    let len = rng.random_range(0..=2);
    let w: Vec<usize> = (0..len).map(|_| rng.random_range(0..dim)).collect();
    let mut e = LinComb::term(Word(w.clone()), Scalar::from_integer(rng.random_range(1..=3)));
    if len == 2 && degs[w[0]] == degs[w[1]] {
        // the reversed word has the same bidegree
        e.add_term(Word(vec![w[1], w[0]]), Scalar::from_integer(rng.random_range(-2..=2)));
    }
    e
}

#[test]
fn lemma2_on_random_quadruples_and_mutation() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for (name, spec) in braided_spaces() {
        let c = spec.braiding().unwrap();
        assert!(is_symmetric(&c));
        let basis = spec.graded_basis().unwrap();
        let degs: Vec<Vec<u32>> = basis.generators.iter().map(|g| g.deg.clone()).collect();
        let alg = TensorAlgebra::new(c, basis.names()).unwrap();
        let mut caught = 0;
        for _ in 0..128 {
            let q: Vec<LinComb<Word>> = (0..4).map(|_| random_bihomogeneous(&mut rng, alg.dim(), &degs)).collect();
            let quad = [&q[0], &q[1], &q[2], &q[3]];
            let (lhs, rhs) = lemma2_sides(&alg, quad, Lemma2Rhs::Exact);
            assert_eq!(lhs, rhs, "{name}");
            let (_, mutated) = lemma2_sides(&alg, quad, Lemma2Rhs::DropOpTerm);
            if mutated != lhs {
                caught += 1;
            }
        }
        assert!(caught > 0, "{name}: mutation never detected");
    }
}

#[test]
fn lemma2_on_corpus_bialgebras() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for e in entries().into_iter().filter(|e| e.symmetric) {
        let h = &e.algebra;
        let mut tested = 0;
        while tested < 100 {
            let t: Vec<usize> = (0..4).map(|_| rng.random_range(0..h.dim())).collect();
            let w: usize = t.iter().map(|&i| h.weight(i)).sum();
            if h.truncation.is_some_and(|top| w > top) {
                continue;
            }
            let q: Vec<LinComb<usize>> = t.iter().map(|&i| h.basis(i)).collect();
            let (lhs, rhs) = lemma2_sides(h, [&q[0], &q[1], &q[2], &q[3]], Lemma2Rhs::Exact);
            assert_eq!(lhs, rhs, "{}", e.name);
            tested += 1;
        }
    }
}

/// `dim S(V)_n` from `∏ (1 + t)` over letters with `q_ii = −1` times
/// `∏ 1/(1 − t)` over the rest.
fn hilbert_by_counting(odd: usize, even: usize, n: usize) -> usize {
    let binom = |a: usize, b: usize| -> usize {
        if b > a {
            return 0;
        }
        (0..b).fold(1, |acc, i| acc * (a - i) / (i + 1))
    };
    (0..=odd.min(n))
        .map(|k| binom(odd, k) * if even == 0 { usize::from(n == k) } else { binom(n - k + even - 1, even - 1) })
        .sum()
}

#[test]
fn scheunert_basis_matches_oracle() {
    for (name, spec) in braided_spaces() {
        let chi = spec.bicharacter().unwrap();
        let basis = spec.graded_basis().unwrap();
        let s = SymmetricAlgebra::from_bicharacter(&chi, &basis).unwrap();
        let c = spec.braiding().unwrap();
        let odd = (0..s.dim()).filter(|&i| !s.q(i, i).is_one()).count();
        for n in 0..=5 {
            let scheunert = s.basis_in_degree(n).len();
            assert_eq!(scheunert, braidpbw_core::oracle_dimension(&c, n, 8).unwrap(), "{name} n={n}");
            assert_eq!(scheunert, hilbert_by_counting(odd, s.dim() - odd, n), "{name} n={n}");
        }
    }
}
