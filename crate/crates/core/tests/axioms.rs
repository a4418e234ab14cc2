use braidpbw_core::corpus::{entries, sweedler};
use braidpbw_core::hopf::{check_lemma1_exhaustive, counit_kernel_is_categorical, is_c_cocommutative};
use braidpbw_core::{
    check_all, check_antipode, check_braided_algebra, check_braided_bialgebra, check_braided_coalgebra, LinComb,
    Scalar, StructureBialgebra, Tensor,
};

const G: usize = 1;
const X: usize = 2;
const GX: usize = 3;

#[test]
fn corpus_passes_every_checker() {
    for e in entries() {
        let h = &e.algebra;
        assert!(check_braided_algebra(h).pass(), "{}", e.name);
        assert!(check_braided_coalgebra(h).pass(), "{}", e.name);
        assert!(check_braided_bialgebra(h).pass(), "{}", e.name);
        assert!(check_antipode(h).unwrap().pass(), "{}", e.name);
    }
}

#[test]
fn lemma1_on_all_basis_pairs() {
    for e in entries() {
        let r = check_lemma1_exhaustive(&e.algebra);
        assert!(r.pass(), "{}: {:?}", e.name, r.violations.first());
        assert_eq!(r.checked, vec!["lemma1"]);
    }
}

#[test]
fn counit_kernel_is_categorical_everywhere() {
    for e in entries() {
        assert!(counit_kernel_is_categorical(&e.algebra), "{}", e.name);
    }
}

#[test]
fn sweedler_is_not_cocommutative() {
    assert!(!is_c_cocommutative(&sweedler()));
}

fn violated(h: &StructureBialgebra) -> Vec<String> {
    check_all(h).violated_axioms().into_iter().map(String::from).collect()
}

#[test]
fn mutation_g_squared_is_g() {
    let mut h = sweedler();
    h.mult[G][G] = LinComb::basis(G);
    assert!(!check_braided_algebra(&h).pass());
    assert!(violated(&h).contains(&"associativity".to_string()));
}

#[test]
fn mutation_counit_of_g_is_zero() {
    let mut h = sweedler();
    h.counit[G] = Scalar::zero();
    let r = check_braided_coalgebra(&h);
    assert!(!r.pass());
    assert!(r.violated_axioms().contains(&"counit-left"));
}

#[test]
fn mutation_swapped_coproduct_of_x() {
    let mut h = sweedler();
    // x⊗1 + g⊗x becomes 1⊗x + x⊗g; coassociativity survives but multiplicativity does not
    h.comult[X] = Tensor::from_terms([(vec![0, X], Scalar::one()), (vec![X, G], Scalar::one())]);
    assert!(check_braided_coalgebra(&h).pass());
    let r = check_braided_bialgebra(&h);
    assert!(r.violated_axioms().contains(&"comult-multiplicative"));
    assert!(!r.violations.is_empty());
    assert!(!r.violations[0].witness.is_empty());
}

#[test]
fn mutation_antipode_of_x() {
    let mut h = sweedler();
    h.antipode.as_mut().unwrap()[X] = LinComb::term(X, Scalar::from_integer(-1));
    let r = check_antipode(&h).unwrap();
    assert!(!r.pass());
    assert!(r.violated_axioms().contains(&"convolution-left"));
}

#[test]
fn mutation_commuting_x_and_g() {
    let mut h = sweedler();
    h.mult[X][G] = LinComb::basis(GX);
    // (x·g)·g = gx·g = −x but x·(g·g) = x
    assert!(check_braided_algebra(&h).violated_axioms().contains(&"associativity"));
}

#[test]
fn mutation_non_braid_braiding() {
    let mut h = sweedler();
    let d = h.dim();
    h.braiding = braidpbw_core::GenericBraiding::from_fn(d, |i, j| {
        let mut v = vec![((j, i), Scalar::one())];
        if (i, j) == (X, X) {
            v.push(((X, G), Scalar::one()));
        }
        v
    });
    let r = check_braided_algebra(&h);
    assert!(r.violated_axioms().contains(&"braid-equation"));
}

#[test]
fn missing_antipode_is_an_error() {
    let mut h = sweedler();
    h.antipode = None;
    assert!(check_antipode(&h).is_err());
}
