use braidpbw_core::coinvariants::{
    adjoint, bosonization_check, bosonization_degrees, check_braiding_collapse, coaction_in, compute_r,
    is_central, is_cocentral, pi_map, projection_pi, CollapseStatus,
};
use braidpbw_core::corpus::{self, central_k_entry, sweedler, taft3};
use braidpbw_core::filtration::{associated_graded, hopf_filtration};
use braidpbw_core::{braid_check, is_symmetric, Element, LinComb, Scalar, StructureBialgebra, Subspace, Tensor};

fn idx(h: &StructureBialgebra, n: &str) -> usize {
    h.names.iter().position(|m| m == n).unwrap_or_else(|| panic!("no basis vector {n} in {:?}", h.names))
}

fn span(h: &StructureBialgebra, names: &[&str]) -> Subspace {
    Subspace::coordinate(h.dim(), names.iter().map(|n| idx(h, n)))
}

fn graded(h: &StructureBialgebra, k: &[&str]) -> StructureBialgebra {
    let ladder = hopf_filtration(h, &span(h, k)).unwrap();
    associated_graded(h, &ladder).unwrap()
}

fn sweedler_gr() -> StructureBialgebra {
    graded(&sweedler(), &["1", "g"])
}

#[test]
fn projection_on_sweedler() {
    let gr = sweedler_gr();
    let (g, x) = (idx(&gr, "g"), idx(&gr, "x"));
    assert_eq!(projection_pi(&gr, &gr.unit).unwrap(), gr.unit);
    assert_eq!(projection_pi(&gr, &gr.basis(g)).unwrap(), gr.basis(g));
    assert!(projection_pi(&gr, &gr.basis(x)).unwrap().is_zero());
    // π respects products on every basis pair
    for i in 0..gr.dim() {
        for j in 0..gr.dim() {
            let lhs = projection_pi(&gr, &gr.product(&gr.basis(i), &gr.basis(j))).unwrap();
            let rhs = gr.product(
                &projection_pi(&gr, &gr.basis(i)).unwrap(),
                &projection_pi(&gr, &gr.basis(j)).unwrap(),
            );
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn pi_map_on_sweedler() {
    let gr = sweedler_gr();
    let (g, x) = (idx(&gr, "g"), idx(&gr, "x"));
    assert_eq!(pi_map(&gr, &gr.unit).unwrap(), gr.unit);
    assert_eq!(pi_map(&gr, &gr.basis(g)).unwrap(), gr.unit);
    assert_eq!(pi_map(&gr, &gr.basis(x)).unwrap(), gr.basis(x));
}

#[test]
fn action_and_coaction_on_sweedler() {
    let gr = sweedler_gr();
    let (g, x) = (idx(&gr, "g"), idx(&gr, "x"));
    assert_eq!(adjoint(&gr, &gr.unit, &gr.basis(x)), gr.basis(x));
    assert_eq!(adjoint(&gr, &gr.basis(g), &gr.basis(x)), gr.basis(x).scale(&Scalar::from_integer(-1)));
    assert_eq!(coaction_in(&gr, &gr.basis(x)), Tensor::from_slots(vec![g, x]));
    assert_eq!(coaction_in(&gr, &gr.unit), Tensor::from_slots(vec![0, 0]));

    let r = compute_r(&gr).unwrap();
    assert_eq!(r.dim(), 2);
    let rx = idx(&r.algebra, "x");
    // (ε⊗id)δ = id
    for j in 0..r.dim() {
        let back: Element = r
            .coaction_of(&LinComb::basis(j))
            .iter()
            .map(|(k, c)| (k[1], c * &gr.counit[k[0]]))
            .collect();
        assert_eq!(back, LinComb::basis(j));
    }
    assert_eq!(
        r.ad_action(&gr.basis(g), &LinComb::basis(rx)).unwrap(),
        LinComb::term(rx, Scalar::from_integer(-1))
    );
    assert_eq!(
        r.braiding_r(&LinComb::basis(rx), &LinComb::basis(rx)),
        Tensor::from_terms([(vec![rx, rx], Scalar::from_integer(-1))])
    );
    assert!(braid_check(&r.algebra.braiding));
    assert!(is_symmetric(&r.algebra.braiding));
}

#[test]
fn centrality_on_sweedler() {
    let gr = sweedler_gr();
    let g = idx(&gr, "g");
    assert!(!is_central(&gr, &[gr.unit.clone(), gr.basis(g)]));
    let pi = |i: usize| projection_pi(&gr, &gr.basis(i)).unwrap();
    assert!(!is_cocentral(&gr, pi));
    let r = compute_r(&gr).unwrap();
    let rep = check_braiding_collapse(&r);
    assert_eq!(rep.status, CollapseStatus::ConditionalVacuous);
    assert!(!rep.c_r_equals_c);
    assert!(rep.witness.is_some());
}

#[test]
fn identity_on_commutative_algebra_is_central() {
    let h = corpus::polynomial(4);
    let all: Vec<Element> = (0..h.dim()).map(|i| h.basis(i)).collect();
    assert!(is_central(&h, &all));
}

#[test]
fn taft_coinvariants() {
    let gr = graded(&taft3(), &["1", "g", "g^2"]);
    let r = compute_r(&gr).unwrap();
    assert_eq!(r.dim(), 3);
    assert_eq!(r.algebra.grading.as_deref(), Some(&[0, 1, 2][..]));
    let x = idx(&r.algebra, "x");
    let zeta = Scalar::root_of_unity(3, 1);
    assert_eq!(
        r.braiding_r(&LinComb::basis(x), &LinComb::basis(x)),
        Tensor::from_terms([(vec![x, x], zeta)])
    );
    assert!(!is_symmetric(&r.algebra.braiding));
    assert!(braid_check(&r.algebra.braiding));
    assert!(bosonization_check(&r));
    let total: usize = bosonization_degrees(&r).iter().map(|b| b.rank).sum();
    assert_eq!(total, 9);
}

#[test]
fn unit_subalgebra_gives_gr_itself() {
    let h = corpus::super_line(4);
    let gr = graded(&h, &["1"]);
    let r = compute_r(&gr).unwrap();
    assert_eq!(r.dim(), gr.dim());
    // Δ_R = Δ and c_R = c after lifting
    for j in 0..r.dim() {
        let lifted = r.lift(j);
        let mut delta_r = Tensor::zero();
        for (k, c) in r.algebra.comult[j].iter() {
            delta_r.add_scaled(&Tensor::product_of(&[&r.lift(k[0]), &r.lift(k[1])]), c);
        }
        assert_eq!(delta_r, gr.coproduct(&lifted));
        assert_eq!(r.coaction_of(&LinComb::basis(j)), Tensor::from_slots(vec![0, j]));
    }
    let rep = check_braiding_collapse(&r);
    assert_eq!(rep.status, CollapseStatus::Confirmed);
    assert!(rep.inclusion_central);
    assert!(bosonization_check(&r));
}

#[test]
fn central_subalgebra_collapses() {
    let e = central_k_entry();
    let ladder = hopf_filtration(&e.algebra, &e.sub).unwrap();
    let gr = associated_graded(&e.algebra, &ladder).unwrap();
    let r = compute_r(&gr).unwrap();
    let rep = check_braiding_collapse(&r);
    assert!(rep.inclusion_central);
    assert_eq!(rep.status, CollapseStatus::Confirmed);
    assert!(rep.graded_morphism_identity);
    // the restricted braiding is the flip
    for i in 0..r.dim() {
        for j in 0..r.dim() {
            assert_eq!(
                r.braiding_r(&LinComb::basis(i), &LinComb::basis(j)),
                Tensor::from_slots(vec![j, i])
            );
        }
    }
}

#[test]
fn the_enveloping_algebra_over_x_is_not_central() {
    let h = corpus::solvable_enveloping(4);
    let gr = graded(&h, &["1", "x", "x^2", "x^3", "x^4"]);
    let k: Vec<Element> = (0..gr.dim())
        .filter(|&i| gr.grading.as_ref().unwrap()[i] == 0)
        .map(|i| gr.basis(i))
        .collect();
    assert!(!is_central(&gr, &k));
}
