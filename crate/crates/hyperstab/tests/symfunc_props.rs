use hyperstab::partition::{partitions_up_to, Partition};
use hyperstab::symfunc::{Basis, GradedElement, SymFunc, Window};
use hyperstab::Q;
use num_bigint::BigInt;
use proptest::prelude::*;

const A: usize = 5;
const Z: i64 = 4;

fn basis() -> impl Strategy<Value = Basis> {
    prop::sample::select(vec![Basis::PowerSum, Basis::Schur, Basis::Complete, Basis::Elementary, Basis::Monomial])
}

fn small_q() -> impl Strategy<Value = Q> {
    (-3i64..=3, 1i64..=3).prop_map(|(n, d)| Q::new(BigInt::from(n), BigInt::from(d)))
}

fn symfunc(max_arity: usize) -> impl Strategy<Value = SymFunc> {
    symfunc_known_to(max_arity, max_arity)
}

/// Terms of arity ≤ `terms_arity`, exact up to `max_arity`.
fn symfunc_known_to(terms_arity: usize, max_arity: usize) -> impl Strategy<Value = SymFunc> {
    let parts = partitions_up_to(terms_arity);
    (basis(), prop::collection::vec((prop::sample::select(parts), small_q()), 0..5))
        .prop_map(move |(b, terms)| SymFunc::from_terms(b, max_arity, terms))
}

/// Elements with no term at (z⁰, ∅), so they lie in the domain of Exp.
fn graded() -> impl Strategy<Value = GradedElement> {
    let parts = partitions_up_to(A);
    let w = Window::new(0, Z, A);
    (basis(), prop::collection::vec((0..=2i64, prop::sample::select(parts), small_q()), 0..4)).prop_map(
        move |(b, terms)| {
            let terms = terms.into_iter().filter(|(z, p, _)| *z > 0 || !p.is_empty());
            GradedElement::from_terms(b, w, terms)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn basis_round_trip(f in symfunc(5), b in basis()) {
        let back = f.convert_basis(b).convert_basis(f.basis());
        prop_assert_eq!(back, f);
    }

    #[test]
    fn omega_is_an_involution(f in symfunc(5)) {
        prop_assert!(f.omega().omega().same_element(&f));
    }

    #[test]
    fn adams_is_multiplicative(f in symfunc(3), g in symfunc(3), n in 1u32..3) {
        let lhs = f.multiply(&g).adams(n);
        let rhs = f.adams(n).multiply(&g.adams(n));
        prop_assert!(lhs.truncate(6).same_element(&rhs.truncate(6)));
    }

    #[test]
    fn plethysm_is_associative(f in symfunc_known_to(2, 20), g in symfunc_known_to(2, 20), x in graded()) {
        let f = f.add(&SymFunc::constant(-f.constant_term(), 20));
        let g = g.add(&SymFunc::constant(-g.constant_term(), 20));
        let lhs = x.plethysm_by(&f.plethysm(&g).unwrap()).unwrap();
        let rhs = x.plethysm_by(&g).unwrap().plethysm_by(&f).unwrap();
        prop_assert!(lhs.same_element(&rhs));
    }

    #[test]
    fn exp_and_log_are_inverse(x in graded()) {
        let e = x.pleth_exp().unwrap();
        prop_assert!(e.pleth_log().unwrap().same_element(&x));
        let one_plus = GradedElement::one(x.window()).add(&x);
        prop_assert!(one_plus.pleth_log().unwrap().pleth_exp().unwrap().same_element(&one_plus));
    }

    #[test]
    fn exp_is_additive(x in graded(), y in graded()) {
        let lhs = x.add(&y).pleth_exp().unwrap();
        let rhs = x.pleth_exp().unwrap().mul(&y.pleth_exp().unwrap());
        prop_assert!(lhs.same_element(&rhs));
    }

    #[test]
    fn schur_basis_is_orthonormal(a in prop::sample::select(partitions_up_to(5)), b in prop::sample::select(partitions_up_to(5))) {
        let ip = SymFunc::s(a.clone(), 5).inner_product(&SymFunc::s(b.clone(), 5));
        let want = if a == b { 1 } else { 0 };
        prop_assert_eq!(ip, Q::from_integer(BigInt::from(want)));
    }

    #[test]
    fn json_round_trip(x in graded()) {
        prop_assert_eq!(GradedElement::from_json(&x.to_json()).unwrap(), x);
    }
}

#[test]
fn empty_partition_converts_to_itself() {
    for b in [Basis::PowerSum, Basis::Schur, Basis::Complete, Basis::Elementary, Basis::Monomial] {
        let one = SymFunc::basis_element(b, Partition::empty(), 3);
        assert!(one.same_element(&SymFunc::one(3)));
    }
}
