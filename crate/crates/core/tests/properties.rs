//! Randomized invariants: ring axioms over the two-element field, normal
//! form idempotence, order-independence of Hilbert functions, and the exact
//! text round-trip.

use std::sync::Arc;

use proptest::prelude::*;

use dold::flag::{flag_presentation, grassmann_presentation, sphere_bundle_presentation, FlagType};
use dold::gf2::{text, GradedPoly, Monomial, VariableTable};
use dold::groebner::{
    buchberger, hilbert_function_of_basis, normal_form, BaseDim, MonomialOrder, PresentedAlgebra,
};

fn table() -> Arc<VariableTable> {
    VariableTable::new([("y", 1), ("c̃1", 2), ("c̃2", 4)]).unwrap()
}

fn arb_poly(t: Arc<VariableTable>) -> impl Strategy<Value = GradedPoly> {
    let nvars = t.len();
    prop::collection::vec(prop::collection::vec(0u32..4, nvars), 0..8).prop_map(move |exps| {
        GradedPoly::from_monomials(t.clone(), exps.into_iter().map(Monomial::from_exps).collect())
    })
}

proptest! {
    #[test]
    fn ring_axioms(
        a in arb_poly(table()),
        b in arb_poly(table()),
        c in arb_poly(table()),
    ) {
        // commutativity and associativity of both operations
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(
            a.add(&b).unwrap().add(&c).unwrap(),
            a.add(&b.add(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
        // distributivity
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        // characteristic 2: p + p = 0 and squaring is the Frobenius
        prop_assert!(a.add(&a).unwrap().is_zero());
        prop_assert_eq!(a.mul(&a).unwrap(), a.frobenius());
    }

    #[test]
    fn text_round_trip(p in arb_poly(table())) {
        let rendered = text::render(&p);
        let parsed = text::parse(p.table(), &rendered).unwrap();
        prop_assert_eq!(parsed, p);
    }

    #[test]
    fn normal_form_idempotent(p in arb_poly(table())) {
        let t = table();
        let c1sq = GradedPoly::variable(t.clone(), 1).frobenius();
        let c2 = GradedPoly::variable(t.clone(), 2);
        let alg = PresentedAlgebra::new(
            t,
            vec![c1sq.add(&c2).unwrap()],
            Some(dold::groebner::Truncation { var: 0, power: 4 }),
            "",
        ).unwrap();
        let gb = buchberger(&alg, alg.default_order());
        let once = normal_form(&p, &gb).unwrap();
        let twice = normal_form(&once, &gb).unwrap();
        prop_assert_eq!(&once, &twice);
        // p - nf(p) is in the ideal
        let diff = p.add(&once).unwrap();
        prop_assert!(normal_form(&diff, &gb).unwrap().is_zero());
    }
}

/// Hilbert functions do not depend on the monomial order: run both orders
/// over every corpus presentation.
#[test]
fn hilbert_is_order_independent_on_the_corpus() {
    let mut algebras: Vec<PresentedAlgebra> = Vec::new();
    for (n, k) in [(2usize, 1usize), (3, 1), (4, 2), (5, 2)] {
        algebras.push(
            grassmann_presentation(n, k, BaseDim::Finite(2))
                .unwrap()
                .chern,
        );
    }
    algebras.push(
        flag_presentation(&FlagType::new(vec![1, 1, 1]).unwrap(), BaseDim::Finite(2))
            .unwrap()
            .chern,
    );
    algebras.push(sphere_bundle_presentation(2, BaseDim::Finite(3)).unwrap());
    algebras.push(sphere_bundle_presentation(1, BaseDim::Finite(2)).unwrap());

    for alg in &algebras {
        let grevlex = buchberger(alg, alg.default_order());
        let grlex = buchberger(alg, MonomialOrder::grlex(alg.table()));
        let a = hilbert_function_of_basis(&grevlex, 14);
        let b = hilbert_function_of_basis(&grlex, 14);
        assert_eq!(a, b, "{}", alg.metadata());
    }
}
