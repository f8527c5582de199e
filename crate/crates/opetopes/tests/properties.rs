//! Property tests for the algebraic core and the document layer.

use opetopes::chain::Chain;
use opetopes::ident::Ident;
use opetopes::io::{parse_complex, parse_sequence, serialize_complex, serialize_sequence};
use opetopes::network::validate_sequence;
use opetopes::samples;
use opetopes::transduce::complex_of;
use opetopes::random_opetope;
use proptest::prelude::*;

/// A random chain of the given dimension over the sample complex.
fn arb_chain(dim: usize) -> impl Strategy<Value = Chain> {
    let ids: Vec<Ident> = samples::opetope5_complex()
        .ids_of_dim(dim)
        .cloned()
        .collect();
    let len = ids.len();
    prop::collection::vec(-4i64..=4, len).prop_map(move |coeffs| {
        Chain::from_terms(dim, ids.iter().cloned().zip(coeffs))
    })
}

proptest! {
    #[test]
    fn split_reassembles_the_chain(dim in 0usize..=5, coeff_seed in prop::collection::vec(-4i64..=4, 10)) {
        let k = samples::opetope5_complex();
        let ids: Vec<Ident> = k.ids_of_dim(dim).cloned().collect();
        let chain = Chain::from_terms(dim, ids.iter().cloned().zip(coeff_seed));
        let (neg, pos) = chain.split();
        prop_assert!(neg.is_nonnegative() && pos.is_nonnegative());
        prop_assert!(neg.support().all(|t| !pos.contains(t)));
        prop_assert_eq!(pos.sub(&neg), chain);
    }

    #[test]
    fn boundary_is_linear(c1 in arb_chain(3), c2 in arb_chain(3)) {
        let k = samples::opetope5_complex();
        let lhs = k.boundary(&c1.add(&c2)).unwrap();
        let rhs = k.boundary(&c1).unwrap().add(&k.boundary(&c2).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn augment_is_linear(c1 in arb_chain(0), c2 in arb_chain(0)) {
        let k = samples::opetope5_complex();
        let lhs = k.augment(&c1.add(&c2)).unwrap();
        let rhs = k.augment(&c1).unwrap() + k.augment(&c2).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn boundary_of_boundary_vanishes(c in arb_chain(4)) {
        let k = samples::opetope5_complex();
        let dd = k.boundary(&k.boundary(&c).unwrap()).unwrap();
        prop_assert!(dd.is_zero());
    }

    #[test]
    fn natural_order_is_a_total_order(a in "[A-Za-z0-9_.]{1,8}", b in "[A-Za-z0-9_.]{1,8}", c in "[A-Za-z0-9_.]{1,8}") {
        let (a, b, c) = (Ident::new(a), Ident::new(b), Ident::new(c));
        // antisymmetry
        prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
        // transitivity through a sort
        let mut v = vec![a, b, c];
        v.sort();
        prop_assert!(v[0] <= v[1] && v[1] <= v[2] && v[0] <= v[2]);
    }

    #[test]
    fn generated_opetopes_round_trip_through_documents(seed in any::<u64>(), max_dim in 0usize..=4, budget in 1usize..=40) {
        let seq = random_opetope(seed, max_dim, budget);
        prop_assert!(seq.total_edges() <= budget.max(1));
        prop_assert!(validate_sequence(&seq, true).is_valid());

        let text = serialize_sequence("prop", &seq);
        let (_, parsed) = parse_sequence(&text).unwrap();
        prop_assert_eq!(&parsed, &seq);
        prop_assert_eq!(serialize_sequence("prop", &parsed), text);

        let k = complex_of(&seq).unwrap();
        let ktext = serialize_complex("prop", &k);
        let (_, kparsed) = parse_complex(&ktext).unwrap();
        prop_assert_eq!(&kparsed, &k);
        prop_assert_eq!(serialize_complex("prop", &kparsed), ktext);
    }
}
