mod common;

use common::*;
use proptest::prelude::*;
use selkit_core::selsearch::{find_model, SearchBudget, SelVerdict};
use selkit_core::{Axiom, Ontology};

fn sel_axiom(n_names: usize, depth: u32, roles: bool) -> BoxedStrategy<Axiom> {
    let c = if roles { concept(n_names, false, depth) } else { and_only(n_names, depth) };
    prop_oneof![
        (c.clone(), c.clone()).prop_map(|(l, r)| Axiom::gci(l, r)),
        (c.clone(), c, bound(), bound()).prop_map(|(x, y, a, b)| {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            Axiom::conditional(x, y, lo, hi).unwrap()
        }),
    ]
    .boxed()
}

fn and_only(n_names: usize, depth: u32) -> BoxedStrategy<selkit_core::Concept> {
    literal(n_names, false)
        .prop_recursive(depth, 6, 2, |inner| (inner.clone(), inner).prop_map(|(l, r)| selkit_core::Concept::and(l, r)))
        .boxed()
}

fn sel_ontology(n_names: usize, depth: u32, roles: bool, max_axioms: usize) -> BoxedStrategy<Ontology> {
    prop::collection::vec(sel_axiom(n_names, depth, roles), 1..=max_axioms)
        .prop_map(|axioms| Ontology::new(axioms).unwrap())
        .boxed()
}

fn agree(o: &Ontology, max_n: usize) -> Result<(), TestCaseError> {
    let verdict = find_model(o, SearchBudget::new(max_n)).unwrap();
    match (verdict, brute_force_model(o, max_n)) {
        (SelVerdict::Found(m), Some(b)) => {
            prop_assert!(m.satisfies_ontology(o).satisfied());
            prop_assert_eq!(m.size(), b.size(), "search and enumeration disagree on the least size");
        }
        (SelVerdict::NoModelUpTo(n), None) => prop_assert_eq!(n, max_n),
        (v, b) => prop_assert!(false, "search {:?} vs enumeration {:?} on\n{}", v, b.map(|m| m.size()), o),
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn agrees_with_enumeration_without_roles(o in sel_ontology(3, 2, false, 4)) {
        agree(&o, 3)?;
    }

    #[test]
    fn agrees_with_enumeration_with_a_role(o in sel_ontology(2, 2, true, 3)) {
        agree(&o, 3)?;
    }
}

#[test]
fn deterministic_models() {
    let o = Ontology::new(vec![
        Axiom::conditional(
            selkit_core::Concept::atom(&name("A")),
            selkit_core::Concept::Top,
            "1/3".parse().unwrap(),
            "2/3".parse().unwrap(),
        )
        .unwrap(),
        Axiom::gci(selkit_core::Concept::atom(&name("A")), selkit_core::Concept::exists(&role("r"), selkit_core::Concept::atom(&name("B")))),
    ])
    .unwrap();
    let first = find_model(&o, SearchBudget::new(4)).unwrap();
    for _ in 0..5 {
        assert_eq!(find_model(&o, SearchBudget::new(4)).unwrap(), first);
    }
}
