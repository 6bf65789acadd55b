#![allow(dead_code)]

use proptest::prelude::*;
use selkit_core::semantics::{enumerate_interpretations, Interpretation, DEFAULT_ENUMERATION_CEILING};
use selkit_core::{Axiom, Concept, ConceptName, Ontology, Rational, RoleName};

pub fn name(s: &str) -> ConceptName {
    ConceptName::new(s).unwrap()
}

pub fn role(s: &str) -> RoleName {
    RoleName::new(s).unwrap()
}

const NAMES: [&str; 3] = ["A", "B", "C"];

pub fn literal(n_names: usize, negation: bool) -> BoxedStrategy<Concept> {
    let atoms = prop::sample::select(NAMES[..n_names].to_vec());
    let mut options = vec![(1, Just(Concept::Top).boxed()), (3, atoms.clone().prop_map(|a| Concept::atom(&name(a))).boxed())];
    if negation {
        options.push((2, atoms.prop_map(|a| Concept::neg(&name(a))).boxed()));
    }
    prop::strategy::Union::new_weighted(options).boxed()
}

pub fn concept(n_names: usize, negation: bool, depth: u32) -> BoxedStrategy<Concept> {
    literal(n_names, negation)
        .prop_recursive(depth, 8, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Concept::and(l, r)),
                inner.prop_map(|f| Concept::exists(&role("r"), f)),
            ]
        })
        .boxed()
}

pub fn gci_ontology(n_names: usize, negation: bool, depth: u32, max_axioms: usize) -> BoxedStrategy<Ontology> {
    let c = concept(n_names, negation, depth);
    prop::collection::vec((c.clone(), c).prop_map(|(l, r)| Axiom::gci(l, r)), 1..=max_axioms)
        .prop_map(|axioms| Ontology::new(axioms).unwrap())
        .boxed()
}

pub fn normal_axiom(n_names: usize, with_role: bool) -> BoxedStrategy<Axiom> {
    let l = || literal(n_names, true);
    let shapes = if with_role { 4 } else { 2 };
    (0..shapes, l(), l(), l())
        .prop_map(|(shape, a, b, c)| match shape {
            0 => Axiom::gci(a, b),
            1 => Axiom::gci(Concept::and(a, b), c),
            2 => Axiom::gci(a, Concept::exists(&role("r"), b)),
            _ => Axiom::gci(Concept::exists(&role("r"), b), a),
        })
        .boxed()
}

pub fn normal_ontology(n_names: usize, max_axioms: usize) -> BoxedStrategy<Ontology> {
    prop::collection::vec(normal_axiom(n_names, true), 1..=max_axioms)
        .prop_map(|axioms| Ontology::new(axioms).unwrap())
        .boxed()
}

pub fn bound() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec!["0", "1/4", "1/3", "1/2", "2/3", "3/4", "1"]).prop_map(|s| s.parse().unwrap())
}

/// The smallest model with at most `max_n` elements, by exhaustive enumeration
/// over the ontology's own signature.
pub fn brute_force_model(o: &Ontology, max_n: usize) -> Option<Interpretation> {
    let sig = o.signature();
    let concepts: Vec<ConceptName> = sig.concepts.into_iter().collect();
    let roles: Vec<RoleName> = sig.roles.into_iter().collect();
    (1..=max_n).find_map(|n| {
        enumerate_interpretations(&concepts, &roles, n, DEFAULT_ENUMERATION_CEILING)
            .unwrap()
            .find(|i| i.satisfies_ontology(o).satisfied())
    })
}
