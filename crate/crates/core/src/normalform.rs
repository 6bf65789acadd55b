//! Renaming into normal form.
//!
//! An EL¬ ontology is in normal form when every GCI has one of the shapes
//!
//! 1. `L1 ⊑ L2`
//! 2. `L1 ⊓ L2 ⊑ L3`
//! 3. `L1 ⊑ ∃r.L2`
//! 4. `∃r.L2 ⊑ L1`
//!
//! where each `Li` is `⊤`, a concept name or a negated concept name.
//! [`normalize`] introduces fresh names `X__1, X__2, …` for complex subterms
//! until every axiom has one of these shapes. Each fresh name abbreviates a
//! subterm of the input, recorded in the returned [`NameMap`]; interpreting it
//! as that subterm turns any model of the input into a model of the output.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::semantics::Interpretation;
use crate::syntax::{Axiom, Concept, ConceptName, Fragment, Ontology};
use crate::Result;

/// Fresh names introduced by [`normalize`], each mapped to the concept it
/// abbreviates. Iteration follows introduction order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NameMap {
    entries: Vec<(ConceptName, Concept)>,
}

impl NameMap {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ConceptName, &Concept)> {
        self.entries.iter().map(|(n, c)| (n, c))
    }

    pub fn get(&self, name: &ConceptName) -> Option<&Concept> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    /// Interprets every generated name as the extension of the concept it
    /// abbreviates. Abbreviated concepts never mention generated names, so
    /// the order of evaluation does not matter.
    pub fn extend_model(&self, model: &Interpretation) -> Interpretation {
        let mut out = model.clone();
        for (name, concept) in &self.entries {
            let ext = model.extension(concept);
            out.set_concept(name.clone(), ext.ones());
        }
        out
    }
}

fn is_exists_of_literal(c: &Concept) -> bool {
    matches!(c, Concept::Exists(_, f) if f.is_literal())
}

fn is_normal_gci(lhs: &Concept, rhs: &Concept) -> bool {
    match lhs {
        l if l.is_literal() => rhs.is_literal() || is_exists_of_literal(rhs),
        Concept::And(a, b) => a.is_literal() && b.is_literal() && rhs.is_literal(),
        Concept::Exists(_, f) => f.is_literal() && rhs.is_literal(),
        _ => false,
    }
}

/// Whether the axiom is a GCI of one of the four normal-form shapes.
pub fn is_normal_axiom(ax: &Axiom) -> bool {
    match ax {
        Axiom::Gci { lhs, rhs } => is_normal_gci(lhs, rhs),
        Axiom::Conditional { .. } => false,
    }
}

pub fn is_normal_form(o: &Ontology) -> Result<bool> {
    o.require_fragment(&[Fragment::El, Fragment::ElNeg], "EL or ELneg")?;
    Ok(o.axioms().iter().all(is_normal_axiom))
}

struct Normalizer {
    taken: BTreeSet<ConceptName>,
    counter: usize,
    names: NameMap,
    out: Vec<Axiom>,
    seen: BTreeSet<Axiom>,
}

impl Normalizer {
    fn fresh(&mut self, abbreviates: &Concept) -> Concept {
        loop {
            self.counter += 1;
            let name = ConceptName::generated(&format!("X__{}", self.counter)).expect("valid token");
            if self.taken.insert(name.clone()) {
                self.names.entries.push((name.clone(), abbreviates.clone()));
                return Concept::Atom(name);
            }
        }
    }

    fn emit(&mut self, lhs: Concept, rhs: Concept) {
        let ax = Axiom::gci(lhs, rhs);
        if self.seen.insert(ax.clone()) {
            self.out.push(ax);
        }
    }

    fn process(&mut self, lhs: Concept, rhs: Concept) {
        if is_normal_gci(&lhs, &rhs) {
            return self.emit(lhs, rhs);
        }
        if rhs == Concept::Top {
            return;
        }
        if lhs.is_literal() {
            match rhs {
                Concept::And(c, d) => {
                    self.process(lhs.clone(), *c);
                    self.process(lhs, *d);
                }
                Concept::Exists(role, filler) => {
                    let x = self.fresh(&filler);
                    self.emit(lhs, Concept::Exists(role, x.clone().into()));
                    self.process(x, *filler);
                }
                _ => unreachable!("literal ⊑ literal is normal"),
            }
            return;
        }
        if !rhs.is_literal() {
            let x = self.fresh(&lhs);
            self.process(lhs, x.clone());
            return self.process(x, rhs);
        }
        match lhs {
            Concept::And(c, d) => {
                if !c.is_literal() {
                    let x = self.fresh(&c);
                    self.process(*c, x.clone());
                    self.process(Concept::And(x.into(), d), rhs);
                } else {
                    let x = self.fresh(&d);
                    self.process(*d, x.clone());
                    self.process(Concept::And(c, x.into()), rhs);
                }
            }
            Concept::Exists(role, filler) => {
                let x = self.fresh(&filler);
                self.process(*filler, x.clone());
                self.process(Concept::Exists(role, x.into()), rhs);
            }
            _ => unreachable!("literal lhs handled above"),
        }
    }
}

/// Rewrites an EL or EL¬ ontology into normal form.
///
/// Rules, applied until every axiom is normal (`L` a literal, `Ĉ` non-literal,
/// `X` fresh):
///
/// * `Ĉ ⊓ D ⊑ E` becomes `Ĉ ⊑ X`, `X ⊓ D ⊑ E` (likewise for the right conjunct)
/// * `∃r.Ĉ ⊑ D` becomes `Ĉ ⊑ X`, `∃r.X ⊑ D`
/// * `L ⊑ ∃r.Ĉ` becomes `L ⊑ ∃r.X`, `X ⊑ Ĉ`
/// * `L ⊑ C ⊓ D` becomes `L ⊑ C`, `L ⊑ D`
/// * `Ĉ ⊑ D̂` becomes `Ĉ ⊑ X`, `X ⊑ D̂`
/// * non-normal `C ⊑ ⊤` is dropped
///
/// Input that is already normal is returned unchanged. Otherwise duplicates
/// are removed, and an ontology whose axioms were all dropped becomes
/// `⊤ ⊑ ⊤`.
pub fn normalize(o: &Ontology) -> Result<(Ontology, NameMap)> {
    if is_normal_form(o)? {
        return Ok((o.clone(), NameMap::default()));
    }
    let mut n = Normalizer {
        taken: o.signature().concepts,
        counter: 0,
        names: NameMap::default(),
        out: Vec::new(),
        seen: BTreeSet::new(),
    };
    for ax in o.axioms() {
        if let Axiom::Gci { lhs, rhs } = ax {
            n.process(lhs.clone(), rhs.clone());
        }
    }
    if n.out.is_empty() {
        n.out.push(Axiom::gci(Concept::Top, Concept::Top));
    }
    Ok((Ontology::new(n.out)?, n.names))
}
