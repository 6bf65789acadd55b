//! Polynomial reduction from EL¬ consistency to Statistical EL consistency.
//!
//! Every concept name `A` of the normalized source gets two fresh names
//! `A__plus` and `A__minus`, and a marker name `R` gets `R__plus` and
//! `R__minus`. The correctness part `O_corr` forces each decorated pair to be
//! disjoint and to split the domain in half:
//!
//! ```text
//! (A__plus | top)[1/2, 1/2]   (A__minus | top)[1/2, 1/2]   (A__plus | A__minus)[0, 0]
//! ```
//!
//! The translation part `O_tr` rewrites each normal-form GCI literal-wise:
//! `A ↦ A__plus ⊓ R__plus`, `¬A ↦ A__minus ⊓ R__plus`, `⊤ ↦ R__plus`. The
//! `R__plus` half of any model of `O_corr ∪ O_tr` carries a model of the
//! source ([`project_model`]); conversely doubling a model of the source and
//! labelling the copies yields a model of the reduction ([`lift_model`]).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::normalform::{is_normal_form, normalize, NameMap};
use crate::rational::Rational;
use crate::semantics::Interpretation;
use crate::syntax::{gci_as_conditional, Axiom, Concept, ConceptName, Fragment, Literal, Ontology};
use crate::{Error, Result};

/// The base signature and its decorated copies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedSig {
    base: Vec<ConceptName>,
    marker: ConceptName,
}

fn decorate(name: &ConceptName, suffix: &str) -> ConceptName {
    ConceptName::generated(&format!("{name}__{suffix}")).expect("suffixing keeps a valid token")
}

impl DecoratedSig {
    /// The marker is `R` unless the base already uses that name, in which
    /// case the first free name among `R0, R1, …` is taken.
    pub fn new<I: IntoIterator<Item = ConceptName>>(base: I) -> Result<Self> {
        let mut base: Vec<ConceptName> = base.into_iter().collect();
        base.sort();
        base.dedup();
        let marker = core::iter::once(String::from("R"))
            .chain((0..).map(|i| format!("R{i}")))
            .map(|s| ConceptName::generated(&s).expect("valid token"))
            .find(|m| !base.contains(m))
            .expect("infinitely many candidates");
        let sig = DecoratedSig { base, marker };

        let mut seen: Vec<ConceptName> = sig.base.clone();
        for name in sig.marked() {
            for d in [sig.plus(name), sig.minus(name)] {
                if seen.contains(&d) {
                    return Err(Error::DecoratedCollision(d.as_str().into()));
                }
                seen.push(d);
            }
        }
        Ok(sig)
    }

    pub fn base(&self) -> &[ConceptName] {
        &self.base
    }

    pub fn marker(&self) -> &ConceptName {
        &self.marker
    }

    /// The marker followed by the base names.
    pub fn marked(&self) -> impl Iterator<Item = &ConceptName> {
        core::iter::once(&self.marker).chain(&self.base)
    }

    pub fn plus(&self, name: &ConceptName) -> ConceptName {
        decorate(name, "plus")
    }

    pub fn minus(&self, name: &ConceptName) -> ConceptName {
        decorate(name, "minus")
    }

    pub fn real_plus(&self) -> ConceptName {
        self.plus(&self.marker)
    }

    pub fn real_minus(&self) -> ConceptName {
        self.minus(&self.marker)
    }

    pub fn is_decorated(&self, name: &ConceptName) -> bool {
        self.marked().any(|m| *name == self.plus(m) || *name == self.minus(m))
    }
}

/// `(A+|⊤)[1/2,1/2]`, `(A−|⊤)[1/2,1/2]` and `(A+|A−)[0,0]` for the marker and
/// every base name, in that order.
pub fn build_o_corr(sig: &DecoratedSig) -> Ontology {
    let mut axioms = Vec::new();
    for name in sig.marked() {
        let plus = Concept::Atom(sig.plus(name));
        let minus = Concept::Atom(sig.minus(name));
        let half = |c: &Concept| Axiom::Conditional {
            concept: c.clone(),
            given: Concept::Top,
            lo: Rational::HALF,
            hi: Rational::HALF,
        };
        axioms.push(half(&plus));
        axioms.push(half(&minus));
        axioms.push(Axiom::Conditional {
            concept: plus,
            given: minus,
            lo: Rational::ZERO,
            hi: Rational::ZERO,
        });
    }
    Ontology::new(axioms).expect("at least the marker's three conditionals")
}

pub fn translate_literal(l: &Literal, sig: &DecoratedSig) -> Result<Concept> {
    let real = Concept::Atom(sig.real_plus());
    let check = |a: &ConceptName| {
        if sig.base.contains(a) {
            Ok(())
        } else {
            Err(Error::OutsideBase(a.as_str().into()))
        }
    };
    Ok(match l {
        Literal::Top => real,
        Literal::Atom(a) => {
            check(a)?;
            Concept::and(Concept::Atom(sig.plus(a)), real)
        }
        Literal::NegAtom(a) => {
            check(a)?;
            Concept::and(Concept::Atom(sig.minus(a)), real)
        }
    })
}

fn translate(c: &Concept, sig: &DecoratedSig) -> Result<Concept> {
    match c {
        Concept::And(a, b) => Ok(Concept::and(translate(a, sig)?, translate(b, sig)?)),
        Concept::Exists(r, f) => Ok(Concept::exists(r, translate(f, sig)?)),
        lit => translate_literal(&lit.as_literal().expect("literal"), sig),
    }
}

/// How translated GCIs are written out.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Embedding {
    #[default]
    Gci,
    /// `C ⊑ D` as the equivalent `(D|C)[1,1]`.
    Conditional,
}

/// Translates every axiom of a normal-form ontology, keeping axiom order.
pub fn build_o_tr(o: &Ontology, sig: &DecoratedSig) -> Result<Ontology> {
    build_o_tr_with(o, sig, Embedding::Gci)
}

pub fn build_o_tr_with(o: &Ontology, sig: &DecoratedSig, embedding: Embedding) -> Result<Ontology> {
    if !is_normal_form(o)? {
        let bad = o
            .axioms()
            .iter()
            .position(|a| !crate::normalform::is_normal_axiom(a))
            .unwrap_or(0);
        return Err(Error::NotNormalForm(bad));
    }
    let mut axioms = Vec::with_capacity(o.len());
    for ax in o.axioms() {
        let Axiom::Gci { lhs, rhs } = ax else {
            unreachable!("normal form has GCIs only")
        };
        let (lhs, rhs) = (translate(lhs, sig)?, translate(rhs, sig)?);
        axioms.push(match embedding {
            Embedding::Gci => Axiom::gci(lhs, rhs),
            Embedding::Conditional => gci_as_conditional(&lhs, &rhs)?,
        });
    }
    Ontology::new(axioms)
}

fn build_o_red(o_corr: &Ontology, o_tr: &Ontology) -> Ontology {
    let axioms = o_corr.axioms().iter().chain(o_tr.axioms()).cloned().collect();
    Ontology::new(axioms).expect("non-empty, negation-free")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput {
    /// The normalized input the reduction was built from.
    pub source: Ontology,
    /// Names introduced while normalizing.
    pub names: NameMap,
    pub sig: DecoratedSig,
    pub o_corr: Ontology,
    pub o_tr: Ontology,
    pub o_red: Ontology,
}

impl ReductionOutput {
    pub fn lift(&self, i: &Interpretation) -> Result<Interpretation> {
        lift_model(i, &self.source, &self.sig)
    }

    pub fn project(&self, j: &Interpretation) -> Result<Interpretation> {
        project_model(j, &self.source, &self.sig)
    }
}

/// Every number occurring in a conditional of `o`, bounds in order.
pub fn conditional_numbers(o: &Ontology) -> Vec<Rational> {
    o.axioms()
        .iter()
        .filter_map(|ax| match ax {
            Axiom::Conditional { lo, hi, .. } => Some([*lo, *hi]),
            Axiom::Gci { .. } => None,
        })
        .flatten()
        .collect()
}

pub fn reduce(o_hard: &Ontology) -> Result<ReductionOutput> {
    reduce_with(o_hard, Embedding::Gci)
}

/// Normalizes the input, then assembles `O_red = O_corr ∪ O_tr` over the
/// concept names of the normalized ontology.
pub fn reduce_with(o_hard: &Ontology, embedding: Embedding) -> Result<ReductionOutput> {
    o_hard.require_fragment(&[Fragment::El, Fragment::ElNeg], "EL or ELneg")?;
    let (source, names) = normalize(o_hard)?;
    let sig = DecoratedSig::new(source.signature().concepts)?;
    let o_corr = build_o_corr(&sig);
    let o_tr = build_o_tr_with(&source, &sig, embedding)?;
    let o_red = build_o_red(&o_corr, &o_tr);
    debug_assert!(conditional_numbers(&o_red)
        .iter()
        .all(|q| q.is_zero() || q.is_one() || *q == Rational::HALF));
    Ok(ReductionOutput {
        source,
        names,
        sig,
        o_corr,
        o_tr,
        o_red,
    })
}

fn reduced_ontology(o_hard: &Ontology, sig: &DecoratedSig) -> Result<Ontology> {
    Ok(build_o_red(&build_o_corr(sig), &build_o_tr(o_hard, sig)?))
}

/// Doubles a model of the normal-form source into a model of the reduction.
///
/// Each element `d` gets a copy `d'`. `A__plus` holds the members of `A` and
/// the copies of the non-members, `A__minus` the rest; `R__plus` is the
/// original half and `R__minus` the copies. Roles are kept on the originals.
/// Concept names outside the base are interpreted as the original half.
pub fn lift_model(i: &Interpretation, o_hard: &Ontology, sig: &DecoratedSig) -> Result<Interpretation> {
    let o_red = reduced_ontology(o_hard, sig)?;
    if let Some(axiom) = i.satisfies_ontology(o_hard).first_violation() {
        return Err(Error::PreconditionViolated {
            axiom,
            against: "source",
        });
    }
    let n = i.size();
    let domain = i
        .domain()
        .iter()
        .flat_map(|d| [d.clone(), format!("{d}'")])
        .collect();
    let mut j = Interpretation::new(domain)?;
    let original = |k: usize| 2 * k;
    let copy = |k: usize| 2 * k + 1;

    for a in sig.base() {
        let ext = i.concept(a).cloned().unwrap_or_else(|| i.empty_set());
        let plus = (0..n).map(|k| if ext.contains(k) { original(k) } else { copy(k) });
        let minus = (0..n).map(|k| if ext.contains(k) { copy(k) } else { original(k) });
        j.set_concept(sig.plus(a), plus);
        j.set_concept(sig.minus(a), minus);
    }
    j.set_concept(sig.real_plus(), (0..n).map(original));
    j.set_concept(sig.real_minus(), (0..n).map(copy));
    for (name, _) in i.concepts() {
        if !sig.base().contains(name) && !sig.is_decorated(name) {
            j.set_concept(name.clone(), (0..n).map(original));
        }
    }
    for role in i.role_names() {
        j.declare_role(role.clone());
        for (d, e) in i.role_pairs(role) {
            j.add_edge(role, original(d), original(e));
        }
    }

    if let Some(axiom) = j.satisfies_ontology(&o_red).first_violation() {
        return Err(Error::ConstructionFailed {
            axiom,
            against: "reduced",
        });
    }
    Ok(j)
}

/// Restricts a model of the reduction to its `R__plus` part, reading `A` off
/// `A__plus`. Other non-decorated concept names become the whole new domain.
pub fn project_model(j: &Interpretation, o_hard: &Ontology, sig: &DecoratedSig) -> Result<Interpretation> {
    let o_red = reduced_ontology(o_hard, sig)?;
    if let Some(axiom) = j.satisfies_ontology(&o_red).first_violation() {
        return Err(Error::PreconditionViolated {
            axiom,
            against: "reduced",
        });
    }
    let real = j.concept(&sig.real_plus()).cloned().unwrap_or_else(|| j.empty_set());
    if real.is_clear() {
        return Err(Error::EmptyRealPart);
    }
    let kept: Vec<usize> = real.ones().collect();
    let mut i = Interpretation::new(kept.iter().map(|&d| j.domain()[d].clone()).collect())?;
    let m = kept.len();

    for a in sig.base() {
        let plus = j.concept(&sig.plus(a)).cloned().unwrap_or_else(|| j.empty_set());
        i.set_concept(a.clone(), (0..m).filter(|&k| plus.contains(kept[k])));
    }
    for (name, _) in j.concepts() {
        if !sig.base().contains(name) && !sig.is_decorated(name) {
            i.set_concept(name.clone(), 0..m);
        }
    }
    for role in j.role_names() {
        i.declare_role(role.clone());
        for (x, &d) in kept.iter().enumerate() {
            for (y, &e) in kept.iter().enumerate() {
                if j.has_edge(role, d, e) {
                    i.add_edge(role, x, y);
                }
            }
        }
    }

    if let Some(axiom) = i.satisfies_ontology(o_hard).first_violation() {
        return Err(Error::ConstructionFailed {
            axiom,
            against: "source",
        });
    }
    Ok(i)
}
