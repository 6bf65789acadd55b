//! Concepts, axioms and ontologies.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::rational::Rational;
use crate::{Error, Result};

/// Words of the ontology text format that cannot double as names.
pub const KEYWORDS: [&str; 5] = ["top", "ex", "gci", "cond", "in"];

/// Substring marking machine-generated names.
pub const RESERVED: &str = "__";

fn check_token(s: &str) -> Result<()> {
    let mut chars = s.chars();
    let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !KEYWORDS.contains(&s);
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidName(s.to_string()))
    }
}

macro_rules! name_type {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(String);

        impl $name {
            /// Validates a user-supplied name; the reserved `__` is rejected.
            pub fn new(s: &str) -> Result<Self> {
                check_token(s)?;
                if s.contains(RESERVED) {
                    return Err(Error::ReservedName(s.to_string()));
                }
                Ok(Self(s.to_string()))
            }

            /// Validates a name that may carry the reserved `__` marker.
            pub fn generated(s: &str) -> Result<Self> {
                check_token(s)?;
                Ok(Self(s.to_string()))
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }

            pub fn is_generated(&self) -> bool {
                self.0.contains(RESERVED)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }
    };
}

name_type!(
    /// A concept name, e.g. `A`.
    ConceptName
);
name_type!(
    /// A role name, e.g. `r`.
    RoleName
);

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Concept {
    Top,
    Atom(ConceptName),
    NegAtom(ConceptName),
    And(Box<Concept>, Box<Concept>),
    Exists(RoleName, Box<Concept>),
}

impl Concept {
    pub fn atom(name: &ConceptName) -> Self {
        Concept::Atom(name.clone())
    }

    pub fn neg(name: &ConceptName) -> Self {
        Concept::NegAtom(name.clone())
    }

    pub fn and(lhs: Concept, rhs: Concept) -> Self {
        Concept::And(Box::new(lhs), Box::new(rhs))
    }

    pub fn exists(role: &RoleName, filler: Concept) -> Self {
        Concept::Exists(role.clone(), Box::new(filler))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Concept::Top | Concept::Atom(_) | Concept::NegAtom(_))
    }

    pub fn as_literal(&self) -> Option<Literal> {
        match self {
            Concept::Top => Some(Literal::Top),
            Concept::Atom(a) => Some(Literal::Atom(a.clone())),
            Concept::NegAtom(a) => Some(Literal::NegAtom(a.clone())),
            _ => None,
        }
    }

    pub fn has_negation(&self) -> bool {
        match self {
            Concept::Top | Concept::Atom(_) => false,
            Concept::NegAtom(_) => true,
            Concept::And(l, r) => l.has_negation() || r.has_negation(),
            Concept::Exists(_, c) => c.has_negation(),
        }
    }

    /// Nesting depth of constructors; literals have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Concept::Top | Concept::Atom(_) | Concept::NegAtom(_) => 0,
            Concept::And(l, r) => 1 + l.depth().max(r.depth()),
            Concept::Exists(_, c) => 1 + c.depth(),
        }
    }

    /// Symbol count: one per `⊤`, name and connective (`⊓`, `∃`, `¬`).
    pub fn size(&self) -> usize {
        match self {
            Concept::Top | Concept::Atom(_) => 1,
            Concept::NegAtom(_) => 2,
            Concept::And(l, r) => 1 + l.size() + r.size(),
            // connective plus role name
            Concept::Exists(_, c) => 2 + c.size(),
        }
    }

    pub fn collect_names(&self, sig: &mut Signature) {
        match self {
            Concept::Top => {}
            Concept::Atom(a) | Concept::NegAtom(a) => {
                sig.concepts.insert(a.clone());
            }
            Concept::And(l, r) => {
                l.collect_names(sig);
                r.collect_names(sig);
            }
            Concept::Exists(role, c) => {
                sig.roles.insert(role.clone());
                c.collect_names(sig);
            }
        }
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Concept::Top => f.write_str("top"),
            Concept::Atom(a) => write!(f, "{a}"),
            Concept::NegAtom(a) => write!(f, "!{a}"),
            Concept::And(l, r) => write!(f, "({l} & {r})"),
            Concept::Exists(role, c) => write!(f, "(ex {role} . {c})"),
        }
    }
}

/// The concept shapes allowed in normal-form positions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Literal {
    Top,
    Atom(ConceptName),
    NegAtom(ConceptName),
}

impl Literal {
    pub fn name(&self) -> Option<&ConceptName> {
        match self {
            Literal::Top => None,
            Literal::Atom(a) | Literal::NegAtom(a) => Some(a),
        }
    }
}

impl From<Literal> for Concept {
    fn from(l: Literal) -> Self {
        match l {
            Literal::Top => Concept::Top,
            Literal::Atom(a) => Concept::Atom(a),
            Literal::NegAtom(a) => Concept::NegAtom(a),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// `lhs ⊑ rhs`
    Gci { lhs: Concept, rhs: Concept },
    /// `(concept | given)[lo, hi]`: among the elements of `given`, the share
    /// belonging to `concept` lies in `[lo, hi]`.
    Conditional {
        concept: Concept,
        given: Concept,
        lo: Rational,
        hi: Rational,
    },
}

impl Axiom {
    pub fn gci(lhs: Concept, rhs: Concept) -> Self {
        Axiom::Gci { lhs, rhs }
    }

    /// Builds `(concept | given)[lo, hi]`, checking `0 <= lo <= hi <= 1`.
    pub fn conditional(concept: Concept, given: Concept, lo: Rational, hi: Rational) -> Result<Self> {
        for bound in [lo, hi] {
            if !bound.in_unit_interval() {
                return Err(Error::BoundOutOfRange(bound.to_string()));
            }
        }
        if lo > hi {
            return Err(Error::LowerAboveUpper {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(Axiom::Conditional {
            concept,
            given,
            lo,
            hi,
        })
    }

    pub fn has_negation(&self) -> bool {
        match self {
            Axiom::Gci { lhs, rhs } => lhs.has_negation() || rhs.has_negation(),
            Axiom::Conditional { concept, given, .. } => concept.has_negation() || given.has_negation(),
        }
    }

    pub fn is_conditional(&self) -> bool {
        matches!(self, Axiom::Conditional { .. })
    }

    pub fn size(&self) -> usize {
        match self {
            Axiom::Gci { lhs, rhs } => lhs.size() + rhs.size(),
            Axiom::Conditional {
                concept,
                given,
                lo,
                hi,
            } => concept.size() + given.size() + lo.bit_size() + hi.bit_size(),
        }
    }

    pub fn collect_names(&self, sig: &mut Signature) {
        match self {
            Axiom::Gci { lhs, rhs } => {
                lhs.collect_names(sig);
                rhs.collect_names(sig);
            }
            Axiom::Conditional { concept, given, .. } => {
                concept.collect_names(sig);
                given.collect_names(sig);
            }
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::Gci { lhs, rhs } => write!(f, "gci {lhs} <= {rhs}"),
            Axiom::Conditional {
                concept,
                given,
                lo,
                hi,
            } => write!(f, "cond {concept} | {given} in [{lo}, {hi}]"),
        }
    }
}

/// Embeds a negation-free GCI `C ⊑ D` as the conditional `(D|C)[1,1]`.
pub fn gci_as_conditional(lhs: &Concept, rhs: &Concept) -> Result<Axiom> {
    if lhs.has_negation() || rhs.has_negation() {
        return Err(Error::NegationInSel);
    }
    Axiom::conditional(rhs.clone(), lhs.clone(), Rational::ONE, Rational::ONE)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fragment {
    El,
    ElNeg,
    Sel,
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fragment::El => "EL",
            Fragment::ElNeg => "ELneg",
            Fragment::Sel => "SEL",
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    pub concepts: BTreeSet<ConceptName>,
    pub roles: BTreeSet<RoleName>,
}

/// A non-empty ordered list of axioms together with its least fragment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ontology {
    axioms: Vec<Axiom>,
    fragment: Fragment,
}

impl Ontology {
    pub fn new(axioms: Vec<Axiom>) -> Result<Self> {
        if axioms.is_empty() {
            return Err(Error::EmptyOntology);
        }
        let negation = axioms.iter().any(Axiom::has_negation);
        let conditional = axioms.iter().any(Axiom::is_conditional);
        let fragment = match (negation, conditional) {
            (true, true) => return Err(Error::MixedFragment),
            (true, false) => Fragment::ElNeg,
            (false, true) => Fragment::Sel,
            (false, false) => Fragment::El,
        };
        // Bounds are revalidated for axioms built without `Axiom::conditional`.
        for ax in &axioms {
            if let Axiom::Conditional {
                concept, given, lo, hi, ..
            } = ax
            {
                Axiom::conditional(concept.clone(), given.clone(), *lo, *hi)?;
            }
        }
        let o = Ontology { axioms, fragment };
        let sig = o.signature();
        if let Some(clash) = sig.concepts.iter().find(|c| sig.roles.iter().any(|r| r.as_str() == c.as_str())) {
            return Err(Error::NameClash(clash.to_string()));
        }
        Ok(o)
    }

    pub fn axioms(&self) -> &[Axiom] {
        &self.axioms
    }

    pub fn into_axioms(self) -> Vec<Axiom> {
        self.axioms
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    pub fn fragment(&self) -> Fragment {
        self.fragment
    }

    /// Total symbol count; conditional bounds contribute their binary size.
    pub fn size(&self) -> usize {
        self.axioms.iter().map(Axiom::size).sum()
    }

    /// Concept and role names occurring anywhere, negated occurrences included.
    pub fn signature(&self) -> Signature {
        let mut sig = Signature::default();
        for ax in &self.axioms {
            ax.collect_names(&mut sig);
        }
        sig
    }

    pub fn require_fragment(&self, allowed: &[Fragment], expected: &'static str) -> Result<()> {
        if allowed.contains(&self.fragment) {
            Ok(())
        } else {
            Err(Error::WrongFragment {
                expected,
                found: self.fragment,
            })
        }
    }
}

impl fmt::Display for Ontology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ax in &self.axioms {
            writeln!(f, "{ax}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(s: &str) -> ConceptName {
        ConceptName::new(s).unwrap()
    }

    fn r(s: &str) -> RoleName {
        RoleName::new(s).unwrap()
    }

    fn onto(axioms: Vec<Axiom>) -> Ontology {
        Ontology::new(axioms).unwrap()
    }

    #[test]
    fn names_are_validated() {
        assert!(ConceptName::new("A1_x").is_ok());
        assert_eq!(ConceptName::new("1A"), Err(Error::InvalidName("1A".into())));
        assert_eq!(ConceptName::new("A__b"), Err(Error::ReservedName("A__b".into())));
        assert!(ConceptName::generated("A__plus").is_ok());
        assert!(ConceptName::new("top").is_err());
        assert!(RoleName::new("ex").is_err());
        assert!(ConceptName::new("").is_err());
    }

    #[test]
    fn size_examples() {
        let a_sub_ex = onto(vec![Axiom::gci(
            Concept::atom(&c("A")),
            Concept::exists(&r("r"), Concept::atom(&c("B"))),
        )]);
        assert_eq!(a_sub_ex.size(), 4);

        let top_sub_a = onto(vec![Axiom::gci(Concept::Top, Concept::atom(&c("A")))]);
        assert_eq!(top_sub_a.size(), 2);

        let half = onto(vec![Axiom::conditional(
            Concept::atom(&c("A")),
            Concept::Top,
            Rational::HALF,
            Rational::HALF,
        )
        .unwrap()]);
        assert_eq!(half.size(), 8);
    }

    #[test]
    fn size_is_additive_and_strictly_monotone() {
        let a1 = Axiom::gci(Concept::neg(&c("A")), Concept::atom(&c("A")));
        let a2 = Axiom::gci(
            Concept::and(Concept::Top, Concept::atom(&c("B"))),
            Concept::exists(&r("r"), Concept::Top),
        );
        let one = onto(vec![a1.clone()]);
        let both = onto(vec![a1.clone(), a2.clone()]);
        assert_eq!(both.size(), one.size() + a2.size());
        assert!(both.size() > one.size());
        assert_eq!(a1.size(), 3);
        assert_eq!(a2.size(), 6);
    }

    #[test]
    fn signature_examples() {
        let o = onto(vec![Axiom::gci(
            Concept::atom(&c("A")),
            Concept::exists(&r("r"), Concept::atom(&c("B"))),
        )]);
        let sig = o.signature();
        assert_eq!(sig.concepts.into_iter().collect::<Vec<_>>(), vec![c("A"), c("B")]);
        assert_eq!(sig.roles.into_iter().collect::<Vec<_>>(), vec![r("r")]);

        let trivial = onto(vec![Axiom::gci(Concept::Top, Concept::Top)]);
        assert_eq!(trivial.signature(), Signature::default());

        let neg = onto(vec![Axiom::gci(Concept::neg(&c("A")), Concept::atom(&c("A")))]);
        assert_eq!(neg.signature().concepts.len(), 1);
        assert!(neg.signature().roles.is_empty());
    }

    #[test]
    fn fragment_is_least_admitting() {
        let el = onto(vec![Axiom::gci(Concept::Top, Concept::atom(&c("A")))]);
        assert_eq!(el.fragment(), Fragment::El);
        let neg = onto(vec![Axiom::gci(Concept::Top, Concept::neg(&c("A")))]);
        assert_eq!(neg.fragment(), Fragment::ElNeg);
        let cond = Axiom::conditional(Concept::atom(&c("A")), Concept::Top, Rational::ZERO, Rational::ONE).unwrap();
        assert_eq!(onto(vec![cond.clone()]).fragment(), Fragment::Sel);
        let mixed = Ontology::new(vec![cond, Axiom::gci(Concept::Top, Concept::neg(&c("A")))]);
        assert_eq!(mixed, Err(Error::MixedFragment));
    }

    #[test]
    fn ontology_errors() {
        assert_eq!(Ontology::new(vec![]), Err(Error::EmptyOntology));
        let clash = Ontology::new(vec![Axiom::gci(
            Concept::atom(&c("r")),
            Concept::exists(&r("r"), Concept::Top),
        )]);
        assert_eq!(clash, Err(Error::NameClash("r".into())));
        let third = Rational::new(1, 3).unwrap();
        let two_thirds = Rational::new(2, 3).unwrap();
        assert!(matches!(
            Axiom::conditional(Concept::Top, Concept::Top, two_thirds, third),
            Err(Error::LowerAboveUpper { .. })
        ));
        assert!(matches!(
            Axiom::conditional(Concept::Top, Concept::Top, Rational::ZERO, Rational::new(3, 2).unwrap()),
            Err(Error::BoundOutOfRange(_))
        ));
    }

    #[test]
    fn gci_embedding() {
        let a = Concept::atom(&c("A"));
        let b = Concept::atom(&c("B"));
        assert_eq!(
            gci_as_conditional(&a, &b).unwrap(),
            Axiom::Conditional {
                concept: b.clone(),
                given: a.clone(),
                lo: Rational::ONE,
                hi: Rational::ONE
            }
        );
        assert_eq!(
            gci_as_conditional(&Concept::Top, &a).unwrap(),
            Axiom::Conditional {
                concept: a.clone(),
                given: Concept::Top,
                lo: Rational::ONE,
                hi: Rational::ONE
            }
        );
        assert!(gci_as_conditional(&Concept::neg(&c("A")), &b).is_err());
    }

    #[test]
    fn display_matches_text_format() {
        let ax = Axiom::gci(Concept::atom(&c("A")), Concept::exists(&r("r"), Concept::Top));
        assert_eq!(ax.to_string(), "gci A <= (ex r . top)");
        let cond = Axiom::conditional(Concept::atom(&c("A")), Concept::Top, Rational::ZERO, Rational::ONE).unwrap();
        assert_eq!(cond.to_string(), "cond A | top in [0/1, 1/1]");
        let neg = Concept::and(Concept::neg(&c("A")), Concept::Top);
        assert_eq!(neg.to_string(), "(!A & top)");
    }
}
