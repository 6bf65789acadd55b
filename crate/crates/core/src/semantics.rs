//! Finite interpretations and satisfaction.
//!
//! Extensions are bitsets indexed by domain position. A name that an
//! interpretation does not mention denotes the empty set, so one model can be
//! checked against ontologies over a larger signature.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::rational::Rational;
use crate::syntax::{Axiom, Concept, ConceptName, Fragment, Ontology, RoleName, Signature};
use crate::{Error, Result};

/// Upper bound on the number of interpretations [`enumerate_interpretations`]
/// agrees to produce unless the caller passes its own ceiling.
pub const DEFAULT_ENUMERATION_CEILING: u64 = 1 << 24;

fn valid_element(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// A finite interpretation: a non-empty ordered domain, concept extensions and
/// role extensions (stored as one successor set per element).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpretation {
    domain: Vec<String>,
    index: BTreeMap<String, usize>,
    concepts: BTreeMap<ConceptName, FixedBitSet>,
    roles: BTreeMap<RoleName, Vec<FixedBitSet>>,
}

impl Interpretation {
    pub fn new(domain: Vec<String>) -> Result<Self> {
        if domain.is_empty() {
            return Err(Error::EmptyDomain);
        }
        let mut index = BTreeMap::new();
        for (i, d) in domain.iter().enumerate() {
            if !valid_element(d) {
                return Err(Error::InvalidElement(d.clone()));
            }
            if index.insert(d.clone(), i).is_some() {
                return Err(Error::DuplicateElement(d.clone()));
            }
        }
        Ok(Interpretation {
            domain,
            index,
            concepts: BTreeMap::new(),
            roles: BTreeMap::new(),
        })
    }

    /// Domain `d1 .. dn` with every extension empty.
    pub fn with_size(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("d{i}")).collect())
    }

    pub fn size(&self) -> usize {
        self.domain.len()
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn element_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.size())
    }

    pub fn full_set(&self) -> FixedBitSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    pub fn set_concept<I: IntoIterator<Item = usize>>(&mut self, name: ConceptName, members: I) {
        let mut set = self.empty_set();
        for d in members {
            set.insert(d);
        }
        self.concepts.insert(name, set);
    }

    /// Declares `role` (possibly with an empty extension).
    pub fn declare_role(&mut self, role: RoleName) {
        let n = self.size();
        self.roles
            .entry(role)
            .or_insert_with(|| vec![FixedBitSet::with_capacity(n); n]);
    }

    pub fn add_edge(&mut self, role: &RoleName, from: usize, to: usize) {
        let n = self.size();
        self.roles
            .entry(role.clone())
            .or_insert_with(|| vec![FixedBitSet::with_capacity(n); n])[from]
            .insert(to);
    }

    pub fn concept(&self, name: &ConceptName) -> Option<&FixedBitSet> {
        self.concepts.get(name)
    }

    pub fn concepts(&self) -> impl Iterator<Item = (&ConceptName, &FixedBitSet)> {
        self.concepts.iter()
    }

    pub fn role_names(&self) -> impl Iterator<Item = &RoleName> {
        self.roles.keys()
    }

    /// Edges of `role` in (source, target) order; empty for unknown roles.
    pub fn role_pairs(&self, role: &RoleName) -> Vec<(usize, usize)> {
        match self.roles.get(role) {
            None => Vec::new(),
            Some(rows) => rows
                .iter()
                .enumerate()
                .flat_map(|(d, row)| row.ones().map(move |e| (d, e)))
                .collect(),
        }
    }

    pub fn has_edge(&self, role: &RoleName, from: usize, to: usize) -> bool {
        self.roles.get(role).is_some_and(|rows| rows[from].contains(to))
    }

    /// Keeps only the listed names; the domain is unchanged.
    pub fn restrict(&self, sig: &Signature) -> Interpretation {
        let mut out = self.clone();
        out.concepts.retain(|c, _| sig.concepts.contains(c));
        out.roles.retain(|r, _| sig.roles.contains(r));
        out
    }

    /// Extension of a concept, by structural recursion.
    pub fn extension(&self, c: &Concept) -> FixedBitSet {
        match c {
            Concept::Top => self.full_set(),
            Concept::Atom(a) => self.concepts.get(a).cloned().unwrap_or_else(|| self.empty_set()),
            Concept::NegAtom(a) => {
                let mut s = self.full_set();
                if let Some(ext) = self.concepts.get(a) {
                    s.difference_with(ext);
                }
                s
            }
            Concept::And(l, r) => {
                let mut s = self.extension(l);
                s.intersect_with(&self.extension(r));
                s
            }
            Concept::Exists(role, filler) => {
                let mut s = self.empty_set();
                if let Some(rows) = self.roles.get(role) {
                    let target = self.extension(filler);
                    for (d, row) in rows.iter().enumerate() {
                        if !row.is_disjoint(&target) {
                            s.insert(d);
                        }
                    }
                }
                s
            }
        }
    }

    /// `None` when the axiom holds, otherwise the cardinalities explaining why not.
    pub fn check_axiom(&self, ax: &Axiom) -> Option<ViolationDetail> {
        match ax {
            Axiom::Gci { lhs, rhs } => {
                let l = self.extension(lhs);
                let r = self.extension(rhs);
                let uncovered = l.difference_count(&r);
                (uncovered > 0).then_some(ViolationDetail::Gci {
                    lhs: l.count_ones(..),
                    uncovered,
                })
            }
            Axiom::Conditional {
                concept,
                given,
                lo,
                hi,
            } => {
                let c = self.extension(concept);
                let g = self.extension(given);
                let joint = c.intersection_count(&g);
                let given = g.count_ones(..);
                (!ratio_within(joint, given, lo, hi)).then_some(ViolationDetail::Conditional { joint, given })
            }
        }
    }

    pub fn satisfies_axiom(&self, ax: &Axiom) -> bool {
        self.check_axiom(ax).is_none()
    }

    pub fn satisfies_ontology(&self, o: &Ontology) -> Verdict {
        let violations = o
            .axioms()
            .iter()
            .enumerate()
            .filter_map(|(axiom, ax)| self.check_axiom(ax).map(|detail| Violation { axiom, detail }))
            .collect();
        Verdict { violations }
    }

    /// Whether some bijection between the domains maps every concept and role
    /// extension onto the other's. Names missing on one side count as empty.
    /// Exponential in the worst case; intended for small models.
    pub fn is_isomorphic_to(&self, other: &Interpretation) -> bool {
        let n = self.size();
        if n != other.size() {
            return false;
        }
        let mut names: Vec<&ConceptName> = self.concepts.keys().chain(other.concepts.keys()).collect();
        names.sort();
        names.dedup();
        let mut roles: Vec<&RoleName> = self.roles.keys().chain(other.roles.keys()).collect();
        roles.sort();
        roles.dedup();

        let label = |i: &Interpretation, d: usize| -> Vec<bool> {
            names.iter().map(|c| i.concepts.get(*c).is_some_and(|s| s.contains(d))).collect()
        };
        let left: Vec<Vec<bool>> = (0..n).map(|d| label(self, d)).collect();
        let right: Vec<Vec<bool>> = (0..n).map(|d| label(other, d)).collect();

        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend_iso(other, &roles, &left, &right, 0, &mut map, &mut used)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_iso(
        &self,
        other: &Interpretation,
        roles: &[&RoleName],
        left: &[Vec<bool>],
        right: &[Vec<bool>],
        d: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = self.size();
        if d == n {
            return true;
        }
        for e in 0..n {
            if used[e] || left[d] != right[e] {
                continue;
            }
            map[d] = e;
            let consistent = (0..=d).all(|p| {
                roles.iter().all(|r| {
                    self.has_edge(r, d, p) == other.has_edge(r, e, map[p])
                        && self.has_edge(r, p, d) == other.has_edge(r, map[p], e)
                })
            });
            if consistent {
                used[e] = true;
                if self.extend_iso(other, roles, left, right, d + 1, map, used) {
                    return true;
                }
                used[e] = false;
            }
        }
        map[d] = usize::MAX;
        false
    }
}

/// `given == 0` or `lo <= joint / given <= hi`, exactly.
pub fn ratio_within(joint: usize, given: usize, lo: &Rational, hi: &Rational) -> bool {
    given == 0 || (lo.le_ratio(joint as u64, given as u64) && hi.ge_ratio(joint as u64, given as u64))
}

/// GCI satisfaction from precomputed extensions: `lhs ⊆ rhs`.
pub fn gci_holds(lhs: &FixedBitSet, rhs: &FixedBitSet) -> bool {
    lhs.is_subset(rhs)
}

/// Conditional `(concept | given)[lo, hi]` satisfaction from precomputed
/// extensions.
pub fn conditional_holds(concept: &FixedBitSet, given: &FixedBitSet, lo: &Rational, hi: &Rational) -> bool {
    ratio_within(concept.intersection_count(given), given.count_ones(..), lo, hi)
}

/// Free-function form of [`Interpretation::extension`].
pub fn extension(i: &Interpretation, c: &Concept) -> FixedBitSet {
    i.extension(c)
}

pub fn satisfies_axiom(i: &Interpretation, ax: &Axiom) -> bool {
    i.satisfies_axiom(ax)
}

pub fn satisfies_ontology(i: &Interpretation, o: &Ontology) -> Verdict {
    i.satisfies_ontology(o)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationDetail {
    /// `|lhs|` elements on the left, `uncovered` of them outside the right side.
    Gci { lhs: usize, uncovered: usize },
    /// `|concept ⊓ given|` and `|given|`.
    Conditional { joint: usize, given: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub axiom: usize,
    pub detail: ViolationDetail,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn satisfied(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first_violation(&self) -> Option<usize> {
        self.violations.first().map(|v| v.axiom)
    }
}

/// The one-element model interpreting every name as full.
pub fn trivial_el_model(o: &Ontology) -> Result<Interpretation> {
    o.require_fragment(&[Fragment::El], "EL")?;
    let sig = o.signature();
    let mut i = Interpretation::new(vec!["d0".to_string()])?;
    for c in sig.concepts {
        i.set_concept(c, [0]);
    }
    for r in sig.roles {
        i.add_edge(&r, 0, 0);
    }
    Ok(i)
}

/// Lazily enumerates every interpretation of `concepts` and `roles` over the
/// domain `d1 .. dn`.
///
/// The interpretations are ordered lexicographically by their characteristic
/// bit-vector: concept memberships name by name, then role edges role by role
/// (row-major), the first position being the most significant.
#[derive(Debug, Clone)]
pub struct InterpretationEnumerator {
    concepts: Vec<ConceptName>,
    roles: Vec<RoleName>,
    n: usize,
    width: u32,
    next: u64,
    end: u64,
}

pub fn enumerate_interpretations(
    concepts: &[ConceptName],
    roles: &[RoleName],
    n: usize,
    ceiling: u64,
) -> Result<InterpretationEnumerator> {
    if n == 0 {
        return Err(Error::EmptyDomain);
    }
    let width = (n as u128) * (concepts.len() as u128) + (n as u128) * (n as u128) * (roles.len() as u128);
    if width >= 64 || (1u64 << width) > ceiling {
        let count = if width >= 128 { u128::MAX } else { 1u128 << width };
        return Err(Error::EnumerationTooLarge { count, ceiling });
    }
    let mut concepts = concepts.to_vec();
    concepts.dedup();
    let mut roles = roles.to_vec();
    roles.dedup();
    Ok(InterpretationEnumerator {
        concepts,
        roles,
        n,
        width: width as u32,
        next: 0,
        end: 1u64 << width,
    })
}

impl InterpretationEnumerator {
    pub fn total(&self) -> u64 {
        1u64 << self.width
    }

    /// Restricts the stream to the index range `start..end` of the full order,
    /// so the enumeration can be split between workers.
    pub fn with_range(mut self, start: u64, end: u64) -> Self {
        self.end = end.min(self.total());
        self.next = start.min(self.end);
        self
    }

    fn decode(&self, code: u64) -> Interpretation {
        let n = self.n;
        let bit = |pos: usize| code >> (self.width as usize - 1 - pos) & 1 == 1;
        let mut i = Interpretation::with_size(n).expect("n >= 1");
        let mut pos = 0;
        for c in &self.concepts {
            let members: Vec<usize> = (0..n).filter(|d| bit(pos + d)).collect();
            i.set_concept(c.clone(), members);
            pos += n;
        }
        for r in &self.roles {
            i.declare_role(r.clone());
            for d in 0..n {
                for e in 0..n {
                    if bit(pos + d * n + e) {
                        i.add_edge(r, d, e);
                    }
                }
            }
            pos += n * n;
        }
        i
    }
}

impl Iterator for InterpretationEnumerator {
    type Item = Interpretation;

    fn next(&mut self) -> Option<Interpretation> {
        if self.next >= self.end {
            return None;
        }
        let i = self.decode(self.next);
        self.next += 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }

    fn nth(&mut self, k: usize) -> Option<Interpretation> {
        self.next = self.next.saturating_add(k as u64).min(self.end);
        self.next()
    }
}

impl ExactSizeIterator for InterpretationEnumerator {}
