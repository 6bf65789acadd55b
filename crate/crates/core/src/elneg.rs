//! Consistency of EL¬ ontologies by type elimination.
//!
//! A type fixes, for every concept name of the (normalized) signature,
//! whether an element belongs to it. Types violating a GCI of shape
//! `L1 ⊑ L2` or `L1 ⊓ L2 ⊑ L3` are discarded up front. Then every type that
//! needs an `r`-successor for `L1 ⊑ ∃r.L2` but finds no compatible surviving
//! type containing `L2` is removed, until nothing changes. A type `t` may have
//! an `r`-edge to `u` when every `∃r.L ⊑ L'` with `L` in `u` has `L'` in `t`.
//!
//! The ontology is consistent iff some type survives; the survivors, joined
//! by every compatible edge, form a model.
//!
//! Existential demands and edge compatibility only read the names occurring
//! in `∃`-shaped axioms. [`eliminate_by_interface`] therefore runs the same
//! elimination over assignments to those names alone, keeping one locally
//! consistent completion of each, found by a small DPLL search. This is what
//! [`decide_elneg`] uses; [`eliminate_types`] enumerates every type.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::normalform::{is_normal_form, normalize};
use crate::semantics::Interpretation;
use crate::syntax::{Axiom, Concept, ConceptName, Fragment, Ontology, RoleName};
use crate::{Error, Result};

/// Largest signature [`eliminate_types`] accepts (types are enumerated
/// exhaustively).
pub const MAX_SIGNATURE: usize = 24;

/// Largest number of names in `∃`-shaped axioms [`eliminate_by_interface`]
/// accepts; the whole signature may have up to 64 names.
pub const MAX_INTERFACE: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Lit {
    Top,
    Pos(u32),
    Neg(u32),
}

impl Lit {
    fn holds(self, t: u64) -> bool {
        match self {
            Lit::Top => true,
            Lit::Pos(i) => t >> i & 1 == 1,
            Lit::Neg(i) => t >> i & 1 == 0,
        }
    }
}

/// A complete type: bit `i` set iff the element belongs to the `i`-th name of
/// the signature it was computed for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EType(pub u64);

impl EType {
    pub fn contains(&self, index: usize) -> bool {
        self.0 >> index & 1 == 1
    }
}

/// Constraint `(must hold, must fail)` on the bits of a predecessor type.
type Requirement = (u64, u64);

fn meets(t: u64, (pos, neg): Requirement) -> bool {
    t & pos == pos && t & neg == 0
}

/// Clause satisfied when a bit of `.0` is set or a bit of `.1` is clear.
type Clause = (u64, u64);

struct Compiled {
    names: Vec<ConceptName>,
    roles: Vec<RoleName>,
    /// Bits of names occurring in `needs` or `back`.
    interface: u64,
    clauses: Vec<Clause>,
    /// `l1 ⊓ l2 ⊑ l3`; shape (i) uses `Lit::Top` for `l2`.
    local: Vec<(Lit, Lit, Lit)>,
    /// `l1 ⊑ ∃r.l2`
    needs: Vec<(Lit, usize, Lit)>,
    /// `∃r.l ⊑ l'`
    back: Vec<(usize, Lit, Lit)>,
}

impl Compiled {
    fn new(o: &Ontology, limit: usize) -> Result<Self> {
        if !is_normal_form(o)? {
            let bad = o
                .axioms()
                .iter()
                .position(|a| !crate::normalform::is_normal_axiom(a))
                .unwrap_or(0);
            return Err(Error::NotNormalForm(bad));
        }
        let sig = o.signature();
        if sig.concepts.len() > limit {
            return Err(Error::SignatureTooLarge {
                size: sig.concepts.len(),
                limit,
            });
        }
        let names: Vec<ConceptName> = sig.concepts.into_iter().collect();
        let roles: Vec<RoleName> = sig.roles.into_iter().collect();
        let lit = |c: &Concept| -> Lit {
            let idx = |a: &ConceptName| names.iter().position(|n| n == a).expect("in signature") as u32;
            match c {
                Concept::Top => Lit::Top,
                Concept::Atom(a) => Lit::Pos(idx(a)),
                Concept::NegAtom(a) => Lit::Neg(idx(a)),
                _ => unreachable!("normal form"),
            }
        };
        let role = |r: &RoleName| roles.iter().position(|x| x == r).expect("in signature");

        let mut out = Compiled {
            names: names.clone(),
            roles: roles.clone(),
            interface: 0,
            clauses: Vec::new(),
            local: Vec::new(),
            needs: Vec::new(),
            back: Vec::new(),
        };
        for ax in o.axioms() {
            let Axiom::Gci { lhs, rhs } = ax else {
                unreachable!("normal form")
            };
            match (lhs, rhs) {
                (Concept::And(a, b), r) => out.local.push((lit(a), lit(b), lit(r))),
                (Concept::Exists(r, f), l) => out.back.push((role(r), lit(f), lit(l))),
                (l, Concept::Exists(r, f)) => out.needs.push((lit(l), role(r), lit(f))),
                (l, r) => out.local.push((lit(l), Lit::Top, lit(r))),
            }
        }
        let bit = |l: Lit| match l {
            Lit::Top => 0,
            Lit::Pos(i) | Lit::Neg(i) => 1u64 << i,
        };
        for &(l1, _, l2) in &out.needs {
            out.interface |= bit(l1) | bit(l2);
        }
        for &(_, l, l2) in &out.back {
            out.interface |= bit(l) | bit(l2);
        }
        // a ⊓ b ⊑ c as the clause ¬a ∨ ¬b ∨ c
        for &(a, b, c) in &out.local {
            let mut clause: Clause = (0, 0);
            for l in [a, b] {
                match l {
                    Lit::Top => {}
                    Lit::Pos(i) => clause.1 |= 1 << i,
                    Lit::Neg(i) => clause.0 |= 1 << i,
                }
            }
            match c {
                Lit::Top => continue,
                Lit::Pos(i) => clause.0 |= 1 << i,
                Lit::Neg(i) => clause.1 |= 1 << i,
            }
            if clause.0 & clause.1 == 0 {
                out.clauses.push(clause);
            }
        }
        Ok(out)
    }

    fn all_names(&self) -> u64 {
        if self.names.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.names.len()) - 1
        }
    }

    /// The least locally consistent type agreeing with `values` on the bits
    /// of `assigned`, preferring absent names.
    fn complete(&self, mut assigned: u64, mut values: u64) -> Option<u64> {
        loop {
            let mut changed = false;
            for &(pos, neg) in &self.clauses {
                if values & pos & assigned != 0 || !values & neg & assigned != 0 {
                    continue;
                }
                let open = (pos | neg) & !assigned;
                match open.count_ones() {
                    0 => return None,
                    1 => {
                        assigned |= open;
                        if pos & open != 0 {
                            values |= open;
                        }
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }
        let free = self.all_names() & !assigned;
        if free == 0 {
            return Some(values);
        }
        let v = free & free.wrapping_neg();
        self.complete(assigned | v, values)
            .or_else(|| self.complete(assigned | v, values | v))
    }

    fn locally_consistent(&self, t: u64) -> bool {
        self.local
            .iter()
            .all(|&(a, b, c)| !(a.holds(t) && b.holds(t)) || c.holds(t))
    }

    /// What a predecessor of `t` along `role` must satisfy.
    fn requirement(&self, role: usize, t: u64) -> Requirement {
        let mut req = (0, 0);
        for &(r, l, l2) in &self.back {
            if r == role && l.holds(t) {
                match l2 {
                    Lit::Top => {}
                    Lit::Pos(i) => req.0 |= 1 << i,
                    Lit::Neg(i) => req.1 |= 1 << i,
                }
            }
        }
        req
    }

    fn compatible(&self, role: usize, from: u64, to: u64) -> bool {
        meets(from, self.requirement(role, to))
    }
}

/// Result of type elimination over the signature `names`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elimination {
    pub names: Vec<ConceptName>,
    /// Surviving types in ascending order.
    pub types: Vec<EType>,
    /// Number of survivors after the local filter and after each round;
    /// the last entry repeats the fixpoint size.
    pub history: Vec<usize>,
}

impl Elimination {
    pub fn rounds(&self) -> usize {
        self.history.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }
}

/// Computes the greatest set of locally consistent types in which every
/// existential demand has a compatible witness. Requires normal form.
pub fn eliminate_types(o: &Ontology) -> Result<Elimination> {
    let k = Compiled::new(o, MAX_SIGNATURE)?;
    let alive = (0..1u64 << k.names.len()).filter(|&t| k.locally_consistent(t)).collect();
    Ok(eliminate(&k, alive))
}

/// Type elimination over the names of `∃`-shaped axioms. Each surviving
/// type stands for one surviving assignment to those names, completed to the
/// least locally consistent type. Consistent iff the result is non-empty.
pub fn eliminate_by_interface(o: &Ontology) -> Result<Elimination> {
    let k = Compiled::new(o, 64)?;
    let width = k.interface.count_ones() as usize;
    if width > MAX_INTERFACE {
        return Err(Error::SignatureTooLarge {
            size: width,
            limit: MAX_INTERFACE,
        });
    }
    let positions: Vec<u32> = (0..64).filter(|i| k.interface >> i & 1 == 1).collect();
    let mut alive: Vec<u64> = (0..1u64 << width)
        .filter_map(|code| {
            let values = positions
                .iter()
                .enumerate()
                .filter(|(j, _)| code >> j & 1 == 1)
                .fold(0u64, |acc, (_, &p)| acc | 1 << p);
            k.complete(k.interface, values)
        })
        .collect();
    alive.sort_unstable();
    Ok(eliminate(&k, alive))
}

fn eliminate(k: &Compiled, mut alive: Vec<u64>) -> Elimination {
    let mut history = alive.len();
    let mut sizes = Vec::from([history]);
    loop {
        // For each demand, the distinct requirements its possible witnesses impose.
        let options: Vec<BTreeSet<Requirement>> = k
            .needs
            .iter()
            .map(|&(_, role, filler)| {
                alive
                    .iter()
                    .filter(|&&u| filler.holds(u))
                    .map(|&u| k.requirement(role, u))
                    .collect()
            })
            .collect();
        alive.retain(|&t| {
            k.needs
                .iter()
                .zip(&options)
                .all(|(&(l1, _, _), opts)| !l1.holds(t) || opts.iter().any(|&req| meets(t, req)))
        });
        sizes.push(alive.len());
        if alive.len() == history {
            break;
        }
        history = alive.len();
    }
    Elimination {
        names: k.names.clone(),
        types: alive.into_iter().map(EType).collect(),
        history: sizes,
    }
}

/// Builds the canonical model over surviving types: one element per type,
/// concept names by membership, and every compatible edge for every role.
pub fn extract_witness(elim: &Elimination, o: &Ontology) -> Result<Interpretation> {
    if elim.types.is_empty() {
        return Err(Error::EmptyDomain);
    }
    let k = Compiled::new(o, 64)?;
    let mut i = Interpretation::new((1..=elim.types.len()).map(|d| format!("d{d}")).collect())?;
    for (idx, name) in elim.names.iter().enumerate() {
        let members = elim
            .types
            .iter()
            .enumerate()
            .filter(|(_, t)| t.contains(idx))
            .map(|(d, _)| d);
        i.set_concept(name.clone(), members);
    }
    for (role_idx, role) in k.roles.iter().enumerate() {
        i.declare_role(role.clone());
        for (d, t) in elim.types.iter().enumerate() {
            for (e, u) in elim.types.iter().enumerate() {
                if k.compatible(role_idx, t.0, u.0) {
                    i.add_edge(role, d, e);
                }
            }
        }
    }
    if let Some(axiom) = i.satisfies_ontology(o).first_violation() {
        return Err(Error::ConstructionFailed {
            axiom,
            against: "normalized",
        });
    }
    Ok(i)
}

/// A model over the survivors reachable from the least one, each
/// existential demand met by the least compatible survivor. Usually far
/// smaller than [`extract_witness`]; edges are again every compatible pair.
pub fn extract_rooted_witness(elim: &Elimination, o: &Ontology) -> Result<Interpretation> {
    let Some(&root) = elim.types.first() else {
        return Err(Error::EmptyDomain);
    };
    let k = Compiled::new(o, 64)?;
    let mut chosen = Vec::from([root.0]);
    let mut next = 0;
    while next < chosen.len() {
        let t = chosen[next];
        next += 1;
        for &(l1, role, l2) in &k.needs {
            if !l1.holds(t) {
                continue;
            }
            let u = elim
                .types
                .iter()
                .map(|u| u.0)
                .find(|&u| l2.holds(u) && k.compatible(role, t, u))
                .expect("survivors are closed under witnessing");
            if !chosen.contains(&u) {
                chosen.push(u);
            }
        }
    }
    let sub = Elimination {
        names: elim.names.clone(),
        types: chosen.into_iter().map(EType).collect(),
        history: elim.history.clone(),
    };
    extract_witness(&sub, o)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElnegVerdict {
    Consistent(Interpretation),
    Inconsistent,
}

impl ElnegVerdict {
    pub fn is_consistent(&self) -> bool {
        matches!(self, ElnegVerdict::Consistent(_))
    }

    pub fn witness(&self) -> Option<&Interpretation> {
        match self {
            ElnegVerdict::Consistent(w) => Some(w),
            ElnegVerdict::Inconsistent => None,
        }
    }
}

/// Decides consistency of an EL or EL¬ ontology, normalizing first when
/// needed. A consistent verdict carries a model over the input's own
/// signature, built by [`extract_rooted_witness`] and re-checked against the
/// input.
pub fn decide_elneg(o: &Ontology) -> Result<ElnegVerdict> {
    o.require_fragment(&[Fragment::El, Fragment::ElNeg], "EL or ELneg")?;
    let (normal, _) = normalize(o)?;
    let elim = eliminate_by_interface(&normal)?;
    if elim.is_empty() {
        return Ok(ElnegVerdict::Inconsistent);
    }
    let witness = extract_rooted_witness(&elim, &normal)?.restrict(&o.signature());
    if let Some(axiom) = witness.satisfies_ontology(o).first_violation() {
        return Err(Error::ConstructionFailed { axiom, against: "input" });
    }
    Ok(ElnegVerdict::Consistent(witness))
}
