//! Bounded model finding for Statistical EL.
//!
//! For each domain size `n = 1, 2, …` up to the budget, the search decides
//! membership of every element in every concept name and in every
//! existential subconcept `∃r.C` of the ontology, one column at a time.
//! Elements that agree on every column decided so far are interchangeable, so
//! they are kept together in a class and a column is decided by choosing *how
//! many* members of each class enter it. This visits exactly one labelling per
//! isomorphism class of labelled domains.
//!
//! Roles are not searched. Once every element carries a full label, the
//! largest role extension compatible with the negative existential bits is
//! taken (`(d, e)` is allowed unless `e ∈ C` while `d ∉ ∃r.C`); the labelling
//! is realizable iff that relation supplies a witness for every positive bit.
//! Any model yields such a labelling and its roles are contained in the
//! maximal relation, so no model within the bound is missed.
//!
//! Per-element constraints come from GCIs and from conditionals that are
//! local in disguise: `(C|D)[0,0]` forbids `C ⊓ D`, `(C|D)[1,1]` is `D ⊑ C`,
//! and `(C|D)[0,1]` always holds. Remaining conditionals are counting
//! constraints, pruned with three-valued lower and upper cardinality bounds;
//! for `D = ⊤` this is the interval `[⌈k·n⌉, ⌊l·n⌋]` on `|C|`.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::time::Duration;

use crate::rational::Rational;
use crate::semantics::Interpretation;
use crate::syntax::{Axiom, Concept, ConceptName, Fragment, Ontology, RoleName};
use crate::{Error, Result};

/// Names plus existential subconcepts must fit one machine word.
pub const MAX_COLUMNS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_domain: usize,
    /// Maximum number of branching decisions over the whole run.
    pub node_ceiling: u64,
    /// Enforced by callers that own a clock, through [`find_model_with`].
    pub time_ceiling: Option<Duration>,
}

impl SearchBudget {
    pub fn new(max_domain: usize) -> Self {
        SearchBudget {
            max_domain,
            node_ceiling: 50_000_000,
            time_ceiling: None,
        }
    }

    pub fn with_nodes(mut self, nodes: u64) -> Self {
        self.node_ceiling = nodes;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    NodeCeiling,
    Interrupted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Progress {
    /// Every size up to this one was refuted exhaustively.
    pub refuted_up_to: usize,
    /// The size being searched when the budget ran out.
    pub domain_size: usize,
    pub nodes: u64,
    pub reason: StopReason,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SelVerdict {
    Found(Interpretation),
    /// No model with at most this many elements exists.
    NoModelUpTo(usize),
    BudgetExhausted(Progress),
}

impl SelVerdict {
    pub fn model(&self) -> Option<&Interpretation> {
        match self {
            SelVerdict::Found(m) => Some(m),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub verdict: SelVerdict,
    pub nodes: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tri {
    True,
    False,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Expr {
    Top,
    Col(u32),
    And(Box<Expr>, Box<Expr>),
}

impl Expr {
    fn eval(&self, known: u64, value: u64) -> Tri {
        match self {
            Expr::Top => Tri::True,
            Expr::Col(c) => {
                if known >> c & 1 == 0 {
                    Tri::Unknown
                } else if value >> c & 1 == 1 {
                    Tri::True
                } else {
                    Tri::False
                }
            }
            Expr::And(a, b) => match (a.eval(known, value), b.eval(known, value)) {
                (Tri::False, _) | (_, Tri::False) => Tri::False,
                (Tri::True, Tri::True) => Tri::True,
                _ => Tri::Unknown,
            },
        }
    }

    fn holds(&self, value: u64) -> bool {
        self.eval(u64::MAX, value) == Tri::True
    }
}

#[derive(Debug, Clone)]
struct Existential {
    column: u32,
    role: usize,
    filler: Expr,
}

/// `premise → conclusion` for every element; `None` means `⊥`.
#[derive(Debug, Clone)]
struct Local {
    premise: Expr,
    conclusion: Option<Expr>,
}

#[derive(Debug, Clone)]
struct Counting {
    joint: Expr,
    given: Expr,
    lo: Rational,
    hi: Rational,
}

struct Compiled {
    names: Vec<ConceptName>,
    roles: Vec<RoleName>,
    columns: usize,
    existentials: Vec<Existential>,
    local: Vec<Local>,
    counting: Vec<Counting>,
}

struct Compiler {
    names: Vec<ConceptName>,
    roles: Vec<RoleName>,
    existentials: Vec<(Concept, usize, Expr)>,
}

impl Compiler {
    fn name_col(&mut self, a: &ConceptName) -> usize {
        match self.names.iter().position(|n| n == a) {
            Some(i) => i,
            None => {
                self.names.push(a.clone());
                self.names.len() - 1
            }
        }
    }

    /// Registers names in first-occurrence order. Runs over the whole
    /// ontology before [`Compiler::compile`], so existential columns follow
    /// every name column.
    fn scan_names(&mut self, c: &Concept) -> Result<()> {
        match c {
            Concept::Top => {}
            Concept::Atom(a) => {
                self.name_col(a);
            }
            Concept::NegAtom(_) => return Err(Error::NegationInSel),
            Concept::And(l, r) => {
                self.scan_names(l)?;
                self.scan_names(r)?;
            }
            Concept::Exists(role, f) => {
                if !self.roles.contains(role) {
                    self.roles.push(role.clone());
                }
                self.scan_names(f)?;
            }
        }
        Ok(())
    }

    fn compile(&mut self, c: &Concept) -> Expr {
        match c {
            Concept::Top => Expr::Top,
            Concept::Atom(a) => Expr::Col(self.name_col(a) as u32),
            Concept::NegAtom(_) => unreachable!("rejected while scanning"),
            Concept::And(l, r) => Expr::And(Box::new(self.compile(l)), Box::new(self.compile(r))),
            Concept::Exists(role, f) => {
                let filler = self.compile(f);
                let offset = self.names.len();
                if let Some(k) = self.existentials.iter().position(|(e, _, _)| e == c) {
                    return Expr::Col((offset + k) as u32);
                }
                let role = self.roles.iter().position(|r| r == role).expect("scanned");
                self.existentials.push((c.clone(), role, filler));
                Expr::Col((offset + self.existentials.len() - 1) as u32)
            }
        }
    }
}

impl Compiled {
    fn new(o: &Ontology) -> Result<Self> {
        o.require_fragment(&[Fragment::El, Fragment::Sel], "EL or SEL")
            .map_err(|_| Error::NegationInSel)?;
        let mut comp = Compiler {
            names: Vec::new(),
            roles: Vec::new(),
            existentials: Vec::new(),
        };
        for ax in o.axioms() {
            match ax {
                Axiom::Gci { lhs, rhs } => {
                    comp.scan_names(lhs)?;
                    comp.scan_names(rhs)?;
                }
                Axiom::Conditional { concept, given, .. } => {
                    comp.scan_names(concept)?;
                    comp.scan_names(given)?;
                }
            }
        }
        let mut local = Vec::new();
        let mut counting = Vec::new();
        for ax in o.axioms() {
            match ax {
                Axiom::Gci { lhs, rhs } => {
                    if *rhs != Concept::Top {
                        local.push(Local {
                            premise: comp.compile(lhs),
                            conclusion: Some(comp.compile(rhs)),
                        });
                    }
                }
                Axiom::Conditional {
                    concept,
                    given,
                    lo,
                    hi,
                } => {
                    let c = comp.compile(concept);
                    let d = comp.compile(given);
                    if lo.is_zero() && hi.is_one() {
                        continue;
                    }
                    if hi.is_zero() {
                        local.push(Local {
                            premise: Expr::And(Box::new(c), Box::new(d)),
                            conclusion: None,
                        });
                    } else if lo.is_one() {
                        local.push(Local {
                            premise: d,
                            conclusion: Some(c),
                        });
                    } else {
                        counting.push(Counting {
                            joint: Expr::And(Box::new(c), Box::new(d.clone())),
                            given: d,
                            lo: *lo,
                            hi: *hi,
                        });
                    }
                }
            }
        }
        let names = comp.names.len() as u32;
        let columns = comp.names.len() + comp.existentials.len();
        if columns > MAX_COLUMNS {
            return Err(Error::SignatureTooLarge {
                size: columns,
                limit: MAX_COLUMNS,
            });
        }
        let existentials = comp
            .existentials
            .into_iter()
            .enumerate()
            .map(|(k, (_, role, filler))| Existential {
                column: names + k as u32,
                role,
                filler,
            })
            .collect();
        Ok(Compiled {
            names: comp.names,
            roles: comp.roles,
            columns,
            existentials,
            local,
            counting,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Class {
    size: usize,
    known: u64,
    value: u64,
}

enum Flow {
    Continue,
    Found(Interpretation),
    Stop(StopReason),
}

struct Search<'a> {
    k: &'a Compiled,
    o: &'a Ontology,
    nodes: u64,
    ceiling: u64,
    interrupt: &'a mut dyn FnMut() -> bool,
}

impl Search<'_> {
    fn local_ok(&self, c: &Class) -> bool {
        self.k.local.iter().all(|l| {
            if l.premise.eval(c.known, c.value) != Tri::True {
                return true;
            }
            match &l.conclusion {
                None => false,
                Some(e) => e.eval(c.known, c.value) != Tri::False,
            }
        })
    }

    fn counts_ok<'c>(&self, classes: impl Iterator<Item = &'c Class> + Clone) -> bool {
        self.k.counting.iter().all(|cnt| {
            let (mut x_lo, mut x_hi, mut y_lo, mut y_hi) = (0u64, 0u64, 0u64, 0u64);
            for c in classes.clone() {
                let s = c.size as u64;
                match cnt.given.eval(c.known, c.value) {
                    Tri::True => {
                        y_lo += s;
                        y_hi += s;
                    }
                    Tri::Unknown => y_hi += s,
                    Tri::False => {}
                }
                match cnt.joint.eval(c.known, c.value) {
                    Tri::True => {
                        x_lo += s;
                        x_hi += s;
                    }
                    Tri::Unknown => x_hi += s,
                    Tri::False => {}
                }
            }
            (y_lo..=y_hi).any(|y| {
                let lo = (cnt.lo.ceil_mul(y) as u64).max(x_lo);
                let hi = (cnt.hi.floor_mul(y) as u64).min(x_hi).min(y);
                lo <= hi
            })
        })
    }

    fn tick(&mut self) -> Option<StopReason> {
        self.nodes += 1;
        if self.nodes > self.ceiling {
            return Some(StopReason::NodeCeiling);
        }
        if self.nodes % 1024 == 1 && (self.interrupt)() {
            return Some(StopReason::Interrupted);
        }
        None
    }

    fn run(&mut self, n: usize) -> Result<Flow> {
        let start = [Class {
            size: n,
            known: 0,
            value: 0,
        }];
        if !self.local_ok(&start[0]) || !self.counts_ok(start.iter()) {
            return Ok(Flow::Continue);
        }
        if self.k.columns == 0 {
            return self.leaf(&start);
        }
        self.step(0, 0, &mut Vec::new(), &start)
    }

    fn step(&mut self, col: usize, idx: usize, done: &mut Vec<Class>, todo: &[Class]) -> Result<Flow> {
        if idx == todo.len() {
            if col + 1 == self.k.columns {
                return self.leaf(done);
            }
            let next = core::mem::take(done);
            let flow = self.step(col + 1, 0, &mut Vec::new(), &next);
            *done = next;
            return flow;
        }
        let bit = 1u64 << col;
        let class = todo[idx];
        for inside in (0..=class.size).rev() {
            if let Some(reason) = self.tick() {
                return Ok(Flow::Stop(reason));
            }
            let base = done.len();
            if inside > 0 {
                done.push(Class {
                    size: inside,
                    known: class.known | bit,
                    value: class.value | bit,
                });
            }
            if inside < class.size {
                done.push(Class {
                    size: class.size - inside,
                    known: class.known | bit,
                    value: class.value,
                });
            }
            let ok = done[base..].iter().all(|c| self.local_ok(c))
                && self.counts_ok(done.iter().chain(&todo[idx + 1..]));
            if ok {
                match self.step(col, idx + 1, done, todo)? {
                    Flow::Continue => {}
                    other => {
                        done.truncate(base);
                        return Ok(other);
                    }
                }
            }
            done.truncate(base);
        }
        Ok(Flow::Continue)
    }

    /// Whether `(from, to)` may be an edge of `role` given the labels.
    fn allowed(&self, role: usize, from: u64, to: u64) -> bool {
        self.k
            .existentials
            .iter()
            .filter(|e| e.role == role)
            .all(|e| from >> e.column & 1 == 1 || !e.filler.holds(to))
    }

    fn leaf(&mut self, classes: &[Class]) -> Result<Flow> {
        let k = self.k;
        for c in classes {
            for e in &k.existentials {
                if c.value >> e.column & 1 == 0 {
                    continue;
                }
                let witnessed = classes
                    .iter()
                    .any(|t| e.filler.holds(t.value) && self.allowed(e.role, c.value, t.value));
                if !witnessed {
                    return Ok(Flow::Continue);
                }
            }
        }

        let n: usize = classes.iter().map(|c| c.size).sum();
        let mut owner = Vec::with_capacity(n);
        for (ci, c) in classes.iter().enumerate() {
            owner.extend(core::iter::repeat_n(ci, c.size));
        }
        let mut model = Interpretation::with_size(n)?;
        for (col, name) in k.names.iter().enumerate() {
            let members = (0..n).filter(|&d| classes[owner[d]].value >> col & 1 == 1);
            model.set_concept(name.clone(), members);
        }
        for (ri, role) in k.roles.iter().enumerate() {
            model.declare_role(role.clone());
            let allowed: Vec<Vec<bool>> = classes
                .iter()
                .map(|a| classes.iter().map(|b| self.allowed(ri, a.value, b.value)).collect())
                .collect();
            for d in 0..n {
                for e in 0..n {
                    if allowed[owner[d]][owner[e]] {
                        model.add_edge(role, d, e);
                    }
                }
            }
        }
        if let Some(axiom) = model.satisfies_ontology(self.o).first_violation() {
            return Err(Error::ConstructionFailed {
                axiom,
                against: "searched",
            });
        }
        Ok(Flow::Found(model))
    }
}

/// Looks for the smallest model with at most `budget.max_domain` elements.
pub fn find_model(o: &Ontology, budget: SearchBudget) -> Result<SelVerdict> {
    find_model_with(o, budget, &mut || false).map(|r| r.verdict)
}

/// As [`find_model`], polling `interrupt` periodically; a `true` answer stops
/// the search with [`StopReason::Interrupted`].
pub fn find_model_with(
    o: &Ontology,
    budget: SearchBudget,
    interrupt: &mut dyn FnMut() -> bool,
) -> Result<SearchOutcome> {
    if budget.max_domain == 0 {
        return Err(Error::InvalidBudget("max_domain"));
    }
    if budget.node_ceiling == 0 {
        return Err(Error::InvalidBudget("node_ceiling"));
    }
    if budget.time_ceiling == Some(Duration::ZERO) {
        return Err(Error::InvalidBudget("time_ceiling"));
    }
    let k = Compiled::new(o)?;
    let mut search = Search {
        k: &k,
        o,
        nodes: 0,
        ceiling: budget.node_ceiling,
        interrupt,
    };
    for n in 1..=budget.max_domain {
        match search.run(n)? {
            Flow::Continue => {}
            Flow::Found(model) => {
                return Ok(SearchOutcome {
                    verdict: SelVerdict::Found(model),
                    nodes: search.nodes,
                })
            }
            Flow::Stop(reason) => {
                return Ok(SearchOutcome {
                    verdict: SelVerdict::BudgetExhausted(Progress {
                        refuted_up_to: n - 1,
                        domain_size: n,
                        nodes: search.nodes,
                        reason,
                    }),
                    nodes: search.nodes,
                })
            }
        }
    }
    Ok(SearchOutcome {
        verdict: SelVerdict::NoModelUpTo(budget.max_domain),
        nodes: search.nodes,
    })
}

/// Column layout of the search for `o`: concept names in first-occurrence
/// order, then the number of existential subconcepts.
pub fn search_columns(o: &Ontology) -> Result<(Vec<ConceptName>, usize)> {
    let k = Compiled::new(o)?;
    Ok((k.names, k.existentials.len()))
}
