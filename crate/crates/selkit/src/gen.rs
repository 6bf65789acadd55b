//! Seeded random ontologies for differential testing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use selkit_core::{Axiom, Concept, ConceptName, Ontology, RoleName};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenFragment {
    El,
    ElNeg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenParams {
    pub seed: u64,
    pub n_concepts: usize,
    pub n_roles: usize,
    pub n_axioms: usize,
    pub max_depth: usize,
    pub fragment: GenFragment,
    /// Only emit the four normal-form shapes; `max_depth` is then ignored.
    pub normal_form: bool,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            seed: 0,
            n_concepts: 3,
            n_roles: 1,
            n_axioms: 4,
            max_depth: 2,
            fragment: GenFragment::ElNeg,
            normal_form: false,
        }
    }
}

/// `A, B, …, Z, A1, B1, …`
pub fn concept_name(i: usize) -> ConceptName {
    let letter = char::from(b'A' + (i % 26) as u8);
    let s = match i / 26 {
        0 => letter.to_string(),
        k => format!("{letter}{k}"),
    };
    ConceptName::new(&s).expect("valid name")
}

/// `r, s, t, u, v, w, r1, …`
pub fn role_name(i: usize) -> RoleName {
    const LETTERS: [char; 6] = ['r', 's', 't', 'u', 'v', 'w'];
    let letter = LETTERS[i % LETTERS.len()];
    let s = match i / LETTERS.len() {
        0 => letter.to_string(),
        k => format!("{letter}{k}"),
    };
    RoleName::new(&s).expect("valid name")
}

struct Gen<'a> {
    p: &'a GenParams,
    rng: ChaCha8Rng,
}

impl Gen<'_> {
    fn literal(&mut self) -> Concept {
        let p = self.p;
        if p.n_concepts == 0 || self.rng.gen_ratio(1, 6) {
            return Concept::Top;
        }
        let name = concept_name(self.rng.gen_range(0..p.n_concepts));
        if p.fragment == GenFragment::ElNeg && self.rng.gen_ratio(1, 3) {
            Concept::NegAtom(name)
        } else {
            Concept::Atom(name)
        }
    }

    fn role(&mut self) -> RoleName {
        role_name(self.rng.gen_range(0..self.p.n_roles))
    }

    fn concept(&mut self, depth: usize) -> Concept {
        if depth == 0 || self.rng.gen_bool(0.5) {
            return self.literal();
        }
        if self.p.n_roles > 0 && self.rng.gen_bool(0.5) {
            let role = self.role();
            Concept::exists(&role, self.concept(depth - 1))
        } else {
            Concept::and(self.concept(depth - 1), self.concept(depth - 1))
        }
    }

    fn normal_axiom(&mut self) -> Axiom {
        let shapes = if self.p.n_roles > 0 { 4 } else { 2 };
        match self.rng.gen_range(0..shapes) {
            0 => Axiom::gci(self.literal(), self.literal()),
            1 => Axiom::gci(Concept::and(self.literal(), self.literal()), self.literal()),
            2 => {
                let lhs = self.literal();
                let role = self.role();
                Axiom::gci(lhs, Concept::exists(&role, self.literal()))
            }
            _ => {
                let role = self.role();
                let filler = self.literal();
                Axiom::gci(Concept::exists(&role, filler), self.literal())
            }
        }
    }
}

/// Draws `n_axioms` GCIs; the same parameters always give the same ontology.
pub fn gen_random(p: &GenParams) -> Ontology {
    let mut g = Gen {
        p,
        rng: ChaCha8Rng::seed_from_u64(p.seed),
    };
    let axioms = (0..p.n_axioms.max(1))
        .map(|_| {
            if p.normal_form {
                g.normal_axiom()
            } else {
                let lhs = g.concept(p.max_depth);
                Axiom::gci(lhs, g.concept(p.max_depth))
            }
        })
        .collect();
    Ontology::new(axioms).expect("generated names are disjoint and negation-only")
}
