//! The line-oriented ontology format.
//!
//! ```text
//! # comment
//! gci A <= (ex r . top)
//! cond A | top in [1/2, 1/2]
//! ```
//!
//! Grammar, one axiom per line:
//!
//! ```text
//! Gci     := "gci" Concept "<=" Concept
//! Cond    := "cond" Concept "|" Concept "in" "[" Rat "," Rat "]"
//! Concept := "top" | NAME | "!" NAME | "(" Concept "&" Concept ")" | "(" "ex" NAME "." Concept ")"
//! Rat     := INT "/" INT | DECIMAL | INT
//! ```

use selkit_core::{Axiom, Concept, ConceptName, Ontology, Rational, RoleName};

use crate::cursor::{is_word_char, lines, Cursor};
use crate::error::Result;

/// Whether names containing the reserved `__` are accepted.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Names {
    /// Reject reserved names, as for hand-written input.
    #[default]
    Strict,
    /// Accept reserved names, as found in normalized or reduced files.
    Generated,
}

pub fn parse_ontology(text: &str) -> Result<Ontology> {
    parse_ontology_with(text, Names::Strict)
}

pub fn parse_ontology_with(text: &str, names: Names) -> Result<Ontology> {
    let mut axioms = Vec::new();
    for (line, content) in lines(text) {
        let mut cur = Cursor::new(content, line);
        if cur.at_end() {
            continue;
        }
        axioms.push(Parser { cur, names }.axiom()?);
    }
    Ok(Ontology::new(axioms)?)
}

/// Parses a single concept such as `(A & (ex r . !B))`.
pub fn parse_concept(text: &str, names: Names) -> Result<Concept> {
    let mut p = Parser {
        cur: Cursor::new(text, 1),
        names,
    };
    let c = p.concept()?;
    p.cur.finish()?;
    Ok(c)
}

/// One axiom per line in the canonical form accepted by [`parse_ontology`].
pub fn print_ontology(o: &Ontology) -> String {
    o.to_string()
}

struct Parser<'a> {
    cur: Cursor<'a>,
    names: Names,
}

impl<'a> Parser<'a> {
    fn axiom(&mut self) -> Result<Axiom> {
        let (kw, at) = self.cur.run(is_word_char);
        let ax = match kw {
            "gci" => {
                let lhs = self.concept()?;
                self.cur.expect("<=")?;
                Axiom::gci(lhs, self.concept()?)
            }
            "cond" => {
                let concept = self.concept()?;
                self.cur.expect("|")?;
                let given = self.concept()?;
                self.keyword("in")?;
                self.cur.skip_ws();
                let bracket = self.cur.pos();
                self.cur.expect("[")?;
                let lo = self.rational()?;
                self.cur.expect(",")?;
                let hi = self.rational()?;
                self.cur.expect("]")?;
                Axiom::conditional(concept, given, lo, hi).map_err(|e| self.cur.error_at(bracket, e.to_string()))?
            }
            "" => return Err(self.cur.error(format!("expected `gci` or `cond`, found {}", self.cur.describe()))),
            other => return Err(self.cur.error_at(at, format!("expected `gci` or `cond`, found `{other}`"))),
        };
        self.cur.finish()?;
        Ok(ax)
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        let (word, at) = self.cur.run(is_word_char);
        if word == kw {
            return Ok(());
        }
        self.cur.reset(at);
        Err(self.cur.error(format!("expected `{kw}`, found {}", self.cur.describe())))
    }

    fn rational(&mut self) -> Result<Rational> {
        let (text, at) = self.cur.run(|c| c.is_ascii_digit() || c == '/' || c == '.');
        if text.is_empty() {
            return Err(self.cur.error(format!("expected a number, found {}", self.cur.describe())));
        }
        text.parse().map_err(|e: selkit_core::Error| self.cur.error_at(at, e.to_string()))
    }

    fn word(&mut self, what: &str) -> Result<(&'a str, usize)> {
        let (w, at) = self.cur.run(is_word_char);
        if w.is_empty() {
            return Err(self.cur.error(format!("expected {what}, found {}", self.cur.describe())));
        }
        Ok((w, at))
    }

    fn concept_name(&mut self) -> Result<ConceptName> {
        let (w, at) = self.word("a concept name")?;
        let name = match self.names {
            Names::Strict => ConceptName::new(w),
            Names::Generated => ConceptName::generated(w),
        };
        name.map_err(|e| self.cur.error_at(at, e.to_string()))
    }

    fn role_name(&mut self) -> Result<RoleName> {
        let (w, at) = self.word("a role name")?;
        let name = match self.names {
            Names::Strict => RoleName::new(w),
            Names::Generated => RoleName::generated(w),
        };
        name.map_err(|e| self.cur.error_at(at, e.to_string()))
    }

    fn concept(&mut self) -> Result<Concept> {
        match self.cur.peek() {
            Some('(') => {
                self.cur.expect("(")?;
                let start = self.cur.pos();
                let (w, _) = self.cur.run(is_word_char);
                let c = if w == "ex" {
                    let role = self.role_name()?;
                    self.cur.expect(".")?;
                    Concept::Exists(role, Box::new(self.concept()?))
                } else {
                    self.cur.reset(start);
                    let lhs = self.concept()?;
                    self.cur.expect("&")?;
                    Concept::and(lhs, self.concept()?)
                };
                self.cur.expect(")")?;
                Ok(c)
            }
            Some('!') => {
                self.cur.expect("!")?;
                Ok(Concept::NegAtom(self.concept_name()?))
            }
            Some(c) if c.is_ascii_alphanumeric() || c == '_' => {
                let start = self.cur.pos();
                let (w, _) = self.cur.run(is_word_char);
                if w == "top" {
                    return Ok(Concept::Top);
                }
                self.cur.reset(start);
                Ok(Concept::Atom(self.concept_name()?))
            }
            _ => Err(self.cur.error(format!("expected a concept, found {}", self.cur.describe()))),
        }
    }
}
