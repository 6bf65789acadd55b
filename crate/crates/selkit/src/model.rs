//! The model file format.
//!
//! ```text
//! domain = d1 d2
//! concept A = d1
//! role r = (d1,d2) (d2,d2)
//! ```
//!
//! The `domain` line comes first. Names without a line have an empty
//! extension; a line with nothing after `=` declares an empty one.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use selkit_core::semantics::Interpretation;
use selkit_core::{ConceptName, RoleName};

use crate::cursor::{is_word_char, lines, Cursor};
use crate::error::Result;

fn is_element_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub fn read_model(text: &str) -> Result<Interpretation> {
    let mut model: Option<Interpretation> = None;
    let mut seen_concepts = BTreeSet::new();
    let mut seen_roles = BTreeSet::new();
    let mut last_line = 0;
    for (line, content) in lines(text) {
        last_line = line;
        let mut cur = Cursor::new(content, line);
        if cur.at_end() {
            continue;
        }
        let (kw, at) = cur.run(is_word_char);
        match (kw, model.as_mut()) {
            ("domain", None) => {
                cur.expect("=")?;
                let mut domain = Vec::new();
                while !cur.at_end() {
                    let (id, at) = cur.run(is_element_char);
                    if id.is_empty() {
                        return Err(cur.error(format!("expected a domain element, found {}", cur.describe())));
                    }
                    if domain.iter().any(|d| d == id) {
                        return Err(cur.error_at(at, format!("duplicate domain element `{id}`")));
                    }
                    domain.push(id.to_string());
                }
                model = Some(Interpretation::new(domain).map_err(|e| cur.error_at(at, e.to_string()))?);
            }
            ("domain", Some(_)) => return Err(cur.error_at(at, "second `domain` line")),
            (_, None) => return Err(cur.error_at(at, "expected the `domain` line first")),
            ("concept", Some(m)) => {
                let (w, name_at) = cur.run(is_word_char);
                let name = ConceptName::generated(w).map_err(|e| cur.error_at(name_at, e.to_string()))?;
                if !seen_concepts.insert(name.clone()) {
                    return Err(cur.error_at(name_at, format!("concept `{name}` listed twice")));
                }
                cur.expect("=")?;
                let mut members = Vec::new();
                while !cur.at_end() {
                    members.push(element(&mut cur, m)?);
                }
                m.set_concept(name, members);
            }
            ("role", Some(m)) => {
                let (w, name_at) = cur.run(is_word_char);
                let name = RoleName::generated(w).map_err(|e| cur.error_at(name_at, e.to_string()))?;
                if !seen_roles.insert(name.clone()) {
                    return Err(cur.error_at(name_at, format!("role `{name}` listed twice")));
                }
                cur.expect("=")?;
                m.declare_role(name.clone());
                while !cur.at_end() {
                    cur.expect("(")?;
                    let d = element(&mut cur, m)?;
                    cur.expect(",")?;
                    let e = element(&mut cur, m)?;
                    cur.expect(")")?;
                    m.add_edge(&name, d, e);
                }
            }
            _ => return Err(cur.error_at(at, "expected `concept` or `role`")),
        }
    }
    model.ok_or_else(|| crate::error::Error::syntax(last_line.max(1), 1, "missing `domain` line"))
}

fn element(cur: &mut Cursor<'_>, m: &Interpretation) -> Result<usize> {
    let (id, at) = cur.run(is_element_char);
    if id.is_empty() {
        return Err(cur.error(format!("expected a domain element, found {}", cur.describe())));
    }
    m.element_index(id)
        .ok_or_else(|| cur.error_at(at, format!("unknown domain element `{id}`")))
}

/// Writes every declared name, empty ones included, so reading the output
/// back gives an identical interpretation.
pub fn write_model(m: &Interpretation) -> String {
    let dom = m.domain();
    let mut out = String::from("domain =");
    for d in dom {
        write!(out, " {d}").unwrap();
    }
    out.push('\n');
    for (name, ext) in m.concepts() {
        write!(out, "concept {name} =").unwrap();
        for d in ext.ones() {
            write!(out, " {}", dom[d]).unwrap();
        }
        out.push('\n');
    }
    for role in m.role_names() {
        write!(out, "role {role} =").unwrap();
        for (d, e) in m.role_pairs(role) {
            write!(out, " ({},{})", dom[d], dom[e]).unwrap();
        }
        out.push('\n');
    }
    out
}
