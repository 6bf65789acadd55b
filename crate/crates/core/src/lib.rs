//! Reasoning core for the description logics EL, EL with atomic negation
//! (EL¬) and Statistical EL (SEL).
//!
//! Everything in this crate is a pure function over immutable values and
//! builds without `std`; file formats, the random generator and the command
//! line live in the companion `selkit` crate.
//!
//! * [`syntax`]: concepts, axioms, ontologies, sizes and signatures.
//! * [`semantics`]: finite interpretations and satisfaction of GCIs and
//!   probabilistic conditionals, plus exhaustive interpretation enumeration.
//! * [`normalform`]: the renaming transformation into the four normal-form
//!   shapes.
//! * [`elneg`]: type elimination deciding EL¬ consistency, with witnesses.
//! * [`selsearch`]: bounded, symmetry-reduced model finding for SEL.
//! * [`reduction`]: the EL¬ → SEL reduction and both model transformations.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;

pub mod elneg;
pub mod normalform;
pub mod rational;
pub mod reduction;
pub mod selsearch;
pub mod semantics;
pub mod syntax;

pub use error::Error;
pub use rational::Rational;
pub use syntax::{Axiom, Concept, ConceptName, Fragment, Literal, Ontology, RoleName};

pub type Result<T, E = Error> = core::result::Result<T, E>;
