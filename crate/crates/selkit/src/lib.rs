//! File formats, random generation and the command-line front end for
//! [`selkit_core`].

mod cursor;
mod error;

pub mod cli;
pub mod gen;
pub mod model;
pub mod text;

pub use error::{Error, Result};
pub use selkit_core as core;
