//! Workbench core for a family of epistemic logics whose underlying notion of
//! truth is intuitionistic: Hilbert-style proof checking, a decision procedure
//! for the propositional base with Kripke countermodels, and finite
//! lattice-based models with validation, enumeration, and countermodel search.

pub mod heyting;
pub mod ipc;
pub mod kernel;
pub mod model;
pub mod repro;
mod posets;
pub mod syntax;
pub mod verdict;

pub use syntax::{abstract_modal, parse, Formula, ParseError, Substitution};
pub use verdict::Verdict;
