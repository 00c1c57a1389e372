//! Quantum Grothendieck ring of an iNKS category, computed from the comultiplication on
//! pushforward classes `π(v,w)` and positivity of the dual canonical basis `L(v,w)`.
//!
//! The engine solves, grade by grade, for the transition `π(v,w) = Σ a_{v,v';w} L(v',w)`,
//! using casework from a [`Catalog`] for the strata it cannot decide. Products are read off
//! from `Δ(L(v,w))` by duality.

pub mod basis;
pub mod catalog;
pub mod element;
pub mod kappa;
pub mod laurent;
pub mod solver;

pub use basis::{FiltrationTerm, ReducedElement, Varsigma};
pub use catalog::{Catalog, CatalogFact, Fact, Template};
pub use element::GElement;
pub use kappa::{Generator, Image, RelationId, RelationInstance, RelationOutcome};
pub use laurent::{HalfLaurent, RatFn};
pub use solver::{d_form, Groth, PiTerm, SplitTable, Status, Transition};
