//! Exact combinatorics for iNKS categories of Dynkin iquivers.
//!
//! Layers, bottom up:
//!
//! - [`rootdata`]: iquivers, Cartan and Euler forms, positive roots.
//! - [`dercat`]: the knitted repetition quiver, τ, Σ, ϱ̂ and Hom dimensions in the derived category.
//! - [`inks`]: the folded quiver with frozen vertices, `C_q`, canonical vectors, l-dominant pairs.
//! - [`groth`]: half-Laurent scalars, the π/L transition solver, products, relation checks.
//! - [`oracle`]: explicit rational representations used to cross-check the calculus.
//! - [`cli`]: the `iqg` front end.

pub mod cli;
pub mod dercat;
pub mod error;
pub mod fixtures;
pub mod groth;
pub mod inks;
pub mod oracle;
pub mod rootdata;

pub use error::{Error, Result};
