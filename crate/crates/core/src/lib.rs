//! Decides tightness, overtwistedness, Stein fillability, and
//! contact-invariant vanishing for contact structures supported by open
//! books whose page is a four-punctured sphere.
//!
//! The crate has three layers:
//!
//! - exact slope arithmetic and mapping-class bookkeeping ([`farey`],
//!   [`mcg`]) feeding the decision procedures in [`classify`] and the
//!   transverse-disk validator in [`foliation`];
//! - the algebraic pairing engine over the torus algebra ([`torus`],
//!   [`graphs`], [`boxes`], [`library`], [`pairing`]) that assembles the
//!   hat complex of a reducible open book and tests whether its contact
//!   class bounds;
//! - an independent combinatorial engine on nice Heegaard diagrams
//!   ([`heegaard`]) reproducing the same vanishing answers from region
//!   lists.

pub mod boxes;
pub mod classify;
pub mod error;
pub mod f2;
pub mod farey;
pub mod foliation;
pub mod graphs;
pub mod heegaard;
pub mod json;
pub mod library;
pub mod mcg;
pub mod pairing;
pub mod torus;

pub use error::{Error, Result};

/// Version tag recorded in cached results; bump when outputs change.
pub const ENGINE_VERSION: &str = concat!("lantern-", env!("CARGO_PKG_VERSION"));
