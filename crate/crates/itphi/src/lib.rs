//! Homological invariants of finite-dimensional algebras over prime fields.
//!
//! The crate computes the Igusa-Todorov function phi and the phi-dimension of
//! algebras presented by bound quivers (or by raw structure constants), along
//! with the surrounding calculus: exact linear algebra over F_p and Z, syzygies
//! and minimal projective resolutions, Ext/Tor dimensions, Krull-Schmidt
//! decomposition with certified indecomposability, tilting-module verification,
//! endomorphism algebras and one-point extensions.
//!
//! Algebras and modules are immutable values, cheap to clone and safe to
//! share across threads. The class registry is a single-writer store; build
//! per-worker registries under concurrency and combine them with
//! [`decomp::IsoRegistry::merge`].

pub mod algebra;
pub mod decomp;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod module;
pub mod phi;
pub mod phidim;
pub mod quiver;
pub mod tilting;

mod poly;

pub use error::{Error, Result};
