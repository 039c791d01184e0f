//! Exact computation of q-deformed `gl_{ℓ+1}`-Whittaker functions and the
//! identities around them: q-Toda eigenvalue equations, characters of
//! quasi-map section spaces, fixed-point localization sums, the K-theoretic
//! J-function pairing and q-Todd genus series.
//!
//! The formal variable `q` is never evaluated numerically; every identity
//! is checked as an equality in `Q(q)` (or modulo a stated power of `q`).

pub mod arith;
pub mod characters;
pub mod error;
pub mod genus;
pub mod gz;
pub mod localization;
pub mod specialized;
pub mod toda;

pub use error::{Error, Result};
