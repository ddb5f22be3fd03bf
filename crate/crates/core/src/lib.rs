//! Exact-arithmetic toolkit for parabolic contractions `q = p ⋉ (g/p)^a` of
//! the classical Lie algebras.
//!
//! The crate builds matrix models of `sl`, `sp` and `so`, their parabolic
//! subalgebras and contractions, evaluates the characteristic-polynomial
//! invariants and their highest bi-homogeneous components, and runs
//! reproducible verification suites over all of it. Every computation is
//! exact over the rationals; randomized checks are seeded and report their
//! Schwartz-Zippel failure bounds.

pub mod cli;
pub mod contraction;
pub mod error;
pub mod exactcore;
pub mod invariants;
pub mod liealg;
pub mod partitions;
pub mod richardson;
pub mod sampling;
pub mod verify;

pub use error::{Error, Result};
