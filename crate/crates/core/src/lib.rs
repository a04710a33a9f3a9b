//! Combinatorics of the toric Hilbert scheme of a rank-two lattice.
//!
//! Given an `n × 2` integer matrix `B` whose columns span a lattice
//! `𝓛 ⊆ ℤⁿ`, the crate computes the Graver basis of `𝓛`, the chamber
//! complex of its Gale diagram, the Gröbner fan of the lattice ideal, every
//! monomial `𝓛`-graded ideal together with its flips and tangent space
//! dimension, and a report of consistency checks over all of them.

pub mod cli;
pub mod error;
pub mod geometry2d;
pub mod graver;
pub mod groebner;
pub mod hilbert_scheme;
pub mod ideals;
pub mod intlinalg;

pub use error::{Error, Result};
