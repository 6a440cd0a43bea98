//! Combinatorial classification of simple Morse functions with four critical
//! points on immersed 2-spheres whose double curves have no triple points.
//!
//! The pipeline has four layers, one per module:
//!
//! * [`strata`] — the stratification itself: dual trees of the cut-up sphere,
//!   pairings of their edges into double curves, the closed-up surface each
//!   region contributes, and integer lower bounds on critical-point counts.
//! * [`reeb`] — Reeb graphs of simple Morse functions: directed multigraphs
//!   with totally ordered vertices, validation, Betti numbers, and exhaustive
//!   generation of the optimal ones for small genus.
//! * [`distinguish`] — Reeb graphs decorated with the monotone images of the
//!   double-curve arcs, their pairing, and the ordered path partitions at
//!   saddles; canonical keys and the fibre-equivalence test.
//! * [`catalog`] — full Morse structures over a stratification, built two
//!   independent ways (explicit case analysis and exhaustive search) and
//!   cross-validated against each other.
//!
//! Everything is exact, deterministic, and small: no object here has more
//! than a handful of vertices, so each canonical form is a minimum over an
//! explicitly enumerated symmetry group.
//!
//! The crate is `no_std` (with `alloc`); IO, serialization formats, and the
//! command-line surface live in the companion `immersed-morse-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod catalog;
pub mod distinguish;
pub mod reeb;
pub mod strata;
