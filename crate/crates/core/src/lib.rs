//! Hamilton cycles in the middle levels graph.
//!
//! The middle levels graph `M_n` is the subgraph of the `(2n+1)`-cube induced
//! by the words with `n` or `n+1` ones. This crate builds a Hamilton cycle of
//! `M_n` in two stages:
//!
//! 1. A cycle factor: every vertex is written as `⟨x, b, s⟩ = σ^s(x b)` for a
//!    Dyck word `x`, and the single-bit map [`factor::f_map`] partitions the
//!    vertices into cycles, one per plane tree with `n` edges.
//! 2. Gluing: every pullable tree `x` yields a 6-cycle that merges two factor
//!    cycles. A spanning set of such gluings, found by reducing every tree to
//!    the star, turns the factor into one Hamilton cycle.
//!
//! [`hamilton::HamiltonStream`] walks the resulting cycle one vertex at a
//! time in `O(n)` per step; [`verify`] checks streams and every structural
//! lemma exhaustively for small `n`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod dyck;
mod error;
pub mod factor;
pub mod gluing;
pub mod hamilton;
pub mod tree;
pub mod triple;
pub mod verify;
pub mod word;

pub use error::{Error, PlanError};
pub use gluing::GluingPlan;
pub use hamilton::HamiltonStream;
pub use tree::{ClassId, OrderedTree};
pub use triple::{MiddleLevels, Triple};
pub use word::BitWord;
