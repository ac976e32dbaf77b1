//! Solvers and checkers for leaf-to-leaf cactus augmentation.
//!
//! A cactus is a connected multigraph in which every edge lies in exactly one
//! cycle; its minimum cuts are the 2-cuts obtained by removing two edges of a
//! common cycle. The augmentation problem asks for a smallest set of links
//! (extra vertex pairs) crossing every such cut, which raises the
//! edge-connectivity of the cactus from 2 to 3. Instances of the tree
//! augmentation problem embed by doubling every tree edge.
//!
//! The crate provides:
//!
//! * the validated instance model and cut machinery ([`cactus`]),
//! * instance surgery: splitting, link contraction, residual instances and
//!   the supernode leafification used to restore leaf-to-leaf form
//!   ([`transforms`]),
//! * the matching-based solver: bad-link filtering, maximum-weight matching
//!   over the leaves, and an integral directed-cut cover that completes the
//!   matching to a feasible solution ([`matching`], [`completion`]),
//! * exact solvers used both as production fallback on narrow instances and
//!   as verification oracles ([`exact`]),
//! * structural minimality predicates on solutions ([`minimality`]),
//! * the numeric side of the analysis: the `g`/`gain` functions, the
//!   b-condition grid check and the approximation-factor optimization
//!   ([`analysis`]).
//!
//! The crate is `no_std` (with `alloc`); all IO, file formats and generators
//! live in the companion `cacaug` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod analysis;
pub mod bitset;
pub mod cactus;
pub mod completion;
pub mod exact;
pub mod iso;
pub mod matching;
pub mod minimality;
pub mod transforms;

mod blossom;
mod cover;

pub use bitset::BitSet;
pub use cactus::{
    Cactus, CactusError, CheckOutcome, Instance, Link, LinkClass, PrincipalSubcactus, Solution,
    TwoCut,
};
pub use transforms::{TapInstance, VertexMap};

/// Vertex identifier; instances use dense ids `0..vertex_count`.
pub type Vertex = usize;

/// Stable index into an instance's link list.
pub type LinkId = usize;
