//! Permutation groups and intervals `[U, G]` of their subgroup lattices.
//!
//! The crate is `no_std` (with `alloc`). File formats, the CLI and timing
//! live in the companion `interval` crate.

#![no_std]

extern crate alloc;

pub mod actions;
pub mod block;
mod chain;
pub mod config;
pub mod conj;
pub mod dcoset;
pub mod error;
pub mod group;
pub mod lattice;
pub mod maximal;
pub mod named;
pub mod oracle;
pub mod orbit;
pub mod perm;
pub mod sylow;
pub mod util;

pub use config::Caps;
pub use error::{CapKind, Error, Result};
pub use group::{PermGroup, SubgroupKey};
pub use lattice::LatticeInterval;
pub use perm::Permutation;
