//! Perfect separating families of complete graphs.
//!
//! A family of total orders of `[n]` separates a pair of disjoint edges
//! when one edge's endpoints both precede the other's; the family is
//! *perfect* when every disjoint pair is separated by the same number of
//! orders. This crate constructs such families recursively through finite
//! affine planes, verifies perfection (and the related sequence-coverage
//! and balance properties) by exact exhaustive counting, certifies the
//! linear-algebraic size lower bound with exact integer rank computations,
//! and determines minimum family sizes for small n by exhaustive search.
//!
//! The crate is `no_std` (with `alloc`) and fully deterministic; all
//! randomness is seeded explicitly. IO, file formats and the command-line
//! surface live in the companion `sepdim` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod certify;
pub mod classify;
pub mod construct;
pub mod error;
pub mod field;
pub mod perm;
pub mod plane;
pub mod search;
pub mod verify;

pub use error::Error;
pub use perm::{Edge, PermFamily, Permutation};
