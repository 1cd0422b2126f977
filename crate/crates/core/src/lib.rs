//! Prefix-free multicast hierarchies built from source-coding results.
//!
//! The crate covers six related toolkits:
//!
//! * [`source_coding`]: Kraft sums, D-ary Huffman codes and canonical codes
//!   built from length sets.
//! * [`graph`]: a small graph model with degree-distribution entropies,
//!   spanning-tree enumeration and minimum spanning trees.
//! * [`hierarchy`]: D-ary leader hierarchies, leader placement and
//!   path-reliability formulas.
//! * [`multicast`]: weighted-graph multicast plans (MST, embedded D-ary tree,
//!   Huffman placement) and their audit.
//! * [`gossip`]: BFS leveling, angular sectoring and a seeded simulator of
//!   level-controlled gossip.
//! * [`fusion`]: fault-tolerant interval fusion (M, Ω, N and S functions).
//!
//! Everything here is `no_std` with `alloc`; file formats and the command
//! line live in the companion `prefixnet` crate.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

mod error;
pub mod fusion;
pub mod gossip;
pub mod graph;
pub mod hierarchy;
pub mod multicast;
mod pmf;
pub mod source_coding;

pub use error::{Error, Result};
pub use pmf::{Pmf, PMF_TOLERANCE};
