//! Exact P-positions of Chomp on boards of up to four rows, and tools for
//! studying their structure.
//!
//! `solver` tabulates every P-position with first row at most `n_max`;
//! `oracle` is an independent brute-force reference; `store` reads and
//! writes tabulations; `analysis` and `report` measure and summarise them;
//! `cli` wraps it all behind the `chomp4` binary.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod oracle;
pub mod position;
pub mod report;
pub mod solver;
pub mod store;

pub use error::{ChompError, Result};
pub use position::{enumerate_layer, pack, successors, unpack, Move, PackedPosition, Position};
pub use solver::{build_triple_index, is_p, solve, Engine, MoveOrder, PSet, SolveConfig, TripleIndex};
