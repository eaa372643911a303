//! First-order definability of graphs without quantifier alternation.
//!
//! The crate provides graph primitives, the complement decomposition and
//! rank, a tower construction of succinctly definable graphs, an exact
//! solver for the 0-alternation Ehrenfeucht game, executable Spoiler
//! strategies and first-order formula tools.

pub mod bitset;
pub mod construction;
pub mod decomposition;
pub mod error;
pub mod game;
pub mod graph;
pub mod harness;
pub mod logic;
pub mod strategy;

pub use error::{Error, Result};
pub use graph::{GraphData, VertexMap};
