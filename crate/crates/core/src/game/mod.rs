//! The Ehrenfeucht game on two graphs and its 0-alternation variant, in
//! which Spoiler chooses a graph in round 1 and must stay in it.
//!
//! Picks are stored as `(left vertex, right vertex)` pairs. Selecting an
//! already selected vertex is legal.

mod arena;
mod duplicator;
mod solver;

pub use arena::{play_match, Arena, SpoilerAgent, Stop, Transcript, TranscriptRound, Winner};
pub use duplicator::{Duplicator, GreedyDuplicator, OptimalDuplicator, RandomDuplicator};
pub use solver::{
    d0_lower_bound, d0_lower_bound_with, d0_pair, d0_pair_with, d_pair, d_pair_with, oracle_value, LowerBound,
    SolveLimits, Solver, SolverSpoiler,
};

use crate::graph::GraphData;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Full,
    ZeroAlternation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Least number of rounds Spoiler needs, or a bound it was not found within.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GameValue {
    Within(usize),
    /// Spoiler has no win within this many rounds.
    Beyond(usize),
}

/// A game position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameConfig {
    pub left: GraphData,
    pub right: GraphData,
    pub variant: Variant,
    /// The graph Spoiler is locked to in the 0-alternation variant.
    pub spoiler_side: Option<Side>,
    pub picks: Vec<(usize, usize)>,
}

impl GameConfig {
    pub fn new(left: GraphData, right: GraphData, variant: Variant) -> GameConfig {
        GameConfig {
            left,
            right,
            variant,
            spoiler_side: None,
            picks: Vec::new(),
        }
    }

    pub fn graph(&self, side: Side) -> &GraphData {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }
}

/// A borrowed view of a position, handed to Duplicators.
#[derive(Clone, Copy, Debug)]
pub struct Position<'a> {
    pub left: &'a GraphData,
    pub right: &'a GraphData,
    pub variant: Variant,
    pub spoiler_side: Option<Side>,
    pub picks: &'a [(usize, usize)],
}

impl<'a> Position<'a> {
    pub fn graph(&self, side: Side) -> &'a GraphData {
        match side {
            Side::Left => self.left,
            Side::Right => self.right,
        }
    }
}

impl GameConfig {
    pub fn position(&self) -> Position<'_> {
        Position {
            left: &self.left,
            right: &self.right,
            variant: self.variant,
            spoiler_side: self.spoiler_side,
            picks: &self.picks,
        }
    }
}

/// Whether `x_i ↦ y_i` is a partial isomorphism: equalities and
/// adjacencies (both orientations on digraphs, loops included) agree.
pub fn check_partial_isomorphism(picks: &[(usize, usize)], left: &GraphData, right: &GraphData) -> bool {
    picks.iter().enumerate().all(|(i, &(x, y))| {
        picks[..=i]
            .iter()
            .all(|&(a, b)| compatible(left, right, (x, y), (a, b)))
    })
}

/// Compatibility of two pick pairs (possibly the same pair, for loops).
#[inline]
pub(crate) fn compatible(left: &GraphData, right: &GraphData, (x, y): (usize, usize), (a, b): (usize, usize)) -> bool {
    (x == a) == (y == b) && left.has_edge(x, a) == right.has_edge(y, b) && left.has_edge(a, x) == right.has_edge(b, y)
}
