//! Executable Spoiler strategies for the 0-alternation game: the plunge
//! and x1y1 lemmas, and the case analysis that wins on a connected uniform
//! inclusion-free graph `G` within `rk G + c + 1` moves against any `H ≇ G`.
//!
//! Strategies are written from Spoiler's point of view. `home` is the graph
//! he plays in and `away` the graph Duplicator answers in; either can sit on
//! the left of the board. A strategy never inspects Duplicator's plans, only
//! the replies the arena hands back.

mod lemmas;
mod main_case;
mod validate;

pub use lemmas::{strategy_plunge, strategy_x1y1, PlungeAgent, PlungeContext, X1y1Agent, X1y1Context};
pub use main_case::{strategy_main, MainAgent, MainStrategy};
pub use validate::{validate_strategy, BoundSource, GuaranteeCertificate, MatchRecord};

use crate::bitset::BitSet;
use crate::decomposition::{decompose, DecompositionView};
use crate::error::{Error, Result};
use crate::game::{Arena, Side, Stop};
use crate::graph::GraphData;
use serde::Serialize;

/// Which part of the argument a strategy is executing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    /// `H` has a cocomponent embedding into no cocomponent of `G`.
    Case1,
    /// A member of some layer of `G` properly embeds into the same layer
    /// of `H`.
    Case2,
    /// Case 2 after Duplicator's first reply, environments non-isomorphic.
    Subcase21,
    /// Case 2 (or 3) after Duplicator's first reply, environments
    /// isomorphic.
    Subcase22,
    /// `H` has a component isomorphic to `G`.
    Case3,
    Case4,
    /// x1y1 while `H_s` is not yet a cocomponent (`s <= k - l`).
    X1y1Extend,
    /// x1y1 once `H_s` is a cocomponent (`s = k - l + 1`).
    X1y1Exhaust,
    Plunge,
}

/// A snapshot taken whenever a strategy enters or advances a phase.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrategyState {
    pub phase: Phase,
    /// Rounds already played in the match.
    pub round: usize,
    pub l: usize,
    pub c: Option<usize>,
    /// `rk H_1 + l` in the x1y1 phases.
    pub k: Option<usize>,
    /// Chain length in the x1y1 phases.
    pub s: Option<usize>,
    /// The strategy's relabelled chain of pick pairs, as `(left, right)`.
    /// Swaps reorder this list; the transcript keeps the real order.
    pub chain: Vec<(usize, usize)>,
    /// Chain invariants of x1y1 (nested environments on both sides,
    /// consecutive home picks in different complement components,
    /// non-isomorphic environments). Checked in debug builds only.
    pub invariants_hold: Option<bool>,
}

impl StrategyState {
    fn new(phase: Phase, round: usize, l: usize) -> StrategyState {
        StrategyState {
            phase,
            round,
            l,
            c: None,
            k: None,
            s: None,
            chain: Vec::new(),
            invariants_hold: None,
        }
    }
}

/// One graph of the board, possibly restricted to a vertex subset, with
/// its decomposition. Vertex arguments are local indices.
#[derive(Clone, Debug)]
pub(crate) struct Part {
    side: Side,
    graph: GraphData,
    view: DecompositionView,
    to_global: Vec<usize>,
    to_local: Vec<Option<usize>>,
}

impl Part {
    fn full(side: Side, g: &GraphData) -> Result<Part> {
        Ok(Part {
            side,
            graph: g.clone(),
            view: decompose(g, None)?,
            to_global: (0..g.order()).collect(),
            to_local: (0..g.order()).map(Some).collect(),
        })
    }

    fn restricted(side: Side, g: &GraphData, keep: &[usize]) -> Result<Part> {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let sub = g.induced_subgraph(&keep)?;
        let mut to_local = vec![None; g.order()];
        for (i, &v) in keep.iter().enumerate() {
            to_local[v] = Some(i);
        }
        Ok(Part {
            side,
            view: decompose(&sub, None)?,
            graph: sub,
            to_global: keep,
            to_local,
        })
    }

    fn order(&self) -> usize {
        self.graph.order()
    }

    fn block(&self, v: usize, depth: usize) -> Result<&BitSet> {
        self.view.block_of(v, depth)
    }

    fn env(&self, v: usize, depth: usize) -> Result<GraphData> {
        Ok(self.view.environment(v, depth)?.graph)
    }

    /// Blocks at `depth + 1` inside `block` (a block at `depth`), with their
    /// member graphs.
    fn children(&self, block: &BitSet, depth: usize) -> Result<Vec<(BitSet, GraphData)>> {
        self.view
            .blocks(depth + 1)?
            .iter()
            .filter(|b| b.is_subset(block))
            .map(|b| Ok((b.clone(), self.view.member_graph(depth + 1, b)?)))
            .collect()
    }

    /// Adjacency of distinct `u`, `v` inside their common member of
    /// `Dec^depth`.
    fn member_adjacent(&self, u: usize, v: usize, depth: usize) -> bool {
        self.graph.has_edge(u, v) != (depth % 2 == 1)
    }

    fn local(&self, global: usize) -> Option<usize> {
        self.to_local.get(global).copied().flatten()
    }

    fn global(&self, v: usize) -> usize {
        self.to_global[v]
    }
}

fn internal(detail: impl Into<String>) -> Stop {
    Stop::Failed(Error::Internal(detail.into()))
}

/// Turns a failed assumption check inside a running strategy into an
/// internal error: the strategy itself should have guaranteed it.
fn expect_ok<T>(r: Result<T>) -> std::result::Result<T, Stop> {
    r.map_err(|e| internal(format!("strategy reached a state violating its own assumptions: {e}")))
}

/// Spoiler selects local vertex `v` of `home`, returning Duplicator's reply
/// as a local vertex of `away`.
fn select(arena: &mut Arena<'_>, home: &Part, away: &Part, v: usize) -> std::result::Result<usize, Stop> {
    let reply = arena.play(home.side, home.global(v))?;
    away.local(reply)
        .ok_or_else(|| internal("reply outside the tracked part of the board"))
}

fn is_picked(arena: &Arena<'_>, part: &Part, v: usize) -> bool {
    let g = part.global(v);
    arena.picks().iter().any(|&(a, b)| match part.side {
        Side::Left => a == g,
        Side::Right => b == g,
    })
}

/// `(left, right)` orientation of a pair given as `(away, home)` locals.
fn oriented(away: &Part, home: &Part, x: usize, y: usize) -> (usize, usize) {
    let (x, y) = (away.global(x), home.global(y));
    match home.side {
        Side::Left => (y, x),
        Side::Right => (x, y),
    }
}

/// Whether the arena holds the pick pair `(away x, home y)`.
fn has_pick(arena: &Arena<'_>, away: &Part, home: &Part, x: usize, y: usize) -> bool {
    let p = oriented(away, home, x, y);
    arena.picks().contains(&p)
}

fn check_board(arena: &Arena<'_>, g: &GraphData, g_side: Side, h: &GraphData) -> std::result::Result<(), Stop> {
    if arena.graph(g_side) != g || arena.graph(g_side.other()) != h {
        return Err(Stop::Failed(Error::InvalidArgument(
            "the board does not carry the graphs the strategy was built for".into(),
        )));
    }
    Ok(())
}
