//! Exact game values by memoized AND/OR search with iterative deepening.
//!
//! A position is the unordered set of pick pairs plus, in the 0-alternation
//! variant, the side Spoiler is locked to. Round order does not affect
//! which continuations are legal or winning, so the set is a sound key.

use super::{check_partial_isomorphism, compatible, Arena, GameValue, Side, SpoilerAgent, Stop, Variant};
use crate::error::{invalid, Error, Result};
use crate::graph::{is_isomorphic, GraphData};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;

/// Search caps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveLimits {
    pub max_rounds: usize,
    /// Cap on the smaller of the two orders.
    pub max_small_order: usize,
    /// Cap on the larger of the two orders.
    pub max_large_order: usize,
    /// Cap on visited search nodes per query.
    pub max_nodes: u64,
}

impl Default for SolveLimits {
    fn default() -> Self {
        SolveLimits {
            max_rounds: 9,
            max_small_order: 12,
            max_large_order: 30,
            max_nodes: 2_000_000_000,
        }
    }
}

/// Pick pairs are packed 10 bits each, so at most 12 fit in the key.
const KEY_PICKS: usize = 12;

#[derive(Clone, Copy, Default)]
struct Entry {
    /// Least depth known to be winning for Spoiler.
    win_at: Option<u8>,
    /// Largest depth known not to be winning.
    lose_upto: u8,
}

/// A solver for one pair of graphs and one variant.
pub struct Solver {
    left: GraphData,
    right: GraphData,
    variant: Variant,
    limits: SolveLimits,
    memo: HashMap<(u8, u128), Entry>,
    nodes: u64,
    overflow: bool,
}

impl Solver {
    pub fn new(left: &GraphData, right: &GraphData, variant: Variant) -> Result<Solver> {
        Solver::with_limits(left, right, variant, SolveLimits::default())
    }

    pub fn with_limits(left: &GraphData, right: &GraphData, variant: Variant, limits: SolveLimits) -> Result<Solver> {
        if left.is_directed() != right.is_directed() {
            return Err(invalid!("cannot play on a graph and a digraph"));
        }
        let (small, large) = if left.order() <= right.order() {
            (left.order(), right.order())
        } else {
            (right.order(), left.order())
        };
        if small > limits.max_small_order || large > limits.max_large_order {
            return Err(Error::SizeLimit(format!(
                "orders {small} and {large} exceed the solver caps {} and {}",
                limits.max_small_order, limits.max_large_order
            )));
        }
        if limits.max_rounds > KEY_PICKS || large > 31 {
            return Err(Error::SizeLimit(format!(
                "the solver supports at most {KEY_PICKS} rounds and order 31"
            )));
        }
        Ok(Solver {
            left: left.clone(),
            right: right.clone(),
            variant,
            limits,
            memo: HashMap::new(),
            nodes: 0,
            overflow: false,
        })
    }

    pub fn left(&self) -> &GraphData {
        &self.left
    }

    pub fn right(&self) -> &GraphData {
        &self.right
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn limits(&self) -> SolveLimits {
        self.limits
    }

    /// Search nodes visited so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    fn key(&self, side: Option<Side>, picks: &[(usize, usize)]) -> (u8, u128) {
        let nr = self.right.order();
        let mut codes: Vec<u128> = picks.iter().map(|&(x, y)| (x * nr + y + 1) as u128).collect();
        codes.sort_unstable();
        codes.dedup();
        let packed = codes.iter().fold(0u128, |acc, &c| acc << 10 | c);
        let s = match side {
            None => 0,
            Some(Side::Left) => 1,
            Some(Side::Right) => 2,
        };
        (s, packed)
    }

    fn sides(&self, side: Option<Side>) -> &'static [Side] {
        match (self.variant, side) {
            (Variant::ZeroAlternation, Some(Side::Left)) => &[Side::Left],
            (Variant::ZeroAlternation, Some(Side::Right)) => &[Side::Right],
            _ => &[Side::Left, Side::Right],
        }
    }

    fn graph(&self, side: Side) -> &GraphData {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    /// Whether adding `pair` keeps the picks a partial isomorphism.
    fn extends(&self, picks: &[(usize, usize)], pair: (usize, usize)) -> bool {
        compatible(&self.left, &self.right, pair, pair)
            && picks.iter().all(|&p| compatible(&self.left, &self.right, pair, p))
    }

    fn locked(&self, side: Option<Side>, s: Side) -> Option<Side> {
        match self.variant {
            Variant::ZeroAlternation => Some(s),
            Variant::Full => side,
        }
    }

    /// Whether Spoiler wins within `k` more rounds from a position whose
    /// picks form a partial isomorphism.
    fn win(&mut self, side: Option<Side>, picks: &mut Vec<(usize, usize)>, k: usize) -> bool {
        if k == 0 || self.overflow {
            return false;
        }
        self.nodes += 1;
        if self.nodes > self.limits.max_nodes {
            self.overflow = true;
            return false;
        }
        let key = self.key(side, picks);
        let entry = self.memo.get(&key).copied().unwrap_or_default();
        if entry.win_at.is_some_and(|w| (w as usize) <= k) {
            return true;
        }
        if (entry.lose_upto as usize) >= k {
            return false;
        }
        let mut won = false;
        'moves: for &s in self.sides(side) {
            let next_side = self.locked(side, s);
            for v in 0..self.graph(s).order() {
                let picked = picks
                    .iter()
                    .any(|&(x, y)| if s == Side::Left { x == v } else { y == v });
                if picked {
                    continue;
                }
                let mut refuted = false;
                for z in 0..self.graph(s.other()).order() {
                    let pair = if s == Side::Left { (v, z) } else { (z, v) };
                    if !self.extends(picks, pair) {
                        continue;
                    }
                    if k == 1 {
                        refuted = true;
                        break;
                    }
                    picks.push(pair);
                    let w = self.win(next_side, picks, k - 1);
                    picks.pop();
                    if !w {
                        refuted = true;
                        break;
                    }
                }
                if !refuted {
                    won = true;
                    break 'moves;
                }
            }
        }
        if self.overflow {
            return false;
        }
        let e = self.memo.entry(key).or_default();
        if won {
            e.win_at = Some(e.win_at.map_or(k as u8, |w| w.min(k as u8)));
        } else {
            e.lose_upto = e.lose_upto.max(k as u8);
        }
        won
    }

    fn checked(&self) -> Result<()> {
        if self.overflow {
            return Err(Error::SizeLimit(format!(
                "search exceeded {} nodes",
                self.limits.max_nodes
            )));
        }
        Ok(())
    }

    /// Whether Spoiler wins within `k` more rounds from the given position.
    pub fn wins_within(&mut self, side: Option<Side>, picks: &[(usize, usize)], k: usize) -> Result<bool> {
        if !check_partial_isomorphism(picks, &self.left, &self.right) {
            return Ok(true);
        }
        if picks.len() + k > KEY_PICKS {
            return Err(Error::SizeLimit(format!("positions are limited to {KEY_PICKS} picks")));
        }
        self.nodes = 0;
        self.overflow = false;
        let mut p = picks.to_vec();
        let w = self.win(side, &mut p, k);
        self.checked()?;
        Ok(w)
    }

    /// Least number of further rounds Spoiler needs, searched up to `cap`.
    /// Positions already lost by Duplicator have value 0.
    pub fn value(&mut self, side: Option<Side>, picks: &[(usize, usize)], cap: usize) -> Result<GameValue> {
        if !check_partial_isomorphism(picks, &self.left, &self.right) {
            return Ok(GameValue::Within(0));
        }
        for k in 1..=cap {
            if self.wins_within(side, picks, k)? {
                return Ok(GameValue::Within(k));
            }
        }
        Ok(GameValue::Beyond(cap))
    }

    /// Value of the initial position, up to the configured round cap.
    pub fn game_value(&mut self) -> Result<GameValue> {
        let cap = self.limits.max_rounds;
        self.value(None, &[], cap)
    }

    /// A first Spoiler move that wins within `k` rounds, in deterministic
    /// order (left before right, lower vertices first).
    pub fn winning_move(
        &mut self,
        side: Option<Side>,
        picks: &[(usize, usize)],
        k: usize,
    ) -> Result<Option<(Side, usize)>> {
        if k == 0 || !check_partial_isomorphism(picks, &self.left, &self.right) {
            return Ok(None);
        }
        for &s in self.sides(side) {
            let next = self.locked(side, s);
            for v in 0..self.graph(s).order() {
                let mut ok = true;
                for z in 0..self.graph(s.other()).order() {
                    let pair = if s == Side::Left { (v, z) } else { (z, v) };
                    if !self.extends(picks, pair) {
                        continue;
                    }
                    let mut p = picks.to_vec();
                    p.push(pair);
                    if k == 1 || !self.wins_within(next, &p, k - 1)? {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    return Ok(Some((s, v)));
                }
            }
        }
        Ok(None)
    }
}

fn pair_value(g: &GraphData, h: &GraphData, variant: Variant, limits: SolveLimits) -> Result<usize> {
    if is_isomorphic(g, h) {
        return Err(invalid!("isomorphic graphs are not separated by any sentence"));
    }
    let mut solver = Solver::with_limits(g, h, variant, limits)?;
    match solver.game_value()? {
        GameValue::Within(k) => Ok(k),
        GameValue::Beyond(k) => Err(Error::SizeLimit(format!("no Spoiler win within {k} rounds"))),
    }
}

/// Least `k` such that Spoiler wins the `k`-round 0-alternation game.
pub fn d0_pair(g: &GraphData, h: &GraphData) -> Result<usize> {
    d0_pair_with(g, h, SolveLimits::default())
}

pub fn d0_pair_with(g: &GraphData, h: &GraphData, limits: SolveLimits) -> Result<usize> {
    pair_value(g, h, Variant::ZeroAlternation, limits)
}

/// Least `k` such that Spoiler wins the unrestricted `k`-round game.
pub fn d_pair(g: &GraphData, h: &GraphData) -> Result<usize> {
    d_pair_with(g, h, SolveLimits::default())
}

pub fn d_pair_with(g: &GraphData, h: &GraphData, limits: SolveLimits) -> Result<usize> {
    pair_value(g, h, Variant::Full, limits)
}

/// Game value by plain recursion without memoization or move pruning,
/// searched up to `cap` rounds. `None` when Spoiler has no win within `cap`.
pub fn oracle_value(g: &GraphData, h: &GraphData, variant: Variant, cap: usize) -> Option<usize> {
    fn spoiler_wins(
        g: &GraphData,
        h: &GraphData,
        variant: Variant,
        side: Option<Side>,
        picks: &mut Vec<(usize, usize)>,
        k: usize,
    ) -> bool {
        if !check_partial_isomorphism(picks, g, h) {
            return true;
        }
        if k == 0 {
            return false;
        }
        let sides: Vec<Side> = match (variant, side) {
            (Variant::ZeroAlternation, Some(s)) => vec![s],
            _ => vec![Side::Left, Side::Right],
        };
        sides.into_iter().any(|s| {
            let (here, there) = if s == Side::Left { (g, h) } else { (h, g) };
            (0..here.order()).any(|v| {
                (0..there.order()).all(|z| {
                    picks.push(if s == Side::Left { (v, z) } else { (z, v) });
                    let w = spoiler_wins(g, h, variant, Some(s), picks, k - 1);
                    picks.pop();
                    w
                })
            })
        })
    }
    (0..=cap).find(|&k| spoiler_wins(g, h, variant, None, &mut Vec::new(), k))
}

/// A lower bound on the 0-alternation depth of `g`: the largest pair value
/// against the members of a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBound {
    pub value: usize,
    /// Index of the first family member attaining the value.
    pub witness: Option<usize>,
    /// Members skipped because they are isomorphic to `g`.
    pub skipped: Vec<usize>,
}

/// Maximum of [`d0_pair`] over `family`; members isomorphic to `g` are
/// skipped and reported.
pub fn d0_lower_bound(g: &GraphData, family: &[GraphData]) -> Result<LowerBound> {
    d0_lower_bound_with(g, family, SolveLimits::default())
}

pub fn d0_lower_bound_with(g: &GraphData, family: &[GraphData], limits: SolveLimits) -> Result<LowerBound> {
    let values: Vec<Result<Option<usize>>> = family
        .par_iter()
        .map(|h| {
            if is_isomorphic(g, h) {
                Ok(None)
            } else {
                d0_pair_with(g, h, limits).map(Some)
            }
        })
        .collect();
    let mut out = LowerBound {
        value: 0,
        witness: None,
        skipped: Vec::new(),
    };
    for (i, v) in values.into_iter().enumerate() {
        match v? {
            None => out.skipped.push(i),
            Some(v) => {
                if v > out.value || out.witness.is_none() {
                    out.value = v;
                    out.witness = Some(i);
                }
            }
        }
    }
    Ok(out)
}

/// Spoiler playing solver-optimal moves.
pub struct SolverSpoiler {
    solver: Solver,
}

impl SolverSpoiler {
    pub fn new(solver: Solver) -> SolverSpoiler {
        SolverSpoiler { solver }
    }
}

impl SpoilerAgent for SolverSpoiler {
    fn name(&self) -> String {
        "optimal-spoiler".into()
    }

    fn run(&mut self, arena: &mut Arena<'_>) -> std::result::Result<(), Stop> {
        let cap = self.solver.limits.max_rounds;
        loop {
            let picks = arena.picks().to_vec();
            let side = arena.spoiler_side();
            let remaining = cap.saturating_sub(picks.len());
            let k = match self.solver.value(side, &picks, remaining)? {
                GameValue::Within(k) if k > 0 => k,
                _ => return Ok(()),
            };
            let Some((s, v)) = self.solver.winning_move(side, &picks, k)? else {
                return Err(Stop::Failed(Error::Internal("optimal move not found".into())));
            };
            arena.play(s, v)?;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let k1 = GraphData::empty(1);
        let e2 = GraphData::empty(2);
        assert_eq!(d0_pair(&k1, &e2).unwrap(), 2);
        assert_eq!(d_pair(&k1, &e2).unwrap(), 2);
        let p3 = GraphData::path(3);
        let k1k2 = GraphData::disjoint_union(&GraphData::empty(1), &GraphData::complete(2)).unwrap();
        assert_eq!(d0_pair(&p3, &k1k2).unwrap(), 3);
        assert!(d0_pair(&p3, &p3).is_err());
        for n in 1..=4 {
            assert_eq!(
                d0_pair(&GraphData::complete(n), &GraphData::complete(n + 1)).unwrap(),
                n + 1
            );
        }
    }

    #[test]
    fn oracle_agrees_on_examples() {
        let p3 = GraphData::path(3);
        let k3 = GraphData::complete(3);
        for v in [Variant::Full, Variant::ZeroAlternation] {
            let mut s = Solver::new(&p3, &k3, v).unwrap();
            let GameValue::Within(k) = s.game_value().unwrap() else {
                panic!()
            };
            assert_eq!(oracle_value(&p3, &k3, v, 5), Some(k));
        }
    }

    #[test]
    fn caps() {
        let big = GraphData::empty(13);
        assert!(matches!(
            Solver::new(&big, &big, Variant::Full),
            Err(Error::SizeLimit(_))
        ));
        let d = GraphData::from_edges(2, true, false, &[(0, 1)]).unwrap();
        assert!(Solver::new(&d, &GraphData::empty(2), Variant::Full).is_err());
    }

    #[test]
    fn lower_bound_for_k2() {
        let k2 = GraphData::complete(2);
        let family: Vec<GraphData> = (1..=3)
            .flat_map(|n| crate::graph::enumerate_nonisomorphic(n, false, false).unwrap())
            .collect();
        let lb = d0_lower_bound(&k2, &family).unwrap();
        assert_eq!(lb.value, 3);
        assert_eq!(lb.skipped.len(), 1);
        assert_eq!(d0_lower_bound(&k2, &[]).unwrap().value, 0);
    }
}
