//! The plunge and x1y1 strategies.

use super::{check_board, expect_ok, has_pick, internal, is_picked, oriented, select, Part, Phase, StrategyState};
use crate::bitset::BitSet;
use crate::decomposition::{cocomponents, decompose, is_inclusion_free, is_uniform, properly_embeds};
use crate::error::{invalid, Result};
use crate::game::{Arena, Side, SpoilerAgent, Stop};
use crate::graph::{is_isomorphic, GraphData};

type Play = std::result::Result<(), Stop>;

pub(super) fn check_plunge(away: &Part, home: &Part, x: usize, x2: usize, y: usize, y2: usize, l: usize) -> Result<()> {
    if away.block(x, l)? == away.block(x2, l)? {
        return Err(invalid!(
            "plunge assumption 1: x and x' share their depth-{l} environment"
        ));
    }
    if home.block(y, l)? != home.block(y2, l)? {
        return Err(invalid!(
            "plunge assumption 2: y and y' have different depth-{l} environments"
        ));
    }
    if home.block(y, l + 1)? == home.block(y, l)? {
        return Err(invalid!(
            "plunge assumption 3: the depth-{l} environment of y does not split at depth {}",
            l + 1
        ));
    }
    Ok(())
}

/// Wins within `l + 1` moves in `home`, given the pairs `(x, y)` and
/// `(x2, y2)` are on the board and the plunge assumptions hold.
#[allow(clippy::too_many_arguments)]
pub(super) fn run_plunge(
    arena: &mut Arena<'_>,
    away: &Part,
    home: &Part,
    x: usize,
    x2: usize,
    y: usize,
    y2: usize,
    l: usize,
    trace: &mut Vec<StrategyState>,
) -> Play {
    expect_ok(check_plunge(away, home, x, x2, y, y2, l))?;
    let mut st = StrategyState::new(Phase::Plunge, arena.rounds_played(), l);
    st.chain = vec![oriented(away, home, x, y), oriented(away, home, x2, y2)];
    trace.push(st);
    let m = expect_ok(away.view.separation_depth(x, x2, l))?
        .ok_or_else(|| internal("plunge: x and x' are not separated"))?;
    if m < l {
        return run_plunge(arena, away, home, x, x2, y, y2, m, trace);
    }
    if home.member_adjacent(y, y2, l) {
        return Err(internal("plunge: the position is already lost for Duplicator"));
    }
    // A connected graph whose complement is disconnected has diameter <= 2.
    let env = expect_ok(home.block(y, l))?.clone();
    let mid = env
        .iter()
        .find(|&w| w != y && w != y2 && home.member_adjacent(w, y, l) && home.member_adjacent(w, y2, l))
        .ok_or_else(|| internal("plunge: no common neighbour"))?;
    let x3 = select(arena, home, away, mid)?;
    if l == 0 {
        return Err(internal("plunge: Duplicator survived the last move"));
    }
    run_plunge(arena, away, home, x, x3, y, mid, l - 1, trace)
}

/// Checks the x1y1 assumptions and returns `k = rk H_1 + l`.
pub(super) fn check_x1y1(away: &Part, home: &Part, x1: usize, y1: usize, l: usize, c: usize) -> Result<usize> {
    let g1 = away.env(x1, l)?;
    let h1 = home.env(y1, l)?;
    if is_isomorphic(&g1, &h1) {
        return Err(invalid!("x1y1 assumption 1: the depth-{l} environments are isomorphic"));
    }
    if !is_uniform(&h1)? || !is_inclusion_free(&h1)? {
        return Err(invalid!("x1y1 assumption 2: H_1 is not uniform and inclusion-free"));
    }
    if let Some((b, _)) = cocomponents(&h1)?.iter().find(|(b, _)| b.len() > c) {
        return Err(invalid!(
            "x1y1 assumption 2: H_1 has a cocomponent of order {} > {c}",
            b.len()
        ));
    }
    let dh = decompose(&h1, None)?;
    let dg = decompose(&g1, None)?;
    // Past both stabilization depths the layers only alternate complements.
    for i in 0..=dh.rank().max(dg.rank()) + 1 {
        let small = dh.members(i)?;
        let large = dg.members(i)?;
        for a in &small {
            if large.iter().any(|b| properly_embeds(&a.graph, &b.graph)) {
                return Err(invalid!(
                    "x1y1 assumption 3: a member of Dec^{i}(H_1) properly embeds into a member of Dec^{i}(G_1)"
                ));
            }
        }
    }
    Ok(dh.rank() + l)
}

/// The x1y1 chain: `ys[j]` in `home`, `xs[j]` in `away`, 0-based, so the
/// environments `H_{j+1}`, `G_{j+1}` sit at depth `j + l`.
fn chain_invariants(away: &Part, home: &Part, xs: &[usize], ys: &[usize], l: usize) -> Result<bool> {
    for j in 0..ys.len() {
        if is_isomorphic(&home.env(ys[j], j + l)?, &away.env(xs[j], j + l)?) {
            return Ok(false);
        }
        if j > 0 {
            let d = j - 1 + l;
            if !home.block(ys[j - 1], d)?.contains(ys[j]) || !away.block(xs[j - 1], d)?.contains(xs[j]) {
                return Ok(false);
            }
            if home.block(ys[j], d + 1)? == home.block(ys[j - 1], d + 1)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Wins within `k + c - 1` further moves in `home` from a board holding
/// `(x1, y1)`, given the x1y1 assumptions.
#[allow(clippy::too_many_arguments)]
pub(super) fn run_x1y1(
    arena: &mut Arena<'_>,
    away: &Part,
    home: &Part,
    x1: usize,
    y1: usize,
    l: usize,
    c: usize,
    trace: &mut Vec<StrategyState>,
) -> Play {
    let k = expect_ok(check_x1y1(away, home, x1, y1, l, c))?;
    let mut xs = vec![x1];
    let mut ys = vec![y1];
    loop {
        let s = ys.len();
        // H_s is a cocomponent of H_1 exactly when s - 1 = k - l.
        let extend = s + l <= k;
        let mut st = StrategyState::new(
            if extend { Phase::X1y1Extend } else { Phase::X1y1Exhaust },
            arena.rounds_played(),
            l,
        );
        st.c = Some(c);
        st.k = Some(k);
        st.s = Some(s);
        st.chain = xs.iter().zip(&ys).map(|(&x, &y)| oriented(away, home, x, y)).collect();
        if cfg!(debug_assertions) {
            let ok = expect_ok(chain_invariants(away, home, &xs, &ys, l))?;
            st.invariants_hold = Some(ok);
            trace.push(st);
            if !ok {
                return Err(internal("x1y1: chain invariants broken"));
            }
        } else {
            trace.push(st);
        }
        let d = s + l - 1;
        let (ys_last, xs_last) = (ys[s - 1], xs[s - 1]);
        let hs = expect_ok(home.block(ys_last, d))?.clone();
        if !extend {
            for v in hs.iter() {
                if v != ys_last && !is_picked(arena, home, v) {
                    select(arena, home, away, v)?;
                }
            }
            return Err(internal("x1y1: cocomponent exhausted without a win"));
        }
        let gs = expect_ok(away.block(xs_last, d))?.clone();
        let g_kids = expect_ok(away.children(&gs, d))?;
        let target: BitSet = expect_ok(home.children(&hs, d))?
            .into_iter()
            .find(|(_, hg)| !g_kids.iter().any(|(_, gg)| is_isomorphic(hg, gg)))
            .map(|(b, _)| b)
            .ok_or_else(|| internal("x1y1: every complement component of H_s is matched"))?;
        let inside = target.contains(ys_last);
        let y = if inside {
            let mut rest = hs.clone();
            rest.difference_with(&target);
            rest.first()
        } else {
            target.first()
        }
        .ok_or_else(|| internal("x1y1: empty candidate set"))?;
        let x = select(arena, home, away, y)?;
        if !gs.contains(x) {
            // Duplicator left G_s, hence G_1 and the depth l - 1 environment of x_1.
            if l == 0 {
                return Err(internal("x1y1: Duplicator escaped G_1 at l = 0 and survived"));
            }
            return run_plunge(arena, away, home, xs[0], x, ys[0], y, l - 1, trace);
        }
        xs.push(x);
        ys.push(y);
        if inside {
            xs.swap(s - 1, s);
            ys.swap(s - 1, s);
        }
    }
}

/// Parameters of a plunge instance. The board must already hold the pairs
/// `(x, y)` and `(x_prime, y_prime)`, with `y`, `y_prime` in `h`.
#[derive(Clone, Debug)]
pub struct PlungeContext {
    pub g: GraphData,
    pub h: GraphData,
    /// Where `h` sits on the board.
    pub h_side: Side,
    pub x: usize,
    pub x_prime: usize,
    pub y: usize,
    pub y_prime: usize,
    pub l: usize,
}

pub struct PlungeAgent {
    ctx: PlungeContext,
    away: Part,
    home: Part,
    trace: Vec<StrategyState>,
}

/// A Spoiler winning within `l + 1` moves in `h`. Fails with
/// invalid-argument naming the first violated assumption.
pub fn strategy_plunge(ctx: PlungeContext) -> Result<PlungeAgent> {
    let away = Part::full(ctx.h_side.other(), &ctx.g)?;
    let home = Part::full(ctx.h_side, &ctx.h)?;
    check_plunge(&away, &home, ctx.x, ctx.x_prime, ctx.y, ctx.y_prime, ctx.l)?;
    Ok(PlungeAgent {
        ctx,
        away,
        home,
        trace: Vec::new(),
    })
}

impl PlungeAgent {
    pub fn bound(&self) -> usize {
        self.ctx.l + 1
    }

    pub fn trace(&self) -> &[StrategyState] {
        &self.trace
    }
}

impl SpoilerAgent for PlungeAgent {
    fn name(&self) -> String {
        format!("plunge(l={})", self.ctx.l)
    }

    fn run(&mut self, arena: &mut Arena<'_>) -> Play {
        self.trace.clear();
        let c = &self.ctx;
        check_board(arena, &c.g, c.h_side.other(), &c.h)?;
        if !has_pick(arena, &self.away, &self.home, c.x, c.y)
            || !has_pick(arena, &self.away, &self.home, c.x_prime, c.y_prime)
        {
            return Err(Stop::Failed(invalid!("plunge: the board lacks the starting pairs")));
        }
        run_plunge(
            arena,
            &self.away,
            &self.home,
            c.x,
            c.x_prime,
            c.y,
            c.y_prime,
            c.l,
            &mut self.trace,
        )
    }
}

/// Parameters of an x1y1 instance. The board must already hold `(x1, y1)`
/// with `y1` in `h`.
#[derive(Clone, Debug)]
pub struct X1y1Context {
    pub g: GraphData,
    pub h: GraphData,
    pub h_side: Side,
    pub x1: usize,
    pub y1: usize,
    pub l: usize,
    pub c: usize,
}

pub struct X1y1Agent {
    ctx: X1y1Context,
    k: usize,
    away: Part,
    home: Part,
    trace: Vec<StrategyState>,
}

/// A Spoiler winning within `k + c - 1` moves in `h` after `(x1, y1)`,
/// where `k = rk Env^l(y1) + l`.
pub fn strategy_x1y1(ctx: X1y1Context) -> Result<X1y1Agent> {
    let away = Part::full(ctx.h_side.other(), &ctx.g)?;
    let home = Part::full(ctx.h_side, &ctx.h)?;
    let k = check_x1y1(&away, &home, ctx.x1, ctx.y1, ctx.l, ctx.c)?;
    Ok(X1y1Agent {
        ctx,
        k,
        away,
        home,
        trace: Vec::new(),
    })
}

impl X1y1Agent {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn bound(&self) -> usize {
        (self.k + self.ctx.c).saturating_sub(1)
    }

    pub fn trace(&self) -> &[StrategyState] {
        &self.trace
    }
}

impl SpoilerAgent for X1y1Agent {
    fn name(&self) -> String {
        format!("x1y1(l={}, c={})", self.ctx.l, self.ctx.c)
    }

    fn run(&mut self, arena: &mut Arena<'_>) -> Play {
        self.trace.clear();
        let c = &self.ctx;
        check_board(arena, &c.g, c.h_side.other(), &c.h)?;
        if !has_pick(arena, &self.away, &self.home, c.x1, c.y1) {
            return Err(Stop::Failed(invalid!("x1y1: the board lacks the pair (x1, y1)")));
        }
        run_x1y1(arena, &self.away, &self.home, c.x1, c.y1, c.l, c.c, &mut self.trace)
    }
}
