//! The case analysis for connected uniform inclusion-free graphs.

use super::lemmas::{run_plunge, run_x1y1};
use super::{check_board, internal, is_picked, oriented, select, Part, Phase, StrategyState};
use crate::decomposition::{
    complement_connected_subgraph_of_order, decompose, is_inclusion_free, is_uniform, properly_embeds,
    DecompositionView,
};
use crate::error::{invalid, Result};
use crate::game::{Arena, Side, SpoilerAgent, Stop};
use crate::graph::{find_induced_embedding, is_isomorphic, isomorphism, GraphData};

type Play = std::result::Result<(), Stop>;

/// Spoiler's strategy for a fixed `G`, instantiated per opponent.
#[derive(Clone, Debug)]
pub struct MainStrategy {
    g: GraphData,
    c: usize,
    view: DecompositionView,
    cocomponents: Vec<GraphData>,
}

/// Checks that `g` is connected, uniform, inclusion-free, of rank at least
/// 1, with cocomponents of order at most `c`, and `c >= 5`.
pub fn strategy_main(g: &GraphData, c: usize) -> Result<MainStrategy> {
    if c < 5 {
        return Err(invalid!("c = {c} is below 5"));
    }
    if g.is_directed() || g.loops_allowed() {
        return Err(invalid!("the strategy needs an undirected loop-free graph"));
    }
    if !g.is_connected() {
        return Err(invalid!("g is not connected"));
    }
    let view = decompose(g, None)?;
    if view.rank() == 0 {
        return Err(invalid!("g has rank 0"));
    }
    if !is_uniform(g)? {
        return Err(invalid!("g is not uniform"));
    }
    if !is_inclusion_free(g)? {
        return Err(invalid!("g is not inclusion-free"));
    }
    let blocks = view.cocomponent_blocks();
    if let Some(b) = blocks.iter().find(|b| b.count() > c) {
        return Err(invalid!("g has a cocomponent of order {} > {c}", b.count()));
    }
    let cocomponents = blocks.iter().map(|b| g.induced_on(b)).collect::<Result<_>>()?;
    Ok(MainStrategy {
        g: g.clone(),
        c,
        view,
        cocomponents,
    })
}

#[derive(Clone, Debug)]
enum Plan {
    /// Vertices of `H` to select.
    Case1(Vec<usize>),
    /// `H_0` (a copy of a member of `Dec^l G`, or a component isomorphic to
    /// `G` when `l = 0` in Case 3) and the first vertex `y_0` outside it.
    Embedded {
        case: Phase,
        l: usize,
        h0: Vec<usize>,
        y0: usize,
    },
    Case4,
}

impl MainStrategy {
    pub fn rank(&self) -> usize {
        self.view.rank()
    }

    pub fn c(&self) -> usize {
        self.c
    }

    /// `rk G + c + 1`.
    pub fn bound(&self) -> usize {
        self.rank() + self.c + 1
    }

    pub fn graph(&self) -> &GraphData {
        &self.g
    }

    /// The agent for opponent `h`, with `G` on the left of the board.
    pub fn against(&self, h: &GraphData) -> Result<MainAgent> {
        self.against_on(h, Side::Left)
    }

    pub fn against_on(&self, h: &GraphData, g_side: Side) -> Result<MainAgent> {
        if h.is_directed() || h.loops_allowed() {
            return Err(invalid!("the opponent must be an undirected loop-free graph"));
        }
        if is_isomorphic(&self.g, h) {
            return Err(invalid!("the opponent is isomorphic to g"));
        }
        let hp = Part::full(g_side.other(), h)?;
        let plan = self.classify(h, &hp)?;
        let hz = match &plan {
            Plan::Embedded { l, h0, case, .. } => {
                // Drop Z, the rest of the member of Dec^l H containing H_0
                // (in Case 3, everything outside the component H_0).
                let outside = if *case == Phase::Case3 {
                    (0..h.order()).filter(|v| !h0.contains(v)).collect::<Vec<_>>()
                } else {
                    let b = hp.block(h0[0], *l)?;
                    b.iter().filter(|v| !h0.contains(v)).collect()
                };
                let keep: Vec<usize> = (0..h.order()).filter(|v| !outside.contains(v)).collect();
                Some(Part::restricted(g_side.other(), h, &keep)?)
            }
            _ => None,
        };
        Ok(MainAgent {
            c: self.c,
            k: self.rank(),
            g_graph: self.g.clone(),
            h_graph: h.clone(),
            g: Part::full(g_side, &self.g)?,
            h: hp,
            hz,
            plan,
            trace: Vec::new(),
        })
    }

    fn classify(&self, h: &GraphData, hp: &Part) -> Result<Plan> {
        // Case 1.
        for block in hp.view.cocomponent_blocks() {
            let cg = h.induced_on(&block)?;
            if self
                .cocomponents
                .iter()
                .any(|gc| find_induced_embedding(&cg, gc).is_some())
            {
                continue;
            }
            let vs = block.to_vec();
            let pick = if vs.len() <= self.c {
                vs
            } else {
                complement_connected_subgraph_of_order(&cg, self.c + 1)?
                    .into_iter()
                    .map(|i| vs[i])
                    .collect()
            };
            return Ok(Plan::Case1(pick));
        }
        // Case 2: first witnessing (l, A, B) by depth, then block order.
        for l in 0..=self.rank() {
            let gm = self.view.members(l)?;
            let hm = hp.view.members(l)?;
            for a in &gm {
                for b in &hm {
                    if !properly_embeds(&a.graph, &b.graph) {
                        continue;
                    }
                    let emb = find_induced_embedding(&a.graph, &b.graph)
                        .ok_or_else(|| crate::Error::Internal("embedding vanished".into()))?;
                    let mut h0: Vec<usize> = emb.image().into_iter().map(|i| b.block[i]).collect();
                    h0.sort_unstable();
                    let y0 = *b
                        .block
                        .iter()
                        .find(|v| !h0.contains(v))
                        .expect("proper embedding leaves a vertex");
                    return Ok(Plan::Embedded {
                        case: Phase::Case2,
                        l,
                        h0,
                        y0,
                    });
                }
            }
        }
        // Case 3.
        for comp in h.connected_components() {
            if is_isomorphic(&h.induced_subgraph(&comp)?, &self.g) {
                let y0 = (0..h.order())
                    .find(|v| !comp.contains(v))
                    .expect("h is not isomorphic to g");
                return Ok(Plan::Embedded {
                    case: Phase::Case3,
                    l: 0,
                    h0: comp,
                    y0,
                });
            }
        }
        Ok(Plan::Case4)
    }
}

pub struct MainAgent {
    c: usize,
    k: usize,
    g_graph: GraphData,
    h_graph: GraphData,
    g: Part,
    h: Part,
    hz: Option<Part>,
    plan: Plan,
    trace: Vec<StrategyState>,
}

impl MainAgent {
    /// The case the opponent falls into.
    pub fn case(&self) -> Phase {
        match &self.plan {
            Plan::Case1(_) => Phase::Case1,
            Plan::Embedded { case, .. } => *case,
            Plan::Case4 => Phase::Case4,
        }
    }

    /// `rk G + c + 1`.
    pub fn bound(&self) -> usize {
        self.k + self.c + 1
    }

    /// Phase snapshots of the last run.
    pub fn trace(&self) -> &[StrategyState] {
        &self.trace
    }

    fn state(&self, phase: Phase, arena: &Arena<'_>, l: usize) -> StrategyState {
        let mut st = StrategyState::new(phase, arena.rounds_played(), l);
        st.c = Some(self.c);
        st.k = Some(self.k);
        st
    }

    fn select_all(&self, arena: &mut Arena<'_>, home: &Part, away: &Part, vs: &[usize]) -> Play {
        for &v in vs {
            if !is_picked(arena, home, v) {
                select(arena, home, away, v)?;
            }
        }
        Err(internal("main: selected the whole set without a win"))
    }

    fn run_embedded(&mut self, arena: &mut Arena<'_>, l: usize, h0: &[usize], y0: usize) -> Play {
        let (g, h) = (&self.g, &self.h);
        let hz = self
            .hz
            .as_ref()
            .ok_or_else(|| internal("main: missing restricted view"))?;
        let x0 = select(arena, h, g, y0)?;
        let g0 = g.block(x0, l).map_err(Stop::Failed)?.clone();
        let g0_graph = g.view.member_graph(l, &g0).map_err(Stop::Failed)?;
        let mut h0_graph = h.graph.induced_subgraph(h0).map_err(Stop::Failed)?;
        if l % 2 == 1 {
            h0_graph = h0_graph.complement().map_err(Stop::Failed)?;
        }
        let y0l = y0;
        if !is_isomorphic(&g0_graph, &h0_graph) {
            let mut st = self.state(Phase::Subcase21, arena, l);
            st.chain = vec![oriented(g, h, x0, y0)];
            self.trace.push(st);
            if l == self.k {
                return self.select_all(arena, h, g, h0);
            }
            // A complement component of H_0 matching none of G_0.
            let g_kids = g.children(&g0, l).map_err(Stop::Failed)?;
            let comp = h0_graph.complement().map_err(Stop::Failed)?;
            let target = comp
                .connected_components()
                .into_iter()
                .find(|kid| {
                    let kg = comp.induced_subgraph(kid).expect("non-empty component");
                    !g_kids.iter().any(|(_, gg)| is_isomorphic(&kg, gg))
                })
                .ok_or_else(|| internal("main: every complement component of H_0 is matched"))?;
            let y1 = h0[target[0]];
            let x1 = select(arena, h, g, y1)?;
            if !g0.contains(x1) {
                return run_plunge(arena, g, h, x0, x1, y0l, y1, l, &mut self.trace);
            }
            let y1z = hz.local(y1).ok_or_else(|| internal("main: y1 outside H - Z"))?;
            return run_x1y1(arena, g, hz, x1, y1z, l + 1, self.c, &mut self.trace);
        }
        let mut st = self.state(Phase::Subcase22, arena, l);
        st.chain = vec![oriented(g, h, x0, y0)];
        self.trace.push(st);
        // Every isomorphism matches cocomponents the same way; take any.
        let phi = isomorphism(&g0_graph, &h0_graph).ok_or_else(|| internal("main: isomorphism vanished"))?;
        let g0v = g0.to_vec();
        let x_block = g.block(x0, self.k).map_err(Stop::Failed)?.clone();
        let mut y_set: Vec<usize> = x_block
            .iter()
            .map(|v| {
                let i = g0v.binary_search(&v).expect("cocomponent inside G_0");
                h0[phi.get(i).expect("total isomorphism")]
            })
            .collect();
        y_set.sort_unstable();
        let y1 = y_set[0];
        let x1 = select(arena, h, g, y1)?;
        if x_block.contains(x1) {
            let rest: Vec<usize> = y_set[1..].to_vec();
            return self.select_all(arena, h, g, &rest);
        }
        if !g0.contains(x1) {
            return run_plunge(arena, g, h, x0, x1, y0l, y1, l, &mut self.trace);
        }
        let y1z = hz.local(y1).ok_or_else(|| internal("main: y1 outside H - Z"))?;
        for m in 0..=self.k - l {
            let ge = g.env(x1, l + m).map_err(Stop::Failed)?;
            let he = hz.env(y1z, l + m).map_err(Stop::Failed)?;
            if !is_isomorphic(&ge, &he) {
                return run_x1y1(arena, g, hz, x1, y1z, l + m, self.c, &mut self.trace);
            }
        }
        Err(internal("main: environments of x1 and y1 agree at every depth"))
    }

    fn run_case4(&mut self, arena: &mut Arena<'_>) -> Play {
        let (g, h) = (&self.g, &self.h);
        let x0 = 0;
        let y0 = select(arena, g, h, x0)?;
        let h0 = h.block(y0, 0).map_err(Stop::Failed)?.clone();
        let h_kids = h.children(&h0, 0).map_err(Stop::Failed)?;
        let g_all = g.block(x0, 0).map_err(Stop::Failed)?.clone();
        let g1 = g
            .children(&g_all, 0)
            .map_err(Stop::Failed)?
            .into_iter()
            .find(|(_, gg)| !h_kids.iter().any(|(_, hg)| is_isomorphic(gg, hg)))
            .map(|(b, _)| b)
            .ok_or_else(|| internal("main: every complement component of G is matched"))?;
        let mut st = self.state(Phase::Case4, arena, 1);
        st.chain = vec![oriented(h, g, y0, x0)];
        self.trace.push(st);
        let (xs, ys) = if !g1.contains(x0) {
            let x1 = g1.first().expect("non-empty block");
            let y1 = select(arena, g, h, x1)?;
            (x1, y1)
        } else {
            let x1 = (0..g.order())
                .find(|&v| !g1.contains(v))
                .ok_or_else(|| internal("main: G_1 is all of G"))?;
            let y1 = select(arena, g, h, x1)?;
            if !h0.contains(y1) {
                return Err(internal("main: Duplicator left H_0 and survived"));
            }
            (x0, y0)
        };
        if !h0.contains(ys) {
            return Err(internal("main: Duplicator left H_0 and survived"));
        }
        run_x1y1(arena, h, g, ys, xs, 1, self.c, &mut self.trace)
    }
}

impl SpoilerAgent for MainAgent {
    fn name(&self) -> String {
        format!("main(c={})", self.c)
    }

    fn run(&mut self, arena: &mut Arena<'_>) -> Play {
        self.trace.clear();
        check_board(arena, &self.g_graph, self.g.side, &self.h_graph)?;
        if !arena.picks().is_empty() {
            return Err(Stop::Failed(invalid!("main: the board must start empty")));
        }
        match self.plan.clone() {
            Plan::Case1(vs) => {
                let st = self.state(Phase::Case1, arena, 0);
                self.trace.push(st);
                self.select_all(arena, &self.h, &self.g, &vs)
            }
            Plan::Embedded { case, l, h0, y0 } => {
                let st = self.state(case, arena, l);
                self.trace.push(st);
                self.run_embedded(arena, l, &h0, y0)
            }
            Plan::Case4 => self.run_case4(arena),
        }
    }
}
