//! Complement decomposition: depth-i layers, environments, rank,
//! cocomponents, the uniform and inclusion-free predicates, vertex removal
//! inside complement-connected graphs and cocomponent replacement.
//!
//! A member of layer `i` is stored by its vertex block. Its graph is the
//! subgraph induced by the block for even `i` and the complement of that
//! subgraph for odd `i`.

use crate::bitset::BitSet;
use crate::error::{invalid, Error, Result};
use crate::graph::{find_induced_embedding, is_isomorphic, GraphData};
use serde::Serialize;

fn require_undirected(g: &GraphData) -> Result<()> {
    if g.is_directed() || g.loops_allowed() {
        return Err(Error::Unsupported(
            "decomposition needs an undirected loop-free graph".into(),
        ));
    }
    Ok(())
}

fn block_is_cc(g: &GraphData, block: &BitSet) -> bool {
    g.components_within(block, false).len() == 1 && g.components_within(block, true).len() == 1
}

/// Rank of the graph induced by `block`, complemented when `flip` is set.
fn rank_of(g: &GraphData, block: &BitSet, flip: bool) -> usize {
    let comps = g.components_within(block, flip);
    if comps.len() > 1 {
        return 1 + comps.iter().map(|c| rank_of(g, c, flip)).max().unwrap_or(0);
    }
    let cocomps = g.components_within(block, !flip);
    if cocomps.len() == 1 {
        0
    } else {
        1 + cocomps.iter().map(|c| rank_of(g, c, !flip)).max().unwrap_or(0)
    }
}

pub fn is_complement_connected(g: &GraphData) -> bool {
    block_is_cc(g, &BitSet::full(g.order()))
}

/// The rank of an undirected graph.
pub fn rank(g: &GraphData) -> Result<usize> {
    require_undirected(g)?;
    Ok(rank_of(g, &BitSet::full(g.order()), false))
}

/// One member of a layer: a block of `P_i` together with the member graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Environment {
    pub depth: usize,
    pub block: Vec<usize>,
    pub graph: GraphData,
}

#[derive(Clone, Debug)]
pub struct DecompositionView {
    base: GraphData,
    layers: Vec<Vec<BitSet>>,
    owner: Vec<Vec<usize>>,
    stable: bool,
    rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub rank: usize,
    pub layers: Vec<Vec<Vec<usize>>>,
    pub cocomponents: Vec<Vec<usize>>,
}

/// Computes layers until `P_{i+1} = P_i` (both layers are stored) or until
/// `max_depth` layers beyond depth 0 have been built.
pub fn decompose(g: &GraphData, max_depth: Option<usize>) -> Result<DecompositionView> {
    require_undirected(g)?;
    let n = g.order();
    let mut layers = vec![sorted_blocks(g.components_within(&BitSet::full(n), false))];
    let mut stable = false;
    while max_depth.is_none_or(|d| layers.len() <= d) {
        let i = layers.len() - 1;
        let next: Vec<BitSet> = layers[i]
            .iter()
            .flat_map(|b| g.components_within(b, i % 2 == 0))
            .collect();
        let next = sorted_blocks(next);
        let same = next == layers[i];
        layers.push(next);
        if same {
            stable = true;
            break;
        }
    }
    let owner = layers
        .iter()
        .map(|blocks| {
            let mut own = vec![0; n];
            for (j, b) in blocks.iter().enumerate() {
                for v in b.iter() {
                    own[v] = j;
                }
            }
            own
        })
        .collect();
    Ok(DecompositionView {
        base: g.clone(),
        layers,
        owner,
        stable,
        rank: rank_of(g, &BitSet::full(n), false),
    })
}

fn sorted_blocks(mut blocks: Vec<BitSet>) -> Vec<BitSet> {
    blocks.sort_by_key(|b| b.first());
    blocks
}

impl DecompositionView {
    pub fn base(&self) -> &GraphData {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Whether the layers were computed up to stabilization.
    pub fn is_stable(&self) -> bool {
        self.stable
    }

    /// Depth of the deepest stored layer.
    pub fn depth(&self) -> usize {
        self.layers.len() - 1
    }

    /// Least `s` with `P_{s+1} = P_s`, if the layers reached it.
    pub fn stabilization_index(&self) -> Option<usize> {
        self.stable.then(|| self.layers.len() - 2)
    }

    fn layer_index(&self, i: usize) -> Result<usize> {
        if i < self.layers.len() {
            Ok(i)
        } else if self.stable {
            Ok(self.layers.len() - 1)
        } else {
            Err(invalid!("depth {i} beyond the computed depth {}", self.depth()))
        }
    }

    /// Blocks of `P_i`, sorted by smallest vertex.
    pub fn blocks(&self, i: usize) -> Result<&[BitSet]> {
        Ok(&self.layers[self.layer_index(i)?])
    }

    pub fn block_vertices(&self, i: usize) -> Result<Vec<Vec<usize>>> {
        Ok(self.blocks(i)?.iter().map(BitSet::to_vec).collect())
    }

    /// Graph of the member of `Dec^i` on `block`.
    pub fn member_graph(&self, i: usize, block: &BitSet) -> Result<GraphData> {
        let g = self.base.induced_on(block)?;
        if i % 2 == 1 {
            g.complement()
        } else {
            Ok(g)
        }
    }

    /// All members of `Dec^i` in block order.
    pub fn members(&self, i: usize) -> Result<Vec<Environment>> {
        self.blocks(i)?
            .iter()
            .map(|b| {
                Ok(Environment {
                    depth: i,
                    block: b.to_vec(),
                    graph: self.member_graph(i, b)?,
                })
            })
            .collect()
    }

    pub fn block_of(&self, v: usize, i: usize) -> Result<&BitSet> {
        if v >= self.base.order() {
            return Err(invalid!("vertex {v} out of range for order {}", self.base.order()));
        }
        let li = self.layer_index(i)?;
        Ok(&self.layers[li][self.owner[li][v]])
    }

    /// `Env^i(v)`: the member of `Dec^i` containing `v`.
    pub fn environment(&self, v: usize, i: usize) -> Result<Environment> {
        let b = self.block_of(v, i)?;
        Ok(Environment {
            depth: i,
            block: b.to_vec(),
            graph: self.member_graph(i, b)?,
        })
    }

    /// Least depth `m <= limit` at which `u` and `v` lie in different
    /// blocks.
    pub fn separation_depth(&self, u: usize, v: usize, limit: usize) -> Result<Option<usize>> {
        for m in 0..=limit {
            if !self.block_of(u, m)?.contains(v) {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }

    /// Vertex blocks of the cocomponents, sorted by smallest vertex.
    pub fn cocomponent_blocks(&self) -> Vec<BitSet> {
        let mut out = Vec::new();
        for root in self.base.components_within(&BitSet::full(self.base.order()), false) {
            cocomponents_of(&self.base, &root, false, &mut out);
        }
        sorted_blocks(out)
    }

    pub fn report(&self) -> DecompositionReport {
        DecompositionReport {
            rank: self.rank,
            layers: self
                .layers
                .iter()
                .map(|l| l.iter().map(BitSet::to_vec).collect())
                .collect(),
            cocomponents: self.cocomponent_blocks().iter().map(BitSet::to_vec).collect(),
        }
    }
}

// A complement-connected set lies inside one block at every depth, so the
// cocomponents are found by splitting until blocks are complement-connected.
fn cocomponents_of(g: &GraphData, block: &BitSet, flip: bool, out: &mut Vec<BitSet>) {
    let parts = g.components_within(block, !flip);
    if parts.len() == 1 {
        out.push(block.clone());
        return;
    }
    for p in parts {
        cocomponents_of(g, &p, !flip, out);
    }
}

/// Cocomponents as vertex sets with their induced subgraphs.
pub fn cocomponents(g: &GraphData) -> Result<Vec<(Vec<usize>, GraphData)>> {
    require_undirected(g)?;
    let view = decompose(g, Some(0))?;
    view.cocomponent_blocks()
        .iter()
        .map(|b| Ok((b.to_vec(), g.induced_on(b)?)))
        .collect()
}

fn require_connected(g: &GraphData, what: &str) -> Result<()> {
    require_undirected(g)?;
    if !g.is_connected() {
        return Err(invalid!("{what} is defined for connected graphs only"));
    }
    Ok(())
}

/// A complement-connected member found too early.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformityWitness {
    pub depth: usize,
    pub block: Vec<usize>,
}

/// `None` when `g` is uniform, otherwise a complement-connected member of
/// `Dec^{rk-1}`. Rank-0 graphs count as uniform.
pub fn uniformity_witness(g: &GraphData) -> Result<Option<UniformityWitness>> {
    require_connected(g, "uniformity")?;
    let view = decompose(g, None)?;
    if view.rank == 0 {
        return Ok(None);
    }
    let d = view.rank - 1;
    Ok(view
        .blocks(d)?
        .iter()
        .find(|b| block_is_cc(g, b))
        .map(|b| UniformityWitness {
            depth: d,
            block: b.to_vec(),
        }))
}

pub fn is_uniform(g: &GraphData) -> Result<bool> {
    Ok(uniformity_witness(g)?.is_none())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InclusionWitness {
    /// The complement of the member on `parent` has two isomorphic components.
    IsomorphicComponents {
        depth: usize,
        parent: Vec<usize>,
        first: Vec<usize>,
        second: Vec<usize>,
    },
    /// The member on `smaller` properly embeds into the member on `larger`.
    ProperEmbedding {
        depth: usize,
        smaller: Vec<usize>,
        larger: Vec<usize>,
    },
}

/// Whether some `A` in `left` properly embeds into some `B` in `right`,
/// that is `A ⊂ B` and `A ≇ B`.
pub fn properly_embeds(a: &GraphData, b: &GraphData) -> bool {
    if a.order() > b.order() {
        return false;
    }
    if a.order() == b.order() {
        // Equal orders: an embedding is an isomorphism.
        return false;
    }
    find_induced_embedding(a, b).is_some()
}

/// `None` when `g` is inclusion-free, otherwise the first violation found
/// scanning depths upward.
pub fn inclusion_witness(g: &GraphData) -> Result<Option<InclusionWitness>> {
    require_connected(g, "inclusion-freeness")?;
    let view = decompose(g, None)?;
    for i in 0..=view.rank {
        let members = view.members(i)?;
        for m in &members {
            let mb = BitSet::from_iter(g.order(), m.block.iter().copied());
            // Components of the complement of the member are the children
            // at depth i + 1.
            let kids: Vec<BitSet> = g.components_within(&mb, i % 2 == 0);
            let graphs: Vec<GraphData> = kids
                .iter()
                .map(|k| view.member_graph(i + 1, k))
                .collect::<Result<_>>()?;
            for a in 0..kids.len() {
                for b in a + 1..kids.len() {
                    if is_isomorphic(&graphs[a], &graphs[b]) {
                        return Ok(Some(InclusionWitness::IsomorphicComponents {
                            depth: i,
                            parent: m.block.clone(),
                            first: kids[a].to_vec(),
                            second: kids[b].to_vec(),
                        }));
                    }
                }
            }
        }
        for a in &members {
            for b in &members {
                if a.block != b.block && properly_embeds(&a.graph, &b.graph) {
                    return Ok(Some(InclusionWitness::ProperEmbedding {
                        depth: i,
                        smaller: a.block.clone(),
                        larger: b.block.clone(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_inclusion_free(g: &GraphData) -> Result<bool> {
    Ok(inclusion_witness(g)?.is_none())
}

/// Smallest `v` such that `g - v` is complement-connected.
pub fn find_removable_vertex(g: &GraphData) -> Result<usize> {
    require_undirected(g)?;
    if g.order() < 5 {
        return Err(invalid!("removable vertices are only guaranteed from order 5"));
    }
    if !is_complement_connected(g) {
        return Err(invalid!("input is not complement-connected"));
    }
    let all = BitSet::full(g.order());
    (0..g.order())
        .find(|&v| {
            let mut rest = all.clone();
            rest.remove(v);
            block_is_cc(g, &rest)
        })
        .ok_or_else(|| Error::Internal("complement-connected graph of order >= 5 without a removable vertex".into()))
}

/// A vertex set of size `m` inducing a complement-connected subgraph,
/// obtained by repeatedly deleting the smallest removable vertex.
pub fn complement_connected_subgraph_of_order(g: &GraphData, m: usize) -> Result<Vec<usize>> {
    require_undirected(g)?;
    if m < 5 {
        return Err(invalid!("target order {m} is below 5"));
    }
    if m > g.order() {
        return Err(invalid!("target order {m} exceeds graph order {}", g.order()));
    }
    if !is_complement_connected(g) {
        return Err(invalid!("input is not complement-connected"));
    }
    let mut keep: Vec<usize> = (0..g.order()).collect();
    while keep.len() > m {
        let sub = g.induced_subgraph(&keep)?;
        let v = find_removable_vertex(&sub)?;
        keep.remove(v);
    }
    Ok(keep)
}

/// Replace the cocomponent on `target_block` by `replacement`.
#[derive(Clone, Debug)]
pub struct ReplacementSpec {
    pub target_block: Vec<usize>,
    pub replacement: GraphData,
}

/// Where a vertex of a replaced graph came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexOrigin {
    Kept(usize),
    Inserted { spec: usize, vertex: usize },
}

pub fn cocomponent_replace(g: &GraphData, spec: &ReplacementSpec) -> Result<GraphData> {
    Ok(replace_cocomponents(g, std::slice::from_ref(spec))?.0)
}

/// Replaces several distinct cocomponents at once. The replacement of a
/// block occupies the position of the block's smallest vertex; every
/// inserted vertex copies the external adjacency of that vertex.
pub fn replace_cocomponents(g: &GraphData, specs: &[ReplacementSpec]) -> Result<(GraphData, Vec<VertexOrigin>)> {
    require_undirected(g)?;
    let n = g.order();
    let cocos: Vec<Vec<usize>> = decompose(g, Some(0))?
        .cocomponent_blocks()
        .iter()
        .map(BitSet::to_vec)
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (si, s) in specs.iter().enumerate() {
        let mut t = s.target_block.clone();
        t.sort_unstable();
        t.dedup();
        if !cocos.contains(&t) {
            return Err(invalid!("target block {t:?} is not a cocomponent"));
        }
        if s.replacement.is_directed() || s.replacement.loops_allowed() {
            return Err(invalid!("replacement must be an undirected loop-free graph"));
        }
        if !is_complement_connected(&s.replacement) {
            return Err(invalid!("replacement is not complement-connected"));
        }
        for &v in &t {
            if owner[v].replace(si).is_some() {
                return Err(invalid!("target blocks overlap"));
            }
        }
    }
    let mut origin = Vec::new();
    // External representative of every new vertex.
    let mut rep = Vec::new();
    for v in 0..n {
        match owner[v] {
            None => {
                origin.push(VertexOrigin::Kept(v));
                rep.push(v);
            }
            Some(si) => {
                let first = *specs[si].target_block.iter().min().expect("nonempty block");
                if v == first {
                    for w in 0..specs[si].replacement.order() {
                        origin.push(VertexOrigin::Inserted { spec: si, vertex: w });
                        rep.push(v);
                    }
                }
            }
        }
    }
    let order = origin.len();
    let h = GraphData::undirected_from_fn(order, |a, b| match (origin[a], origin[b]) {
        (VertexOrigin::Inserted { spec: s, vertex: x }, VertexOrigin::Inserted { spec: t, vertex: y }) if s == t => {
            specs[s].replacement.has_edge(x, y)
        }
        _ => g.has_edge(rep[a], rep[b]),
    })?;
    Ok((h, origin))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2k2() -> GraphData {
        GraphData::disjoint_union(&GraphData::complete(2), &GraphData::complete(2)).unwrap()
    }

    #[test]
    fn complement_connected_examples() {
        assert!(is_complement_connected(&GraphData::empty(1)));
        assert!(is_complement_connected(&GraphData::path(4)));
        assert!(!is_complement_connected(&GraphData::complete(2)));
    }

    #[test]
    fn decompose_c4() {
        let c4 = GraphData::cycle(4);
        let v = decompose(&c4, None).unwrap();
        assert_eq!(v.rank(), 2);
        assert_eq!(v.block_vertices(0).unwrap(), vec![vec![0, 1, 2, 3]]);
        assert_eq!(v.block_vertices(1).unwrap(), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(v.block_vertices(2).unwrap().len(), 4);
        for m in v.members(1).unwrap() {
            assert_eq!(m.graph, GraphData::complete(2));
        }
        let env = v.environment(0, 1).unwrap();
        assert_eq!(env.block, vec![0, 2]);
        assert_eq!(env.graph, GraphData::complete(2));
        assert_eq!(v.stabilization_index(), Some(2));
    }

    #[test]
    fn decompose_union_and_p4() {
        let v = decompose(&k2k2(), None).unwrap();
        assert_eq!(v.rank(), 2);
        assert_eq!(v.block_vertices(0).unwrap(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(rank(&GraphData::complete(2)).unwrap(), 1);
        let p = decompose(&GraphData::path(4), None).unwrap();
        assert_eq!(p.rank(), 0);
        assert_eq!(p.report().cocomponents, vec![vec![0, 1, 2, 3]]);
        assert_eq!(p.environment(2, 0).unwrap().graph, GraphData::path(4));
    }

    #[test]
    fn cocomponent_examples() {
        assert_eq!(cocomponents(&GraphData::path(4)).unwrap().len(), 1);
        assert_eq!(cocomponents(&k2k2()).unwrap().len(), 4);
        assert_eq!(cocomponents(&GraphData::cycle(4)).unwrap().len(), 4);
    }

    #[test]
    fn uniform_examples() {
        assert!(is_uniform(&GraphData::cycle(4)).unwrap());
        assert!(is_uniform(&GraphData::path(4)).unwrap());
        assert!(is_uniform(&k2k2()).is_err());
        // The complement of P_4 ⊔ K_2 has rank 2 and a complement-connected
        // P_4 already at depth 1.
        let inner = GraphData::disjoint_union(&GraphData::path(4), &GraphData::complete(2)).unwrap();
        let g = inner.complement().unwrap();
        assert_eq!(rank(&g).unwrap(), 2);
        let w = uniformity_witness(&g).unwrap().unwrap();
        assert_eq!(w.depth, 1);
        assert_eq!(w.block, vec![0, 1, 2, 3]);
    }

    #[test]
    fn inclusion_free_examples() {
        let c4 = GraphData::cycle(4);
        assert!(matches!(
            inclusion_witness(&c4).unwrap(),
            Some(InclusionWitness::IsomorphicComponents { depth: 0, .. })
        ));
        assert!(is_inclusion_free(&GraphData::path(4)).unwrap());
        let bull = GraphData::from_edges(5, false, false, &[(0, 1), (1, 2), (0, 2), (1, 3), (2, 4)]).unwrap();
        let g = GraphData::disjoint_union(&GraphData::cycle(5), &bull)
            .unwrap()
            .complement()
            .unwrap();
        assert!(is_inclusion_free(&g).unwrap());
        // Different orders with an embedding: P_4 sits inside P_5.
        let h = GraphData::disjoint_union(&GraphData::path(4), &GraphData::path(5))
            .unwrap()
            .complement()
            .unwrap();
        assert!(matches!(
            inclusion_witness(&h).unwrap(),
            Some(InclusionWitness::ProperEmbedding { depth: 1, .. })
        ));
    }

    #[test]
    fn removable_vertex_examples() {
        assert!(find_removable_vertex(&GraphData::cycle(5)).is_ok());
        assert!(find_removable_vertex(&GraphData::path(4)).is_err());
        let bull = GraphData::from_edges(5, false, false, &[(0, 1), (1, 2), (0, 2), (1, 3), (2, 4)]).unwrap();
        let v = find_removable_vertex(&bull).unwrap();
        let rest: Vec<usize> = (0..5).filter(|&u| u != v).collect();
        assert!(is_complement_connected(&bull.induced_subgraph(&rest).unwrap()));
        // P_4 has no removable vertex at all.
        let p4 = GraphData::path(4);
        for v in 0..4 {
            let rest: Vec<usize> = (0..4).filter(|&u| u != v).collect();
            assert!(!is_complement_connected(&p4.induced_subgraph(&rest).unwrap()));
        }
    }

    #[test]
    fn subgraph_of_order_examples() {
        let c6 = GraphData::cycle(6);
        let s = complement_connected_subgraph_of_order(&c6, 5).unwrap();
        assert_eq!(s.len(), 5);
        assert!(is_complement_connected(&c6.induced_subgraph(&s).unwrap()));
        assert_eq!(
            complement_connected_subgraph_of_order(&c6, 6).unwrap(),
            (0..6).collect::<Vec<_>>()
        );
        assert!(complement_connected_subgraph_of_order(&GraphData::path(4), 4).is_err());
    }

    #[test]
    fn replacement_examples() {
        let p4 = GraphData::path(4);
        let spec = ReplacementSpec {
            target_block: vec![0, 1, 2, 3],
            replacement: GraphData::cycle(5),
        };
        assert_eq!(cocomponent_replace(&p4, &spec).unwrap(), GraphData::cycle(5));
        let a = GraphData::cycle(5);
        let b = GraphData::path(4);
        let g = GraphData::disjoint_union(&a, &b).unwrap().complement().unwrap();
        // In the complement the cocomponent on A is the complement of A.
        let a2 = GraphData::path(5);
        let spec = ReplacementSpec {
            target_block: (0..5).collect(),
            replacement: a2.complement().unwrap(),
        };
        let h = cocomponent_replace(&g, &spec).unwrap();
        let expected = GraphData::disjoint_union(&a2, &b).unwrap().complement().unwrap();
        assert!(is_isomorphic(&h, &expected));
        let bad = ReplacementSpec {
            target_block: vec![0, 1],
            replacement: GraphData::cycle(5),
        };
        assert!(cocomponent_replace(&g, &bad).is_err());
        let bad = ReplacementSpec {
            target_block: (0..5).collect(),
            replacement: GraphData::complete(2),
        };
        assert!(cocomponent_replace(&g, &bad).is_err());
    }
}
