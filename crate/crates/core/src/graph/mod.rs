//! Graph and digraph representation shared by every other module.
//!
//! Adjacency is stored as fixed-width bit rows, one per vertex. Undirected
//! graphs keep a single symmetric matrix; digraphs additionally keep the
//! transposed matrix so that in-neighbourhoods are as cheap as
//! out-neighbourhoods.

mod canon;
mod enumerate;
mod io;
mod iso;

pub use canon::{canonical_key, canonical_key_with_limit, CanonicalKey, DEFAULT_CANON_LIMIT};
pub use enumerate::{enumerate_nonisomorphic, DIRECTED_ENUM_CAP, UNDIRECTED_ENUM_CAP};
pub use io::GraphJson;
pub use iso::{find_induced_embedding, is_isomorphic, isomorphism, refine_colors};

use crate::bitset::{words_for, BitSet};
use crate::error::{invalid, Error, Result};

/// A finite simple graph or digraph on vertices `0..order`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GraphData {
    order: usize,
    directed: bool,
    loops: bool,
    words: usize,
    out: Vec<u64>,
    // Transposed matrix; empty for undirected graphs.
    inn: Vec<u64>,
}

/// An injective partial map between the vertex sets of two graphs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexMap {
    image: Vec<Option<usize>>,
}

impl VertexMap {
    pub fn total(image: Vec<usize>) -> VertexMap {
        VertexMap {
            image: image.into_iter().map(Some).collect(),
        }
    }

    pub fn partial(image: Vec<Option<usize>>) -> VertexMap {
        VertexMap { image }
    }

    pub fn get(&self, u: usize) -> Option<usize> {
        self.image.get(u).copied().flatten()
    }

    pub fn domain_size(&self) -> usize {
        self.image.len()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.image.iter().enumerate().filter_map(|(u, v)| v.map(|v| (u, v)))
    }

    /// Images of the mapped vertices, in domain order.
    pub fn image(&self) -> Vec<usize> {
        self.pairs().map(|(_, v)| v).collect()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen: Vec<usize> = self.image();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    /// Checks that every mapped pair preserves adjacency in both directions.
    pub fn preserves_adjacency(&self, from: &GraphData, to: &GraphData) -> bool {
        let pairs: Vec<_> = self.pairs().collect();
        if pairs.iter().any(|&(u, v)| u >= from.order() || v >= to.order()) {
            return false;
        }
        pairs
            .iter()
            .all(|&(a, x)| pairs.iter().all(|&(b, y)| from.has_edge(a, b) == to.has_edge(x, y)))
    }
}

impl GraphData {
    /// The edgeless graph (or digraph) of the given order.
    pub fn new(order: usize, directed: bool, loops: bool) -> Result<GraphData> {
        if order == 0 {
            return Err(invalid!("graphs must have at least one vertex"));
        }
        if loops && !directed {
            return Err(invalid!("loops are only supported on digraphs"));
        }
        let words = words_for(order);
        Ok(GraphData {
            order,
            directed,
            loops,
            words,
            out: vec![0; order * words],
            inn: if directed { vec![0; order * words] } else { Vec::new() },
        })
    }

    /// Builds a graph from an edge list. Undirected edges may be listed
    /// in either orientation, and duplicates are ignored.
    pub fn from_edges(order: usize, directed: bool, loops: bool, edges: &[(usize, usize)]) -> Result<GraphData> {
        let mut g = GraphData::new(order, directed, loops)?;
        for &(u, v) in edges {
            if u >= order || v >= order {
                return Err(invalid!("edge ({u},{v}) out of range for order {order}"));
            }
            if u == v && !loops {
                return Err(invalid!("loop at {u} but loops are not allowed"));
            }
            g.set(u, v);
        }
        Ok(g)
    }

    /// Builds an undirected loop-free graph from `order` and a pair predicate
    /// that is consulted for `u < v` only.
    pub fn undirected_from_fn(order: usize, mut adj: impl FnMut(usize, usize) -> bool) -> Result<GraphData> {
        let mut g = GraphData::new(order, false, false)?;
        for u in 0..order {
            for v in u + 1..order {
                if adj(u, v) {
                    g.set(u, v);
                }
            }
        }
        Ok(g)
    }

    /// Builds a digraph from an arc predicate over all ordered pairs
    /// (the diagonal is consulted only when loops are allowed).
    pub fn directed_from_fn(order: usize, loops: bool, mut arc: impl FnMut(usize, usize) -> bool) -> Result<GraphData> {
        let mut g = GraphData::new(order, true, loops)?;
        for u in 0..order {
            for v in 0..order {
                if (u != v || loops) && arc(u, v) {
                    g.set(u, v);
                }
            }
        }
        Ok(g)
    }

    fn set(&mut self, u: usize, v: usize) {
        let w = self.words;
        self.out[u * w + v / 64] |= 1 << (v % 64);
        if self.directed {
            self.inn[v * w + u / 64] |= 1 << (u % 64);
        } else {
            self.out[v * w + u / 64] |= 1 << (u % 64);
        }
    }

    pub fn empty(n: usize) -> GraphData {
        GraphData::new(n, false, false).expect("order must be positive")
    }

    pub fn complete(n: usize) -> GraphData {
        GraphData::undirected_from_fn(n, |_, _| true).expect("order must be positive")
    }

    pub fn path(n: usize) -> GraphData {
        GraphData::undirected_from_fn(n, |u, v| v == u + 1).expect("order must be positive")
    }

    pub fn cycle(n: usize) -> GraphData {
        assert!(n >= 3, "cycles need at least three vertices");
        GraphData::undirected_from_fn(n, |u, v| v == u + 1 || (u == 0 && v == n - 1)).expect("order must be positive")
    }

    pub fn star(leaves: usize) -> GraphData {
        GraphData::undirected_from_fn(leaves + 1, |u, _| u == 0).expect("order must be positive")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn loops_allowed(&self) -> bool {
        self.loops
    }

    /// Adjacency for graphs, the arc relation `u -> v` for digraphs.
    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub(crate) fn out_row(&self, u: usize) -> &[u64] {
        &self.out[u * self.words..(u + 1) * self.words]
    }

    #[inline]
    pub(crate) fn in_row(&self, u: usize) -> &[u64] {
        if self.directed {
            &self.inn[u * self.words..(u + 1) * self.words]
        } else {
            self.out_row(u)
        }
    }

    pub fn neighbors(&self, u: usize) -> BitSet {
        BitSet::from_words(self.order, self.out_row(u))
    }

    pub fn in_neighbors(&self, u: usize) -> BitSet {
        BitSet::from_words(self.order, self.in_row(u))
    }

    pub fn degree(&self, u: usize) -> usize {
        self.out_row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn in_degree(&self, u: usize) -> usize {
        self.in_row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn has_loop(&self, u: usize) -> bool {
        self.has_edge(u, u)
    }

    /// Edges as sorted pairs; undirected edges are reported once with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.order {
            for v in self.neighbors(u).iter() {
                if self.directed || u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        let total: usize = (0..self.order).map(|u| self.degree(u)).sum();
        if self.directed {
            total
        } else {
            total / 2
        }
    }

    fn require_simple(&self, op: &str) -> Result<()> {
        if self.directed || self.loops {
            return Err(Error::Unsupported(format!("{op} needs an undirected loop-free graph")));
        }
        Ok(())
    }

    /// The complement of an undirected loop-free graph.
    pub fn complement(&self) -> Result<GraphData> {
        self.require_simple("complement")?;
        let mut g = self.clone();
        let w = self.words;
        for u in 0..self.order {
            let row = &mut g.out[u * w..(u + 1) * w];
            for x in row.iter_mut() {
                *x = !*x;
            }
            row[u / 64] &= !(1 << (u % 64));
            let rem = self.order % 64;
            if rem != 0 {
                row[w - 1] &= (1u64 << rem) - 1;
            }
        }
        Ok(g)
    }

    /// Vertex-disjoint union; `b`'s vertices are shifted by `a.order()`.
    pub fn disjoint_union(a: &GraphData, b: &GraphData) -> Result<GraphData> {
        GraphData::disjoint_union_all(&[a, b])
    }

    pub fn disjoint_union_all(parts: &[&GraphData]) -> Result<GraphData> {
        let first = parts.first().ok_or_else(|| invalid!("disjoint union of nothing"))?;
        if parts
            .iter()
            .any(|p| p.directed != first.directed || p.loops != first.loops)
        {
            return Err(Error::Unsupported(
                "disjoint union of graphs with different directedness or loop policy".into(),
            ));
        }
        let order = parts.iter().map(|p| p.order).sum();
        let mut g = GraphData::new(order, first.directed, first.loops)?;
        let mut offset = 0;
        for p in parts {
            for (u, v) in p.edges() {
                g.set(u + offset, v + offset);
            }
            offset += p.order;
        }
        Ok(g)
    }

    /// The subgraph induced by `vs`, relabelled to `0..vs.len()` in
    /// increasing order of the original indices.
    pub fn induced_subgraph(&self, vs: &[usize]) -> Result<GraphData> {
        if vs.is_empty() {
            return Err(invalid!("induced subgraph on an empty vertex set"));
        }
        let mut sorted = vs.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&v| v >= self.order) {
            return Err(invalid!("vertex {bad} out of range for order {}", self.order));
        }
        let mut g = GraphData::new(sorted.len(), self.directed, self.loops)?;
        for (i, &u) in sorted.iter().enumerate() {
            for (j, &v) in sorted.iter().enumerate() {
                if (self.directed || i < j || (i == j && self.loops)) && self.has_edge(u, v) {
                    g.set(i, j);
                }
            }
        }
        Ok(g)
    }

    pub fn induced_on(&self, vs: &BitSet) -> Result<GraphData> {
        self.induced_subgraph(&vs.to_vec())
    }

    /// Connected components of an undirected graph, each sorted, ordered by
    /// smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        self.components_within(&BitSet::full(self.order), false)
            .into_iter()
            .map(|c| c.to_vec())
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// Components of the subgraph induced by `within`, optionally taken in
    /// the complement. Works on bit rows directly so large graphs stay cheap.
    pub(crate) fn components_within(&self, within: &BitSet, complemented: bool) -> Vec<BitSet> {
        let mut remaining = within.clone();
        let mut comps = Vec::new();
        while let Some(start) = remaining.first() {
            let mut comp = BitSet::new(self.order);
            comp.insert(start);
            remaining.remove(start);
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                let mut next = BitSet::from_words(self.order, self.out_row(u));
                if complemented {
                    let mut c = remaining.clone();
                    c.difference_with(&next);
                    next = c;
                } else {
                    next.intersect_with(&remaining);
                }
                for v in next.iter() {
                    remaining.remove(v);
                    comp.insert(v);
                    stack.push(v);
                }
            }
            comps.push(comp);
        }
        comps
    }

    /// Symmetric digraph with an arc pair for every edge.
    pub fn to_symmetric_digraph(&self) -> Result<GraphData> {
        self.require_simple("digraph encoding")?;
        let mut arcs = Vec::new();
        for (u, v) in self.edges() {
            arcs.push((u, v));
            arcs.push((v, u));
        }
        GraphData::from_edges(self.order, true, false, &arcs)
    }

    /// Relabels vertices: vertex `u` becomes `perm[u]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<GraphData> {
        if perm.len() != self.order {
            return Err(invalid!("permutation length {} != order {}", perm.len(), self.order));
        }
        let mut seen = vec![false; self.order];
        for &p in perm {
            if p >= self.order || std::mem::replace(&mut seen[p], true) {
                return Err(invalid!("not a permutation"));
            }
        }
        let arcs: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        GraphData::from_edges(self.order, self.directed, self.loops, &arcs)
    }
}

impl std::fmt::Debug for GraphData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GraphData {{ n: {}, directed: {}, loops: {}, edges: {:?} }}",
            self.order,
            self.directed,
            self.loops,
            self.edges()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2k2() -> GraphData {
        GraphData::disjoint_union(&GraphData::complete(2), &GraphData::complete(2)).unwrap()
    }

    #[test]
    fn complement_examples() {
        assert_eq!(GraphData::complete(3).complement().unwrap(), GraphData::empty(3));
        let p4 = GraphData::path(4);
        assert!(is_isomorphic(&p4.complement().unwrap(), &p4));
        let c4c = GraphData::cycle(4).complement().unwrap();
        assert_eq!(c4c.edges(), vec![(0, 2), (1, 3)]);
        assert!(is_isomorphic(&c4c, &k2k2()));
    }

    #[test]
    fn complement_rejects_digraphs() {
        let d = GraphData::from_edges(2, true, false, &[(0, 1)]).unwrap();
        assert!(matches!(d.complement(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn complement_of_large_graph_clears_padding() {
        let g = GraphData::empty(70).complement().unwrap();
        assert_eq!(g.edge_count(), 70 * 69 / 2);
        assert_eq!(g.degree(69), 69);
    }

    #[test]
    fn union_examples() {
        let u = GraphData::disjoint_union(&GraphData::empty(1), &GraphData::empty(1)).unwrap();
        assert_eq!(u, GraphData::empty(2));
        let kk = k2k2();
        assert_eq!(kk.order(), 4);
        assert_eq!(kk.edge_count(), 2);
        assert_eq!(kk.connected_components().len(), 2);
        assert!(is_isomorphic(&kk.complement().unwrap(), &GraphData::cycle(4)));
        let d = GraphData::new(1, true, false).unwrap();
        assert!(GraphData::disjoint_union(&d, &GraphData::empty(1)).is_err());
    }

    #[test]
    fn induced_examples() {
        let p4 = GraphData::path(4);
        assert_eq!(p4.induced_subgraph(&[0, 1, 2]).unwrap(), GraphData::path(3));
        assert_eq!(
            GraphData::cycle(4).induced_subgraph(&[0, 2]).unwrap(),
            GraphData::empty(2)
        );
        assert_eq!(
            GraphData::complete(4).induced_subgraph(&[3, 1, 2]).unwrap(),
            GraphData::complete(3)
        );
        assert!(matches!(p4.induced_subgraph(&[]), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn components_examples() {
        assert_eq!(k2k2().connected_components(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(GraphData::cycle(4).connected_components(), vec![vec![0, 1, 2, 3]]);
        assert_eq!(
            GraphData::empty(3).connected_components(),
            vec![vec![0], vec![1], vec![2]]
        );
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert!(GraphData::new(0, false, false).is_err());
        assert!(GraphData::from_edges(2, false, false, &[(0, 0)]).is_err());
        assert!(GraphData::from_edges(2, false, false, &[(0, 2)]).is_err());
        assert!(GraphData::new(2, false, true).is_err());
    }

    #[test]
    fn digraph_rows() {
        let d = GraphData::from_edges(3, true, true, &[(0, 1), (2, 2)]).unwrap();
        assert!(d.has_edge(0, 1) && !d.has_edge(1, 0));
        assert_eq!(d.in_neighbors(1).to_vec(), vec![0]);
        assert!(d.has_loop(2));
        assert_eq!(d.edges(), vec![(0, 1), (2, 2)]);
    }
}
