//! Isomorphism and induced-embedding search.
//!
//! Both searches share one backtracking matcher with forward checking: every
//! unplaced pattern vertex keeps a bit set of host candidates, narrowed by
//! each placement, and the vertex with the fewest candidates is placed next.

use super::{GraphData, VertexMap};
use crate::bitset::BitSet;
use std::collections::BTreeMap;

/// Colour refinement run jointly over several graphs so that colours are
/// comparable across them. Colours depend only on isomorphism-invariant data.
fn refine_joint(graphs: &[&GraphData]) -> Vec<Vec<u32>> {
    let mut colors: Vec<Vec<u32>> = graphs
        .iter()
        .map(|g| (0..g.order()).map(|u| g.has_loop(u) as u32).collect())
        .collect();
    let mut classes = count_classes(&colors);
    loop {
        let mut sigs: Vec<Vec<(u32, Vec<u32>, Vec<u32>)>> = Vec::with_capacity(graphs.len());
        for (g, col) in graphs.iter().zip(&colors) {
            let mut per = Vec::with_capacity(g.order());
            for u in 0..g.order() {
                let mut outs: Vec<u32> = g.neighbors(u).iter().map(|v| col[v]).collect();
                outs.sort_unstable();
                let ins = if g.is_directed() {
                    let mut ins: Vec<u32> = g.in_neighbors(u).iter().map(|v| col[v]).collect();
                    ins.sort_unstable();
                    ins
                } else {
                    Vec::new()
                };
                per.push((col[u], outs, ins));
            }
            sigs.push(per);
        }
        let mut table: BTreeMap<&(u32, Vec<u32>, Vec<u32>), u32> = BTreeMap::new();
        for per in &sigs {
            for s in per {
                table.entry(s).or_insert(0);
            }
        }
        for (i, v) in table.values_mut().enumerate() {
            *v = i as u32;
        }
        let next: Vec<Vec<u32>> = sigs.iter().map(|per| per.iter().map(|s| table[s]).collect()).collect();
        let next_classes = count_classes(&next);
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn count_classes(colors: &[Vec<u32>]) -> usize {
    let mut all: Vec<u32> = colors.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

/// Stable colour refinement of a single graph; colours are canonical
/// (independent of the vertex labelling).
pub fn refine_colors(g: &GraphData) -> Vec<u32> {
    refine_joint(&[g]).pop().unwrap_or_default()
}

struct Matcher<'a> {
    pat: &'a GraphData,
    host: &'a GraphData,
    assign: Vec<Option<usize>>,
}

impl Matcher<'_> {
    fn narrow(&self, cand: &mut BitSet, w: usize, u: usize, h: usize) {
        // w -> u in the pattern must match x -> h in the host, and u -> w
        // must match h -> x.
        let n = self.host.order();
        let ins = BitSet::from_words(n, self.host.in_row(h));
        if self.pat.has_edge(w, u) {
            cand.intersect_with(&ins);
        } else {
            cand.difference_with(&ins);
        }
        if self.pat.is_directed() {
            let outs = BitSet::from_words(n, self.host.out_row(h));
            if self.pat.has_edge(u, w) {
                cand.intersect_with(&outs);
            } else {
                cand.difference_with(&outs);
            }
        }
        cand.remove(h);
    }

    fn search(&mut self, cands: Vec<Option<BitSet>>) -> bool {
        let next = cands
            .iter()
            .enumerate()
            .filter_map(|(u, c)| c.as_ref().map(|c| (c.count(), u)))
            .min();
        let Some((_, u)) = next else {
            return true;
        };
        let options = cands[u].clone().expect("unplaced vertex has candidates");
        'outer: for h in options.iter() {
            let mut child = cands.clone();
            child[u] = None;
            for w in 0..child.len() {
                if let Some(c) = child[w].as_mut() {
                    self.narrow(c, w, u, h);
                    if c.is_empty() {
                        continue 'outer;
                    }
                }
            }
            self.assign[u] = Some(h);
            if self.search(child) {
                return true;
            }
            self.assign[u] = None;
        }
        false
    }
}

fn run(pat: &GraphData, host: &GraphData, init: Vec<BitSet>) -> Option<VertexMap> {
    if init.iter().any(BitSet::is_empty) {
        return None;
    }
    let mut m = Matcher {
        pat,
        host,
        assign: vec![None; pat.order()],
    };
    if m.search(init.into_iter().map(Some).collect()) {
        Some(VertexMap::total(
            m.assign.into_iter().map(|a| a.expect("all placed")).collect(),
        ))
    } else {
        None
    }
}

/// An isomorphism `a -> b` if one exists.
pub fn isomorphism(a: &GraphData, b: &GraphData) -> Option<VertexMap> {
    if a.order() != b.order() || a.is_directed() != b.is_directed() || a.edge_count() != b.edge_count() {
        return None;
    }
    let colors = refine_joint(&[a, b]);
    let mut ca = colors[0].clone();
    let mut cb = colors[1].clone();
    ca.sort_unstable();
    cb.sort_unstable();
    if ca != cb {
        return None;
    }
    let init = (0..a.order())
        .map(|u| BitSet::from_iter(b.order(), (0..b.order()).filter(|&x| colors[1][x] == colors[0][u])))
        .collect();
    run(a, b, init)
}

pub fn is_isomorphic(a: &GraphData, b: &GraphData) -> bool {
    isomorphism(a, b).is_some()
}

/// An injective map from `pattern` into `host` whose image induces a copy of
/// `pattern`. Isomorphic graphs count as embeddable.
pub fn find_induced_embedding(pattern: &GraphData, host: &GraphData) -> Option<VertexMap> {
    if pattern.order() > host.order() || pattern.is_directed() != host.is_directed() {
        return None;
    }
    if pattern.order() == host.order() {
        return isomorphism(pattern, host);
    }
    let (np, nh) = (pattern.order(), host.order());
    let init = (0..np)
        .map(|u| {
            let (po, pi) = (pattern.degree(u), pattern.in_degree(u));
            let pl = pattern.has_loop(u);
            BitSet::from_iter(
                nh,
                (0..nh).filter(|&x| {
                    let (ho, hi) = (host.degree(x), host.in_degree(x));
                    host.has_loop(x) == pl && po <= ho && pi <= hi && np - po <= nh - ho && np - pi <= nh - hi
                }),
            )
        })
        .collect();
    run(pattern, host, init)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isomorphism_examples() {
        let c4 = GraphData::cycle(4);
        let kk = GraphData::disjoint_union(&GraphData::complete(2), &GraphData::complete(2)).unwrap();
        let w = isomorphism(&c4, &kk.complement().unwrap()).unwrap();
        assert!(w.preserves_adjacency(&c4, &kk.complement().unwrap()));
        assert!(!is_isomorphic(&GraphData::path(4), &c4));
        let k3 = GraphData::complete(3);
        let id = VertexMap::total(vec![0, 1, 2]);
        assert!(id.preserves_adjacency(&k3, &k3));
        assert!(is_isomorphic(&k3, &k3));
    }

    #[test]
    fn embedding_examples() {
        let p4 = GraphData::path(4);
        let e = find_induced_embedding(&GraphData::path(3), &p4).unwrap();
        assert!(e.is_injective());
        assert!(e.preserves_adjacency(&GraphData::path(3), &p4));
        assert!(find_induced_embedding(&GraphData::complete(3), &p4).is_none());
        assert!(find_induced_embedding(&GraphData::empty(2), &GraphData::complete(2)).is_none());
    }

    #[test]
    fn regular_graphs_need_branching() {
        // C_6 and two triangles are both 2-regular; refinement cannot split them.
        let c6 = GraphData::cycle(6);
        let tt = GraphData::disjoint_union(&GraphData::complete(3), &GraphData::complete(3)).unwrap();
        assert!(!is_isomorphic(&c6, &tt));
        let perm = [3, 5, 0, 1, 4, 2];
        assert!(is_isomorphic(&c6, &c6.permuted(&perm).unwrap()));
    }

    #[test]
    fn digraph_direction_matters() {
        let a = GraphData::from_edges(3, true, false, &[(0, 1), (1, 2)]).unwrap();
        let b = GraphData::from_edges(3, true, false, &[(0, 1), (2, 1)]).unwrap();
        assert!(!is_isomorphic(&a, &b));
        let host = GraphData::from_edges(4, true, false, &[(3, 2), (2, 0), (0, 1)]).unwrap();
        assert!(find_induced_embedding(&a, &host).is_some());
        assert!(find_induced_embedding(&b, &host).is_none());
    }
}
