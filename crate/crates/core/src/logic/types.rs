//! Quantifier-free types (atomic diagrams) of vertex tuples.

use super::{Formula, Var};
use crate::error::{Error, Result};
use crate::graph::GraphData;
use serde::Serialize;
use std::collections::BTreeSet;

/// Largest tuple length accepted by the enumerators.
pub const QF_TYPE_CAP: usize = 3;

/// An atomic diagram of a `k`-tuple `(x_1, ..., x_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QfType {
    pub k: usize,
    /// Restricted growth string: `blocks[i] == blocks[j]` iff `x_{i+1} = x_{j+1}`.
    pub blocks: Vec<usize>,
    /// Arcs between variable positions, 0-based; symmetric pairs appear
    /// once with `i <= j` on undirected graphs.
    pub arcs: Vec<(usize, usize)>,
    /// The conjunction of all literals of the diagram.
    pub formula: Formula,
}

/// Literal pairs `(i, j)` of 0-based positions whose adjacency is recorded.
fn adjacency_positions(k: usize, directed: bool, loops: bool) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let keep = if directed {
                i != j || loops
            } else {
                i < j || (i == j && loops)
            };
            if keep {
                out.push((i, j));
            }
        }
    }
    out
}

fn diagram_formula(
    k: usize,
    directed: bool,
    loops: bool,
    eq: impl Fn(usize, usize) -> bool,
    adj: impl Fn(usize, usize) -> bool,
) -> Formula {
    let v = |i: usize| (i + 1) as Var;
    let mut lits = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let a = Formula::eq(v(i), v(j));
            lits.push(if eq(i, j) { a } else { Formula::not(a) });
        }
    }
    for (i, j) in adjacency_positions(k, directed, loops) {
        let a = Formula::adj(v(i), v(j));
        lits.push(if adj(i, j) { a } else { Formula::not(a) });
    }
    Formula::and(lits)
}

/// The atomic diagram of `tuple` in `g` as a conjunction of literals over
/// `x_1, ..., x_k`.
pub(crate) fn atomic_formula(g: &GraphData, tuple: &[usize]) -> Formula {
    diagram_formula(
        tuple.len(),
        g.is_directed(),
        g.loops_allowed(),
        |i, j| tuple[i] == tuple[j],
        |i, j| g.has_edge(tuple[i], tuple[j]),
    )
}

/// A key identifying the atomic diagram of `tuple` in `g`.
pub(crate) fn atomic_key(g: &GraphData, tuple: &[usize]) -> Vec<bool> {
    let k = tuple.len();
    let mut key = Vec::with_capacity(k * k * 2);
    for i in 0..k {
        for j in 0..k {
            key.push(tuple[i] == tuple[j]);
            key.push(g.has_edge(tuple[i], tuple[j]));
        }
    }
    key
}

fn restricted_growth(k: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let top = cur.iter().copied().max().map_or(0, |m| m + 1);
        for b in 0..=top {
            cur.push(b);
            rec(cur, k, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), k, &mut out);
    out
}

fn check_cap(k: usize) -> Result<()> {
    if k > QF_TYPE_CAP {
        return Err(Error::SizeLimit(format!(
            "quantifier-free types are enumerated for k <= {QF_TYPE_CAP}, got {k}"
        )));
    }
    Ok(())
}

/// Every atomic diagram realisable by a `k`-tuple (with repetitions
/// allowed), one entry per logically distinct diagram of the ordered tuple.
pub fn enumerate_qf_types(k: usize, directed: bool, loops: bool) -> Result<Vec<QfType>> {
    check_cap(k)?;
    let mut out = Vec::new();
    for blocks in restricted_growth(k) {
        let b = blocks.iter().copied().max().map_or(0, |m| m + 1);
        let slots = adjacency_positions(b, directed, loops);
        for mask in 0u32..(1 << slots.len()) {
            let has = |p: usize, q: usize| {
                let s = if directed || p <= q { (p, q) } else { (q, p) };
                slots.iter().position(|&t| t == s).is_some_and(|i| mask >> i & 1 == 1)
            };
            out.push(make_type(k, directed, loops, &blocks, has));
        }
    }
    Ok(out)
}

fn make_type(k: usize, directed: bool, loops: bool, blocks: &[usize], has: impl Fn(usize, usize) -> bool) -> QfType {
    let arcs = adjacency_positions(k, directed, loops)
        .into_iter()
        .filter(|&(i, j)| has(blocks[i], blocks[j]))
        .collect();
    QfType {
        k,
        blocks: blocks.to_vec(),
        arcs,
        formula: diagram_formula(
            k,
            directed,
            loops,
            |i, j| blocks[i] == blocks[j],
            |i, j| has(blocks[i], blocks[j]),
        ),
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// Configurations of `k` distinct vertices up to relabelling: one
/// representative (smallest arc list) per isomorphism class of the
/// induced structure.
pub fn enumerate_qf_configurations(k: usize, directed: bool, loops: bool) -> Result<Vec<QfType>> {
    check_cap(k)?;
    let blocks: Vec<usize> = (0..k).collect();
    let perms = permutations(k);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for t in enumerate_qf_types(k, directed, loops)?
        .into_iter()
        .filter(|t| t.blocks == blocks)
    {
        let set: BTreeSet<(usize, usize)> = t.arcs.iter().copied().collect();
        let canon = perms
            .iter()
            .map(|p| {
                let mut arcs: Vec<(usize, usize)> = set
                    .iter()
                    .map(|&(i, j)| {
                        let (a, b) = (p[i], p[j]);
                        if directed || a <= b {
                            (a, b)
                        } else {
                            (b, a)
                        }
                    })
                    .collect();
                arcs.sort_unstable();
                arcs
            })
            .min()
            .expect("at least one permutation");
        if seen.insert(canon) {
            out.push(t);
        }
    }
    Ok(out)
}
