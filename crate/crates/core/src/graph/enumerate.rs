//! Exhaustive generation of isomorphism classes of small graphs.

use super::{canonical_key, CanonicalKey, GraphData};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

pub const UNDIRECTED_ENUM_CAP: usize = 7;
pub const DIRECTED_ENUM_CAP: usize = 4;

/// One representative per isomorphism class of graphs (or digraphs) of
/// order `n`, sorted by canonical key.
///
/// Classes of order `n` are grown from the classes of order `n - 1` by adding
/// a vertex with every possible neighbourhood, then deduplicated by key.
pub fn enumerate_nonisomorphic(n: usize, directed: bool, loops: bool) -> Result<Vec<GraphData>> {
    let cap = if directed {
        DIRECTED_ENUM_CAP
    } else {
        UNDIRECTED_ENUM_CAP
    };
    if n > cap {
        return Err(Error::SizeLimit(format!(
            "enumeration is capped at order {cap} for {} graphs",
            if directed { "directed" } else { "undirected" }
        )));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("graphs must have at least one vertex".into()));
    }
    if loops && !directed {
        return Err(Error::InvalidArgument("loops are only supported on digraphs".into()));
    }
    let mut level: BTreeMap<CanonicalKey, GraphData> = BTreeMap::new();
    let mut seeds = vec![GraphData::new(1, directed, loops)?];
    if loops {
        seeds.push(GraphData::from_edges(1, true, true, &[(0, 0)])?);
    }
    for g in seeds {
        level.insert(canonical_key(&g)?, g);
    }
    for m in 2..=n {
        let mut next = BTreeMap::new();
        let prev = m - 1;
        let choices: u64 = if directed { 1 << (2 * prev) } else { 1 << prev };
        let loop_choices: &[bool] = if loops { &[false, true] } else { &[false] };
        for g in level.values() {
            let base = g.edges();
            for mask in 0..choices {
                for &lp in loop_choices {
                    let mut edges = base.clone();
                    for u in 0..prev {
                        if mask >> u & 1 == 1 {
                            edges.push((u, prev));
                        }
                        if directed && mask >> (prev + u) & 1 == 1 {
                            edges.push((prev, u));
                        }
                    }
                    if lp {
                        edges.push((prev, prev));
                    }
                    let h = GraphData::from_edges(m, directed, loops, &edges)?;
                    next.entry(canonical_key(&h)?).or_insert(h);
                }
            }
        }
        level = next;
    }
    Ok(level.into_values().collect())
}
