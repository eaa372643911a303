//! Canonical keys for small graphs.
//!
//! The key is the lexicographically least adjacency bit string over all
//! vertex orders that list colour-refinement classes in canonical colour
//! order. Refinement is label independent, so equal keys mean isomorphic
//! graphs and isomorphic graphs get equal keys.

use super::{refine_colors, GraphData};
use crate::error::{Error, Result};

pub const DEFAULT_CANON_LIMIT: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn bytes(&self) -> &[u8] {
        &self.0
    }
}

pub fn canonical_key(g: &GraphData) -> Result<CanonicalKey> {
    canonical_key_with_limit(g, DEFAULT_CANON_LIMIT)
}

pub fn canonical_key_with_limit(g: &GraphData, limit: usize) -> Result<CanonicalKey> {
    if g.order() > limit {
        return Err(Error::SizeLimit(format!(
            "canonical keys are limited to order {limit}, got {}",
            g.order()
        )));
    }
    let colors = refine_colors(g);
    let mut cells: Vec<u32> = colors.clone();
    cells.sort_unstable();
    let mut search = Search {
        g,
        colors: &colors,
        slot_color: cells,
        order: Vec::with_capacity(g.order()),
        used: vec![false; g.order()],
        bits: Vec::new(),
        best: None,
    };
    search.run();
    let mut bytes = vec![g.order() as u8, g.is_directed() as u8, g.loops_allowed() as u8];
    bytes.extend(search.best.expect("at least one ordering"));
    Ok(CanonicalKey(bytes))
}

struct Search<'a> {
    g: &'a GraphData,
    colors: &'a [u32],
    slot_color: Vec<u32>,
    order: Vec<usize>,
    used: Vec<bool>,
    bits: Vec<u8>,
    best: Option<Vec<u8>>,
}

impl Search<'_> {
    // Bits contributed by placing `v` at the next position: its relation to
    // every earlier position (both directions for digraphs) and its loop.
    fn push_bits(&mut self, v: usize) {
        for &u in &self.order {
            self.bits.push(self.g.has_edge(u, v) as u8);
            if self.g.is_directed() {
                self.bits.push(self.g.has_edge(v, u) as u8);
            }
        }
        if self.g.loops_allowed() {
            self.bits.push(self.g.has_loop(v) as u8);
        }
    }

    fn run(&mut self) {
        let pos = self.order.len();
        if pos == self.g.order() {
            if self.best.as_ref().is_none_or(|b| self.bits < *b) {
                self.best = Some(self.bits.clone());
            }
            return;
        }
        let want = self.slot_color[pos];
        for v in 0..self.g.order() {
            if self.used[v] || self.colors[v] != want {
                continue;
            }
            let mark = self.bits.len();
            self.push_bits(v);
            // The bit string is built position by position, so a prefix that
            // is already larger than the best one can be pruned.
            let prune = match &self.best {
                Some(b) => self.bits[..] > b[..self.bits.len()],
                None => false,
            };
            if !prune {
                self.used[v] = true;
                self.order.push(v);
                self.run();
                self.order.pop();
                self.used[v] = false;
            }
            self.bits.truncate(mark);
        }
    }
}
