//! Tower construction of succinctly definable graphs: seed families, the
//! level families `R_i` with their graphs `G_{i,S}`, gap filling to any
//! order, and the growth arithmetic behind it.

use crate::decomposition::{
    decompose, is_complement_connected, replace_cocomponents, uniformity_witness, ReplacementSpec,
};
use crate::error::{invalid, Error, Result};
use crate::graph::{canonical_key, enumerate_nonisomorphic, find_induced_embedding, is_isomorphic, GraphData};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::HashMap;

/// Number of seed graphs of each order.
pub const SEEDS_PER_ORDER: usize = 4;
pub const TOWER_CAP: usize = 5;
pub const GROWTH_DEPTH_CAP: usize = 4;
pub const DEFAULT_ORDER_CAP: usize = 1200;
pub const DEFAULT_LEVEL_CAP: usize = 1000;

fn factorial_ratio(f: u64, i: u64) -> BigInt {
    // f! / (f - i)!
    ((f - i + 1)..=f).fold(BigInt::one(), |acc, x| acc * x)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut r = BigUint::one();
    for j in 0..k {
        r *= n - j;
        r /= j + 1;
    }
    r
}

fn pow2(e: i64) -> BigRational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// Exact value of the expected number of bad events when all seed graphs
/// are drawn uniformly at random:
/// `16·Σ_{c≤i≤f≤2c} f!/(f−i)!·2^{−C(i,2)} + 2·Σ_{i=c}^{2c} Σ_{h=1}^{i−1} C(i,h)·2^{−h(i−h)+1}`.
pub fn seed_inequality_value(c: u64) -> Result<BigRational> {
    if c == 0 {
        return Err(invalid!("c must be positive"));
    }
    let mut first = BigRational::zero();
    for i in c..=2 * c {
        let weight = pow2(-((i * (i - 1) / 2) as i64));
        for f in i..=2 * c {
            first += BigRational::from_integer(factorial_ratio(f, i)) * &weight;
        }
    }
    let mut second = BigRational::zero();
    for i in c..=2 * c {
        for h in 1..i {
            let b = BigInt::from(binomial(i, h));
            second += BigRational::from_integer(b) * pow2(1 - (h * (i - h)) as i64);
        }
    }
    Ok(first * BigRational::from_integer(16.into()) + second * BigRational::from_integer(2.into()))
}

/// Uniform random graph of order `n` with edge probability 1/2.
pub fn random_graph(n: usize, rng: &mut impl Rng) -> GraphData {
    let mut bits = Vec::with_capacity(n * n);
    for _ in 0..n * (n - 1) / 2 {
        bits.push(rng.gen::<bool>());
    }
    let mut next = bits.into_iter();
    GraphData::undirected_from_fn(n, |_, _| next.next().unwrap_or(false)).expect("positive order")
}

/// The seed graphs `H_{i,j}` for `c ≤ i ≤ 2c`, `1 ≤ j ≤ 4`.
#[derive(Clone, Debug)]
pub struct SeedFamily {
    c: usize,
    rng_seed: Option<u64>,
    attempts: usize,
    graphs: Vec<Vec<GraphData>>,
}

/// A failed seed-family condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeedDefect {
    NotComplementConnected { order: usize, index: usize },
    Embeddable { from: (usize, usize), into: (usize, usize) },
}

impl SeedFamily {
    /// Wraps explicitly given seed graphs after checking every invariant.
    /// `graphs[i - c][j - 1]` is `H_{i,j}`.
    pub fn from_graphs(c: usize, graphs: Vec<Vec<GraphData>>) -> Result<SeedFamily> {
        let fam = SeedFamily {
            c,
            rng_seed: None,
            attempts: 0,
            graphs,
        };
        fam.check_shape()?;
        if let Some(d) = fam.defects(true).into_iter().next() {
            return Err(invalid!("seed family violates an invariant: {d:?}"));
        }
        Ok(fam)
    }

    fn check_shape(&self) -> Result<()> {
        if self.graphs.len() != self.c + 1 {
            return Err(invalid!("expected {} orders, got {}", self.c + 1, self.graphs.len()));
        }
        for (k, row) in self.graphs.iter().enumerate() {
            if row.len() != SEEDS_PER_ORDER || row.iter().any(|g| g.order() != self.c + k) {
                return Err(invalid!("row for order {} is malformed", self.c + k));
            }
        }
        Ok(())
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn rng_seed(&self) -> Option<u64> {
        self.rng_seed
    }

    /// Number of whole-family samples drawn before success.
    pub fn attempts(&self) -> usize {
        self.attempts
    }

    /// `H_{i,j}` with `1 ≤ j ≤ 4`.
    pub fn get(&self, i: usize, j: usize) -> &GraphData {
        &self.graphs[i - self.c][j - 1]
    }

    pub fn len(&self) -> usize {
        self.graphs.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All `(i, j, H_{i,j})` in order of `i` then `j`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &GraphData)> {
        self.graphs
            .iter()
            .enumerate()
            .flat_map(move |(k, row)| row.iter().enumerate().map(move |(j, g)| (self.c + k, j + 1, g)))
    }

    /// Every violated invariant, or only the first one when `first_only`.
    pub fn defects(&self, first_only: bool) -> Vec<SeedDefect> {
        let mut out: Vec<SeedDefect> = self
            .iter()
            .filter(|(_, _, g)| !is_complement_connected(g))
            .map(|(i, j, _)| SeedDefect::NotComplementConnected { order: i, index: j })
            .collect();
        if first_only && !out.is_empty() {
            out.truncate(1);
            return out;
        }
        let all: Vec<(usize, usize, &GraphData)> = self.iter().collect();
        let pairs: Vec<(usize, usize)> = (0..all.len())
            .flat_map(|a| (0..all.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && all[a].0 <= all[b].0)
            .collect();
        let bad: Vec<SeedDefect> = pairs
            .par_iter()
            .filter_map(|&(a, b)| {
                find_induced_embedding(all[a].2, all[b].2).map(|_| SeedDefect::Embeddable {
                    from: (all[a].0, all[a].1),
                    into: (all[b].0, all[b].1),
                })
            })
            .collect();
        out.extend(bad);
        if first_only {
            out.truncate(1);
        }
        out
    }
}

/// Samples whole families with `G(n, 1/2)` graphs until one satisfies every
/// invariant. Deterministic in `rng_seed`.
pub fn sample_seed_family(c: usize, rng_seed: u64, max_attempts: usize) -> Result<SeedFamily> {
    if c < 5 {
        return Err(invalid!("c = {c} is below 5"));
    }
    let v = seed_inequality_value(c as u64)?;
    if v >= BigRational::one() {
        return Err(invalid!("the seed inequality fails at c = {c}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    for attempt in 1..=max_attempts {
        let graphs = (c..=2 * c)
            .map(|i| (0..SEEDS_PER_ORDER).map(|_| random_graph(i, &mut rng)).collect())
            .collect();
        let fam = SeedFamily {
            c,
            rng_seed: Some(rng_seed),
            attempts: attempt,
            graphs,
        };
        if fam.defects(true).is_empty() {
            return Ok(fam);
        }
    }
    Err(Error::SearchFailure(format!(
        "no valid seed family within {max_attempts} attempts for seed {rng_seed}"
    )))
}

/// Four pairwise non-isomorphic complement-connected graphs of order `c`.
#[derive(Clone, Debug)]
pub struct MiniSeedFamily {
    pub c: usize,
    pub graphs: Vec<GraphData>,
}

/// Order 5 is served from enumeration (first four complement-connected
/// classes in canonical order); larger orders from seeded sampling.
pub fn mini_seed_family(c: usize) -> Result<MiniSeedFamily> {
    if c < 5 {
        return Err(invalid!("c = {c} is below 5"));
    }
    let graphs = if c == 5 {
        enumerate_nonisomorphic(5, false, false)?
            .into_iter()
            .filter(is_complement_connected)
            .take(SEEDS_PER_ORDER)
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(c as u64);
        let mut found: Vec<GraphData> = Vec::new();
        while found.len() < SEEDS_PER_ORDER {
            let g = random_graph(c, &mut rng);
            if is_complement_connected(&g) && !found.iter().any(|h| is_isomorphic(h, &g)) {
                found.push(g);
            }
        }
        found
    };
    Ok(MiniSeedFamily { c, graphs })
}

/// A graph built by the construction, with the seed index (0-based) and
/// contiguous position of every seed copy it contains.
#[derive(Clone, Debug)]
pub struct Labeled {
    pub graph: GraphData,
    /// `(start, len, seed)` for each seed copy, in vertex order.
    pub pieces: Vec<(usize, usize, usize)>,
}

impl Labeled {
    fn seed(graph: GraphData, seed: usize) -> Labeled {
        let n = graph.order();
        Labeled {
            graph,
            pieces: vec![(0, n, seed)],
        }
    }
}

fn build_from(parts: &[&Labeled]) -> Result<Labeled> {
    if parts.len() < 2 {
        return Err(invalid!("G_(i,S) needs |S| >= 2"));
    }
    let graphs: Vec<&GraphData> = parts.iter().map(|p| &p.graph).collect();
    let graph = GraphData::disjoint_union_all(&graphs)?.complement()?;
    let mut pieces = Vec::new();
    let mut offset = 0;
    for p in parts {
        pieces.extend(p.pieces.iter().map(|&(s, l, j)| (s + offset, l, j)));
        offset += p.graph.order();
    }
    Ok(Labeled { graph, pieces })
}

/// The family `R_i`, stored as graphs with their seed bookkeeping.
#[derive(Clone, Debug)]
pub struct LevelFamily {
    pub level: usize,
    pub member_order: usize,
    pub members: Vec<Labeled>,
    /// Isomorphic duplicates dropped while building (expected to be 0).
    pub duplicates_removed: usize,
}

impl LevelFamily {
    pub fn from_mini(seeds: &MiniSeedFamily) -> LevelFamily {
        LevelFamily {
            level: 0,
            member_order: seeds.c,
            members: seeds
                .graphs
                .iter()
                .enumerate()
                .map(|(j, g)| Labeled::seed(g.clone(), j))
                .collect(),
            duplicates_removed: 0,
        }
    }

    /// `R_0 = {H_{c,1}, …, H_{c,4}}` of a full seed family.
    pub fn from_seeds(seeds: &SeedFamily) -> LevelFamily {
        LevelFamily {
            level: 0,
            member_order: seeds.c,
            members: (1..=SEEDS_PER_ORDER)
                .map(|j| Labeled::seed(seeds.get(seeds.c, j).clone(), j - 1))
                .collect(),
            duplicates_removed: 0,
        }
    }

    pub fn graphs(&self) -> impl Iterator<Item = &GraphData> {
        self.members.iter().map(|m| &m.graph)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// `G_{i,S}`: the complement of the disjoint union of the members indexed
/// by `subset`.
#[allow(non_snake_case)]
pub fn build_G(prev: &LevelFamily, subset: &[usize]) -> Result<GraphData> {
    Ok(build_labeled(prev, subset)?.graph)
}

pub fn build_labeled(prev: &LevelFamily, subset: &[usize]) -> Result<Labeled> {
    let mut s = subset.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != subset.len() {
        return Err(invalid!("subset has repeated members"));
    }
    if let Some(&bad) = s.iter().find(|&&k| k >= prev.members.len()) {
        return Err(invalid!("member {bad} out of range"));
    }
    let parts: Vec<&Labeled> = subset.iter().map(|&k| &prev.members[k]).collect();
    build_from(&parts)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(pos) = (0..k).rev().find(|&p| cur[p] < n - k + p) else {
            return out;
        };
        cur[pos] += 1;
        for q in pos + 1..k {
            cur[q] = cur[q - 1] + 1;
        }
    }
}

/// The `rank`-th `k`-subset of `0..n` in lexicographic order.
pub fn unrank_combination(n: usize, k: usize, mut rank: u128) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(k);
    let mut start = 0;
    for left in (1..=k).rev() {
        let mut found = false;
        for x in start..n {
            let count = binomial((n - x - 1) as u64, (left - 1) as u64)
                .to_u128()
                .ok_or_else(|| Error::SizeLimit("combination count overflow".into()))?;
            if rank < count {
                out.push(x);
                start = x + 1;
                found = true;
                break;
            }
            rank -= count;
        }
        if !found {
            return Err(invalid!("combination rank out of range"));
        }
    }
    Ok(out)
}

/// `R_i` from `R_{i-1}`: all `G_{i,S}` over half-size subsets, in
/// lexicographic order of the subsets.
pub fn build_level_family(prev: &LevelFamily, cap: usize) -> Result<LevelFamily> {
    let r = prev.members.len();
    if r < 4 || r % 2 == 1 {
        return Err(invalid!("previous family must have an even size >= 4, got {r}"));
    }
    let count = binomial(r as u64, (r / 2) as u64);
    if count > BigUint::from(cap) {
        return Err(Error::SizeLimit(format!(
            "level {} would have {count} members, above the cap {cap}",
            prev.level + 1
        )));
    }
    let built: Vec<Labeled> = combinations(r, r / 2)
        .par_iter()
        .map(|s| build_labeled(prev, s))
        .collect::<Result<_>>()?;
    let mut members: Vec<Labeled> = Vec::with_capacity(built.len());
    let mut duplicates_removed = 0;
    let mut keys = std::collections::HashSet::new();
    for m in built {
        let dup = if m.graph.order() <= crate::graph::DEFAULT_CANON_LIMIT {
            !keys.insert(canonical_key(&m.graph)?)
        } else {
            members.iter().any(|x| is_isomorphic(&x.graph, &m.graph))
        };
        if dup {
            duplicates_removed += 1;
        } else {
            members.push(m);
        }
    }
    Ok(LevelFamily {
        level: prev.level + 1,
        member_order: prev.member_order * (r / 2),
        members,
        duplicates_removed,
    })
}

/// Builds individual members of `R_i` on demand without materialising
/// whole levels: member `k` of `R_i` is `G_{i,S}` for the `k`-th half-size
/// subset `S` of `R_{i-1}`.
pub struct LazyLevels {
    base: LevelFamily,
    sizes: Vec<usize>,
    cache: HashMap<(usize, usize), Labeled>,
}

impl LazyLevels {
    pub fn new(base: LevelFamily) -> LazyLevels {
        let r0 = base.members.len();
        LazyLevels {
            base,
            sizes: vec![r0],
            cache: HashMap::new(),
        }
    }

    fn size(&mut self, level: usize) -> Result<usize> {
        while self.sizes.len() <= level {
            let r = *self.sizes.last().expect("nonempty");
            let next = binomial(r as u64, (r / 2) as u64)
                .to_usize()
                .ok_or_else(|| Error::SizeLimit("level size overflow".into()))?;
            self.sizes.push(next);
        }
        Ok(self.sizes[level])
    }

    pub fn member(&mut self, level: usize, k: usize) -> Result<Labeled> {
        if level == 0 {
            return self
                .base
                .members
                .get(k)
                .cloned()
                .ok_or_else(|| invalid!("seed index {k} out of range"));
        }
        if let Some(m) = self.cache.get(&(level, k)) {
            return Ok(m.clone());
        }
        let r = self.size(level - 1)?;
        let subset = unrank_combination(r, r / 2, k as u128)?;
        let m = self.build(level - 1, &subset)?;
        self.cache.insert((level, k), m.clone());
        Ok(m)
    }

    /// `G_{level+1, S}` for members `subset` of `R_level`.
    pub fn build(&mut self, level: usize, subset: &[usize]) -> Result<Labeled> {
        let parts: Vec<Labeled> = subset.iter().map(|&k| self.member(level, k)).collect::<Result<_>>()?;
        let refs: Vec<&Labeled> = parts.iter().collect();
        build_from(&refs)
    }
}

/// Exact integer `min{i : Tower(i) >= n}`.
pub fn log_star(n: &BigUint) -> usize {
    let mut t = BigUint::one();
    let mut i = 0;
    loop {
        if &t >= n {
            return i;
        }
        // 2^t > n as soon as t reaches the bit length of n.
        if t >= BigUint::from(n.bits()) {
            return i + 1;
        }
        let e = t.to_usize().expect("below the bit length of n");
        t = BigUint::one() << e;
        i += 1;
    }
}

pub fn log_star_u64(n: u64) -> usize {
    log_star(&BigUint::from(n.max(1)))
}

pub fn tower(i: usize) -> Result<BigUint> {
    if i > TOWER_CAP {
        return Err(Error::SizeLimit(format!("Tower({i}) is above the cap {TOWER_CAP}")));
    }
    let mut t = BigUint::one();
    for _ in 0..i {
        t = BigUint::one() << t.to_usize().expect("materialisable exponent");
    }
    Ok(t)
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthRow {
    pub i: usize,
    pub n: String,
    pub r: String,
    pub m: String,
    pub tower: String,
    pub m_exceeds_tower: bool,
}

#[derive(Clone, Debug)]
pub struct GrowthTable {
    pub c: usize,
    pub n: Vec<BigUint>,
    pub r: Vec<BigUint>,
    pub m: Vec<BigUint>,
    pub tower: Vec<BigUint>,
}

impl GrowthTable {
    pub fn rows(&self) -> Vec<GrowthRow> {
        (0..self.n.len())
            .map(|i| GrowthRow {
                i,
                n: self.n[i].to_string(),
                r: self.r[i].to_string(),
                m: self.m[i].to_string(),
                tower: self.tower[i].to_string(),
                m_exceeds_tower: self.m[i] > self.tower[i],
            })
            .collect()
    }
}

/// `n_i`, `r_i`, `m_i = r_i/2` and `Tower(i)` for `0 ≤ i ≤ depth`.
pub fn growth_table(c: usize, depth: usize) -> Result<GrowthTable> {
    if depth > GROWTH_DEPTH_CAP {
        return Err(Error::SizeLimit(format!(
            "growth depth {depth} above the cap {GROWTH_DEPTH_CAP}"
        )));
    }
    let mut n = vec![BigUint::from(c)];
    let mut r = vec![BigUint::from(SEEDS_PER_ORDER)];
    for i in 1..=depth {
        let half = &r[i - 1] / 2u32;
        n.push(&n[i - 1] * &half);
        let rp = r[i - 1]
            .to_u64()
            .ok_or_else(|| Error::SizeLimit("r too large".into()))?;
        r.push(binomial(rp, rp / 2));
    }
    let m = r.iter().map(|x| x / 2u32).collect();
    let tower = (0..=depth).map(tower).collect::<Result<_>>()?;
    Ok(GrowthTable { c, n, r, m, tower })
}

/// What the gap-filling construction guarantees about its output.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct OrderCertificate {
    pub n: usize,
    pub c: usize,
    /// Level `i` with `2 n_i ≤ n < 2 n_{i+1}`.
    pub level: usize,
    /// Number of members of `R_i` joined.
    pub s: usize,
    pub rank: usize,
    pub uniform: bool,
    pub connected: bool,
    pub cocomponent_min: usize,
    pub cocomponent_max: usize,
    /// Sizes chosen for the cocomponents, in vertex order.
    pub sizes: Vec<usize>,
    /// `rank + (largest cocomponent) + 1`, the strategy bound on `D_0`.
    pub main_lemma_bound: usize,
    /// `rank + 2c + 2`.
    pub certificate: usize,
    pub log_star: usize,
    /// `certificate ≤ log*(n) + 22`.
    pub within_bound: bool,
}

/// Greedy size assignment: every block starts at `lo` and the first block
/// that can still grow is incremented until the sizes sum to `target`.
pub fn greedy_sizes(blocks: usize, lo: usize, hi: usize, target: usize) -> Result<Vec<usize>> {
    if blocks * lo > target || blocks * hi < target {
        return Err(invalid!(
            "target {target} unreachable with {blocks} blocks in [{lo},{hi}]"
        ));
    }
    let mut sizes = vec![lo; blocks];
    let mut total = blocks * lo;
    let mut k = 0;
    while total < target {
        while sizes[k] == hi {
            k += 1;
        }
        sizes[k] += 1;
        total += 1;
    }
    Ok(sizes)
}

/// A connected uniform inclusion-free graph of order exactly `n` built from
/// `G_{i+1,S}` by cocomponent replacement.
pub fn graph_of_order(n: usize, seeds: &SeedFamily, order_cap: usize) -> Result<(GraphData, OrderCertificate)> {
    let c = seeds.c;
    if n <= 2 * c {
        return Err(invalid!("order {n} is at most 2c = {}", 2 * c));
    }
    if n > order_cap {
        return Err(Error::SizeLimit(format!("order {n} above the cap {order_cap}")));
    }
    // Level sizes as integers; n ≤ cap keeps every used value small.
    let mut ns = vec![c];
    let mut rs = vec![SEEDS_PER_ORDER];
    while 2 * ns[ns.len() - 1] * rs[rs.len() - 1] / 2 <= n {
        let i = ns.len() - 1;
        ns.push(ns[i] * rs[i] / 2);
        let r = binomial(rs[i] as u64, (rs[i] / 2) as u64)
            .to_usize()
            .ok_or_else(|| Error::SizeLimit("level size overflow".into()))?;
        rs.push(r);
    }
    let level = ns.len() - 1;
    let ni = ns[level];
    debug_assert!(2 * ni <= n && n < ni * rs[level]);
    let s = n / ni;
    let mut lazy = LazyLevels::new(LevelFamily::from_seeds(seeds));
    let subset: Vec<usize> = (0..s).collect();
    let g = lazy.build(level, &subset)?;
    let rank = level + 1;
    let sizes = greedy_sizes(g.pieces.len(), c, 2 * c, n)?;
    let specs: Vec<ReplacementSpec> = g
        .pieces
        .iter()
        .zip(&sizes)
        .map(|(&(start, len, seed), &size)| {
            let h = seeds.get(size, seed + 1);
            // The member of Dec^rank on a block is the induced subgraph for
            // even rank and its complement for odd rank.
            let replacement = if rank % 2 == 0 { h.clone() } else { h.complement()? };
            Ok(ReplacementSpec {
                target_block: (start..start + len).collect(),
                replacement,
            })
        })
        .collect::<Result<_>>()?;
    let (gf, _) = replace_cocomponents(&g.graph, &specs)?;
    let view = decompose(&gf, None)?;
    let cocos = view.cocomponent_blocks();
    let cmin = cocos.iter().map(|b| b.count()).min().unwrap_or(0);
    let cmax = cocos.iter().map(|b| b.count()).max().unwrap_or(0);
    let ls = log_star_u64(n as u64);
    let certificate = view.rank() + 2 * c + 2;
    let cert = OrderCertificate {
        n: gf.order(),
        c,
        level,
        s,
        rank: view.rank(),
        uniform: uniformity_witness(&gf)?.is_none(),
        connected: gf.is_connected(),
        cocomponent_min: cmin,
        cocomponent_max: cmax,
        sizes,
        main_lemma_bound: view.rank() + cmax + 1,
        certificate,
        log_star: ls,
        within_bound: certificate <= ls + 22,
    };
    if cert.rank != rank || cert.n != n {
        return Err(Error::Internal(format!(
            "construction produced order {} rank {} instead of {n}, {rank}",
            cert.n, cert.rank
        )));
    }
    Ok((gf, cert))
}

/// Compares two rationals against 1 for reporting.
pub fn below_one(v: &BigRational) -> bool {
    v.cmp(&BigRational::one()) == Ordering::Less
}
