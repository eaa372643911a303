//! Hintikka-style descriptions of tuple classes over a finite family.
//!
//! The classes are computed relative to the family: the extensions of a
//! tuple range over the vertices of its own member only, and two tuples are
//! put in the same class at level `s` exactly when the sets of classes of
//! their one-vertex extensions (one set per quantifier that may follow the
//! prefix `σ`) coincide. Nothing is claimed about graphs outside the family.
//!
//! For a pattern set closed under swapping `∃` and `∀` (every pattern, or
//! the 0-alternation patterns) these are the equivalence classes of the
//! corresponding formula class, and the level-0 description of a class is
//! true on exactly its members. For other pattern sets a description is true
//! on every member of its class, and on a pair `(H, v̄)` exactly when the
//! representative is simulated by `(H, v̄)`.

use super::types::{atomic_formula, atomic_key};
use super::{Formula, Var};
use crate::error::{invalid, Error, Result};
use crate::graph::GraphData;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use std::collections::{BTreeSet, HashMap};

/// A set of quantifier strings `σ ∈ {E, A}^k` allowed as nesting patterns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuantifierPattern {
    k: usize,
    patterns: BTreeSet<String>,
    exists_first_only: bool,
}

fn alternations(p: &str) -> usize {
    p.as_bytes().windows(2).filter(|w| w[0] != w[1]).count()
}

fn all_strings(k: usize) -> impl Iterator<Item = String> {
    (0u64..1 << k).map(move |m| {
        (0..k)
            .map(|i| if m >> (k - 1 - i) & 1 == 0 { 'E' } else { 'A' })
            .collect()
    })
}

impl QuantifierPattern {
    pub fn new<I, S>(k: usize, patterns: I) -> Result<QuantifierPattern>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let patterns: BTreeSet<String> = patterns.into_iter().map(Into::into).collect();
        if patterns.is_empty() {
            return Err(invalid!("a pattern set needs at least one pattern"));
        }
        if let Some(p) = patterns
            .iter()
            .find(|p| p.len() != k || p.chars().any(|c| c != 'E' && c != 'A'))
        {
            return Err(invalid!("pattern {p:?} is not a string of {k} letters over E and A"));
        }
        Ok(QuantifierPattern {
            k,
            patterns,
            exists_first_only: false,
        })
    }

    /// Every pattern of length `k`.
    pub fn all(k: usize) -> QuantifierPattern {
        QuantifierPattern::new(k, all_strings(k)).expect("nonempty")
    }

    /// Patterns with at most `a` alternations.
    pub fn alternation(k: usize, a: usize) -> QuantifierPattern {
        QuantifierPattern::new(k, all_strings(k).filter(|p| alternations(p) <= a)).expect("nonempty")
    }

    /// `E^k` and `A^k`.
    pub fn zero_alternation(k: usize) -> QuantifierPattern {
        QuantifierPattern::alternation(k, 0)
    }

    /// Patterns that either have no alternation or start with `E` and
    /// alternate once.
    pub fn lambda_half(k: usize) -> QuantifierPattern {
        let mut p = QuantifierPattern::new(
            k,
            all_strings(k).filter(|p| alternations(p) == 0 || (alternations(p) == 1 && p.starts_with('E'))),
        )
        .expect("nonempty");
        p.exists_first_only = true;
        p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn patterns(&self) -> &BTreeSet<String> {
        &self.patterns
    }

    pub fn exists_first_only(&self) -> bool {
        self.exists_first_only
    }

    pub fn contains(&self, p: &str) -> bool {
        self.patterns.contains(p)
    }

    pub fn has_prefix(&self, sigma: &str) -> bool {
        self.patterns.iter().any(|p| p.starts_with(sigma))
    }

    /// The distinct prefixes of length `s`, sorted.
    pub fn prefixes(&self, s: usize) -> Vec<String> {
        let set: BTreeSet<String> = self
            .patterns
            .iter()
            .filter(|p| s <= p.len())
            .map(|p| p[..s].to_string())
            .collect();
        set.into_iter().collect()
    }

    /// Closed under swapping `E` and `A`.
    pub fn is_negation_closed(&self) -> bool {
        self.patterns.iter().all(|p| {
            let dual: String = p.chars().map(|c| if c == 'E' { 'A' } else { 'E' }).collect();
            self.patterns.contains(&dual)
        })
    }
}

/// Limits on the inputs of [`hintikka_descriptions`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HintikkaBudget {
    pub max_k: usize,
    pub max_order: usize,
    pub max_family: usize,
}

impl Default for HintikkaBudget {
    fn default() -> Self {
        HintikkaBudget {
            max_k: 2,
            max_order: 3,
            max_family: 30,
        }
    }
}

/// A bound that may be too large to write down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundValue {
    Exact(BigUint),
    /// `2^e`.
    PowerOfTwo(BigUint),
    /// Larger than any power of two with a representable exponent.
    Unrepresentable,
}

/// Exponents up to this size are expanded into exact values.
const EXPAND_EXPONENT: u64 = 256;

impl BoundValue {
    fn pow2(e: &BoundValue) -> BoundValue {
        match e {
            BoundValue::Exact(x) if x <= &BigUint::from(EXPAND_EXPONENT) => {
                BoundValue::Exact(BigUint::one() << x.to_u64().expect("small"))
            }
            BoundValue::Exact(x) => BoundValue::PowerOfTwo(x.clone()),
            _ => BoundValue::Unrepresentable,
        }
    }

    /// Whether `value` is at most this bound.
    pub fn admits(&self, value: &BigUint) -> bool {
        match self {
            BoundValue::Exact(b) => value <= b,
            BoundValue::PowerOfTwo(e) => e.to_u64().is_none_or(|e| value.bits() <= e),
            BoundValue::Unrepresentable => true,
        }
    }
}

impl std::fmt::Display for BoundValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundValue::Exact(x) => write!(f, "{x}"),
            BoundValue::PowerOfTwo(e) => write!(f, "2^{e}"),
            BoundValue::Unrepresentable => f.write_str("unrepresentable"),
        }
    }
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Bound columns at level `s`: class count `f(k, s)`, description length
/// `l(k, s)` from the recurrence `l(k,s) <= 2 f(k,s+1) (l(k,s+1) + 9)`, and
/// the closed form `g^(k-s)(18 k^2)` with `g(x) = 2 * 2^x * (x + 9)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthBound {
    pub s: usize,
    pub f: BoundValue,
    pub l: BoundValue,
    pub g_iterate: BoundValue,
}

fn g_step(x: &BoundValue) -> BoundValue {
    match (x, BoundValue::pow2(x)) {
        (BoundValue::Exact(v), BoundValue::Exact(p)) => BoundValue::Exact(BigUint::from(2u32) * p * (v + 9u32)),
        _ => BoundValue::Unrepresentable,
    }
}

/// Bound columns for `s = k, k-1, ..., 0`. For `k = 2` the sharper base
/// values `f(2,2) = 10` and `l(2,2) = 24` are used; otherwise
/// `f(k,k) = 4^(k^2)` and `l(k,k) = 18 k^2`.
pub fn length_bounds(k: usize) -> Vec<LengthBound> {
    let kk = (k * k) as u64;
    let (f0, l0) = if k == 2 {
        (BigUint::from(10u32), BigUint::from(24u32))
    } else {
        (BigUint::from(4u32).pow(kk as u32), BigUint::from(18 * kk))
    };
    let mut f = BoundValue::Exact(f0);
    let mut l = BoundValue::Exact(l0);
    let mut g = BoundValue::Exact(BigUint::from(18 * kk));
    let mut out = vec![LengthBound {
        s: k,
        f: f.clone(),
        l: l.clone(),
        g_iterate: g.clone(),
    }];
    for s in (0..k).rev() {
        let next_l = match (&f, &l) {
            (BoundValue::Exact(fv), BoundValue::Exact(lv)) => BoundValue::Exact(BigUint::from(2u32) * fv * (lv + 9u32)),
            _ => BoundValue::Unrepresentable,
        };
        f = BoundValue::pow2(&f);
        l = next_l;
        g = g_step(&g);
        out.push(LengthBound {
            s,
            f: f.clone(),
            l: l.clone(),
            g_iterate: g.clone(),
        });
    }
    out
}

/// One class at level `s` under prefix `σ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassEntry {
    pub id: usize,
    /// `(member index, tuple)` pairs in the class.
    pub members: Vec<(usize, Vec<usize>)>,
    pub representative: (usize, Vec<usize>),
    pub formula: Formula,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelTable {
    pub s: usize,
    pub sigma: String,
    pub classes: Vec<ClassEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescriptionTable {
    pub k: usize,
    pub pattern: QuantifierPattern,
    /// Ordered by decreasing `s`, then by `σ`.
    pub levels: Vec<LevelTable>,
    pub bounds: Vec<LengthBound>,
}

/// A failed class-count check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountViolation {
    pub s: usize,
    pub sigma: String,
    pub count: usize,
    pub bound: String,
}

impl DescriptionTable {
    pub fn level(&self, s: usize, sigma: &str) -> Option<&LevelTable> {
        self.levels.iter().find(|l| l.s == s && l.sigma == sigma)
    }

    /// The sentence classes (level 0).
    pub fn sentences(&self) -> &LevelTable {
        self.level(0, "").expect("level 0 is always present")
    }

    /// The level-0 class containing `member`.
    pub fn class_of_member(&self, member: usize) -> Option<&ClassEntry> {
        self.sentences()
            .classes
            .iter()
            .find(|c| c.members.iter().any(|m| m.0 == member))
    }

    /// Largest number of classes over the prefixes at level `s`.
    pub fn class_count(&self, s: usize) -> usize {
        self.levels
            .iter()
            .filter(|l| l.s == s)
            .map(|l| l.classes.len())
            .max()
            .unwrap_or(0)
    }

    pub fn max_length(&self, s: usize) -> usize {
        self.levels
            .iter()
            .filter(|l| l.s == s)
            .flat_map(|l| l.classes.iter().map(|c| c.length))
            .max()
            .unwrap_or(0)
    }

    /// Whether the longest description at every level is within `l(k, s)`.
    pub fn lengths_within_bounds(&self) -> bool {
        self.bounds
            .iter()
            .all(|b| b.l.admits(&BigUint::from(self.max_length(b.s))))
    }

    /// Checks `count(k) <= 4^(k^2)` and, below the top level, that the count
    /// under `σ` is at most 2 to the number of classes its extensions use.
    pub fn count_violations(&self) -> Vec<CountViolation> {
        let mut out = Vec::new();
        for lv in &self.levels {
            let count = lv.classes.len();
            let bound = if lv.s == self.k {
                BigUint::from(4u32).pow((self.k * self.k) as u32)
            } else {
                let below: usize = ['E', 'A']
                    .iter()
                    .filter_map(|q| self.level(lv.s + 1, &format!("{}{q}", lv.sigma)))
                    .map(|l| l.classes.len())
                    .sum();
                BigUint::one() << below
            };
            if BigUint::from(count) > bound {
                out.push(CountViolation {
                    s: lv.s,
                    sigma: lv.sigma.clone(),
                    count,
                    bound: bound.to_string(),
                });
            }
        }
        out
    }
}

/// Classes of the `∃` and `∀` extensions of a tuple, when that quantifier
/// may follow the prefix.
type Signature = (Option<Vec<usize>>, Option<Vec<usize>>);

struct ClassInfo {
    rep: (usize, usize),
    exists: Vec<usize>,
    forall: Option<Vec<usize>>,
    sig_index: usize,
}

struct Level {
    s: usize,
    sigma: String,
    class_of: Vec<Vec<usize>>,
    classes: Vec<ClassInfo>,
    /// `le[a][b]`: the members of class `a` are simulated by those of `b`.
    le: Vec<Vec<bool>>,
}

/// Upper limit on the total number of tuples at the top level.
const TUPLE_CAP: u128 = 20_000_000;

fn tuple_of(mut idx: usize, s: usize, n: usize) -> Vec<usize> {
    let mut t = vec![0; s];
    for i in (0..s).rev() {
        t[i] = idx % n;
        idx /= n;
    }
    t
}

fn check_family(family: &[GraphData]) -> Result<()> {
    let Some(first) = family.first() else {
        return Err(invalid!("the family is empty"));
    };
    if family.iter().any(|g| g.is_directed() != first.is_directed()) {
        return Err(invalid!("family members mix graphs and digraphs"));
    }
    if family.iter().any(|g| g.order() == 0) {
        return Err(invalid!("family members need at least one vertex"));
    }
    Ok(())
}

fn compute_levels(family: &[GraphData], pattern: &QuantifierPattern) -> Result<Vec<Level>> {
    check_family(family)?;
    let k = pattern.k();
    let total: u128 = family
        .iter()
        .map(|g| (g.order() as u128).checked_pow(k as u32).unwrap_or(u128::MAX))
        .fold(0u128, |a, b| a.saturating_add(b));
    if total > TUPLE_CAP {
        return Err(Error::SizeLimit(format!(
            "{total} tuples of length {k} exceed the cap of {TUPLE_CAP}"
        )));
    }
    let mut levels: Vec<Level> = Vec::new();
    // Top level: atomic diagrams.
    let mut keys: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut class_of = Vec::with_capacity(family.len());
    let mut reps = Vec::new();
    for (m, g) in family.iter().enumerate() {
        let n = g.order();
        let ids: Vec<usize> = (0..n.pow(k as u32))
            .map(|t| {
                let key = atomic_key(g, &tuple_of(t, k, n));
                let next = keys.len();
                *keys.entry(key).or_insert_with(|| {
                    reps.push((m, t));
                    next
                })
            })
            .collect();
        class_of.push(ids);
    }
    for sigma in pattern.prefixes(k) {
        levels.push(Level {
            s: k,
            sigma,
            class_of: class_of.clone(),
            classes: reps
                .iter()
                .map(|&rep| ClassInfo {
                    rep,
                    exists: Vec::new(),
                    forall: None,
                    sig_index: 0,
                })
                .collect(),
            le: (0..reps.len())
                .map(|a| (0..reps.len()).map(|b| a == b).collect())
                .collect(),
        });
    }
    for s in (0..k).rev() {
        let mut new_levels = Vec::new();
        for sigma in pattern.prefixes(s) {
            let child = |q: char| {
                let name = format!("{sigma}{q}");
                levels.iter().find(|l| l.s == s + 1 && l.sigma == name)
            };
            let ex = child('E');
            let fa = child('A');
            // Group tuples by the classes of their extensions.
            let mut sigs: HashMap<Signature, usize> = HashMap::new();
            let mut sig_list: Vec<(Signature, (usize, usize))> = Vec::new();
            let mut sig_of = Vec::with_capacity(family.len());
            for (m, g) in family.iter().enumerate() {
                let n = g.order();
                let collect = |lv: &Level, t: usize| -> Vec<usize> {
                    let set: BTreeSet<usize> = (0..n).map(|u| lv.class_of[m][t * n + u]).collect();
                    set.into_iter().collect()
                };
                let computed: Vec<Signature> = (0..n.pow(s as u32))
                    .into_par_iter()
                    .map(|t| (ex.map(|l| collect(l, t)), fa.map(|l| collect(l, t))))
                    .collect();
                let ids: Vec<usize> = computed
                    .into_iter()
                    .enumerate()
                    .map(|(t, sig)| {
                        let next = sigs.len();
                        *sigs.entry(sig.clone()).or_insert_with(|| {
                            sig_list.push((sig, (m, t)));
                            next
                        })
                    })
                    .collect();
                sig_of.push(ids);
            }
            // Simulation preorder between signatures.
            let below = |x: &Signature, y: &Signature| {
                let forth = match (&x.0, &y.0, ex) {
                    (Some(a), Some(b), Some(l)) => a.iter().all(|&i| b.iter().any(|&j| l.le[i][j])),
                    _ => true,
                };
                let back = match (&x.1, &y.1, fa) {
                    (Some(a), Some(b), Some(l)) => b.iter().all(|&j| a.iter().any(|&i| l.le[i][j])),
                    _ => true,
                };
                forth && back
            };
            let sig_le: Vec<Vec<bool>> = sig_list
                .par_iter()
                .map(|x| sig_list.iter().map(|y| below(&x.0, &y.0)).collect())
                .collect();
            // Mutually similar signatures form one class.
            let mut class_of_sig = vec![usize::MAX; sig_list.len()];
            let mut classes = Vec::new();
            for i in 0..sig_list.len() {
                if class_of_sig[i] != usize::MAX {
                    continue;
                }
                let id = classes.len();
                for j in i..sig_list.len() {
                    if sig_le[i][j] && sig_le[j][i] {
                        class_of_sig[j] = id;
                    }
                }
                let (sig, rep) = &sig_list[i];
                classes.push(ClassInfo {
                    rep: *rep,
                    exists: sig.0.clone().unwrap_or_default(),
                    forall: sig.1.clone(),
                    sig_index: i,
                });
            }
            let le = classes
                .iter()
                .map(|a| classes.iter().map(|b| sig_le[a.sig_index][b.sig_index]).collect())
                .collect();
            let class_of = sig_of
                .into_iter()
                .map(|ids| ids.into_iter().map(|i| class_of_sig[i]).collect())
                .collect();
            new_levels.push(Level {
                s,
                sigma,
                class_of,
                classes,
                le,
            });
        }
        levels.extend(new_levels);
    }
    Ok(levels)
}

/// Level-0 class index of every member, using the classes that
/// [`hintikka_descriptions`] would compute, without building formulas and
/// without the default budget.
pub fn sentence_classes(family: &[GraphData], pattern: &QuantifierPattern) -> Result<Vec<usize>> {
    let levels = compute_levels(family, pattern)?;
    let top = levels.iter().find(|l| l.s == 0).expect("level 0");
    Ok(top.class_of.iter().map(|c| c[0]).collect())
}

/// Hintikka descriptions with the default budget.
pub fn hintikka_descriptions(family: &[GraphData], pattern: &QuantifierPattern) -> Result<DescriptionTable> {
    hintikka_descriptions_with_budget(family, pattern, &HintikkaBudget::default())
}

pub fn hintikka_descriptions_with_budget(
    family: &[GraphData],
    pattern: &QuantifierPattern,
    budget: &HintikkaBudget,
) -> Result<DescriptionTable> {
    check_family(family)?;
    let k = pattern.k();
    if k > budget.max_k {
        return Err(Error::SizeLimit(format!(
            "rank {k} exceeds the budget of {}",
            budget.max_k
        )));
    }
    if family.len() > budget.max_family {
        return Err(Error::SizeLimit(format!(
            "family of {} graphs exceeds the budget of {}",
            family.len(),
            budget.max_family
        )));
    }
    if let Some(g) = family.iter().find(|g| g.order() > budget.max_order) {
        return Err(Error::SizeLimit(format!(
            "member of order {} exceeds the budget of {}",
            g.order(),
            budget.max_order
        )));
    }
    let levels = compute_levels(family, pattern)?;
    let mut formulas: HashMap<(usize, String), Vec<Formula>> = HashMap::new();
    let mut tables = Vec::new();
    for lv in &levels {
        let built: Vec<Formula> = lv
            .classes
            .par_iter()
            .map(|c| {
                if lv.s == k {
                    let (m, t) = c.rep;
                    return atomic_formula(&family[m], &tuple_of(t, k, family[m].order()));
                }
                let x = (lv.s + 1) as Var;
                let child = |q: char| &formulas[&(lv.s + 1, format!("{}{q}", lv.sigma))];
                let mut parts: Vec<Formula> = Vec::new();
                if pattern.has_prefix(&format!("{}E", lv.sigma)) {
                    let fs = child('E');
                    parts.extend(c.exists.iter().map(|&b| Formula::exists(x, fs[b].clone())));
                }
                if let Some(all) = &c.forall {
                    let fs = child('A');
                    parts.push(Formula::forall(
                        x,
                        Formula::or(all.iter().map(|&b| fs[b].clone()).collect()),
                    ));
                }
                Formula::and(parts)
            })
            .collect();
        let mut members: Vec<Vec<(usize, Vec<usize>)>> = vec![Vec::new(); lv.classes.len()];
        for (m, ids) in lv.class_of.iter().enumerate() {
            let n = family[m].order();
            for (t, &id) in ids.iter().enumerate() {
                members[id].push((m, tuple_of(t, lv.s, n)));
            }
        }
        let classes = lv
            .classes
            .iter()
            .zip(members)
            .enumerate()
            .map(|(id, (c, members))| ClassEntry {
                id,
                members,
                representative: (c.rep.0, tuple_of(c.rep.1, lv.s, family[c.rep.0].order())),
                length: built[id].length(),
                formula: built[id].clone(),
            })
            .collect();
        tables.push(LevelTable {
            s: lv.s,
            sigma: lv.sigma.clone(),
            classes,
        });
        formulas.insert((lv.s, lv.sigma.clone()), built);
    }
    Ok(DescriptionTable {
        k,
        pattern: pattern.clone(),
        levels: tables,
        bounds: length_bounds(k),
    })
}

#[cfg(test)]
mod tests {
    use super::super::{evaluate, Assignment};
    use super::*;
    use crate::graph::enumerate_nonisomorphic;

    /// `(g, ū)` is simulated by `(h, v̄)` for the prefix `σ`: every move the
    /// pattern allows on one side is answered on the other.
    fn simulated(p: &QuantifierPattern, sigma: &str, g: &GraphData, u: &[usize], h: &GraphData, v: &[usize]) -> bool {
        if sigma.len() == p.k() {
            let pairs = (0..u.len()).flat_map(|i| (0..u.len()).map(move |j| (i, j)));
            return pairs
                .clone()
                .all(|(i, j)| (u[i] == u[j]) == (v[i] == v[j]) && g.has_edge(u[i], u[j]) == h.has_edge(v[i], v[j]));
        }
        let ext = |w: &[usize], x: usize| {
            let mut w = w.to_vec();
            w.push(x);
            w
        };
        let se = format!("{sigma}E");
        let sa = format!("{sigma}A");
        let e_ok = !p.has_prefix(&se)
            || (0..g.order()).all(|a| (0..h.order()).any(|b| simulated(p, &se, g, &ext(u, a), h, &ext(v, b))));
        let a_ok = !p.has_prefix(&sa)
            || (0..h.order()).all(|b| (0..g.order()).any(|a| simulated(p, &sa, g, &ext(u, a), h, &ext(v, b))));
        e_ok && a_ok
    }

    fn assignment(t: &[usize]) -> Assignment {
        t.iter().enumerate().map(|(i, &x)| ((i + 1) as Var, x)).collect()
    }

    fn small_family() -> Vec<GraphData> {
        (1..=3)
            .flat_map(|n| enumerate_nonisomorphic(n, false, false).unwrap())
            .collect()
    }

    fn check_semantics(family: &[GraphData], p: &QuantifierPattern) {
        let table = hintikka_descriptions(family, p).unwrap();
        for lv in &table.levels {
            for c in &lv.classes {
                let (rm, rt) = &c.representative;
                for (m, h) in family.iter().enumerate() {
                    for t in 0..h.order().pow(lv.s as u32) {
                        let v = tuple_of(t, lv.s, h.order());
                        let truth = evaluate(h, &c.formula, &assignment(&v)).unwrap();
                        let sim = simulated(p, &lv.sigma, &family[*rm], rt, h, &v);
                        assert_eq!(
                            truth, sim,
                            "level {} {:?} class {} on member {m} {v:?}",
                            lv.s, lv.sigma, c.id
                        );
                        if c.members.contains(&(m, v.clone())) {
                            assert!(truth);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn descriptions_match_simulation() {
        let fam = small_family();
        for p in [
            QuantifierPattern::all(2),
            QuantifierPattern::zero_alternation(2),
            QuantifierPattern::lambda_half(2),
            QuantifierPattern::new(2, ["EA"]).unwrap(),
            QuantifierPattern::new(2, ["AE", "EE"]).unwrap(),
            QuantifierPattern::all(1),
        ] {
            check_semantics(&fam, &p);
        }
    }

    #[test]
    fn negation_closed_patterns_give_exact_descriptions() {
        let fam = small_family();
        for p in [QuantifierPattern::all(2), QuantifierPattern::zero_alternation(2)] {
            assert!(p.is_negation_closed());
            let table = hintikka_descriptions(&fam, &p).unwrap();
            for c in &table.sentences().classes {
                for (m, g) in fam.iter().enumerate() {
                    let member = c.members.iter().any(|x| x.0 == m);
                    assert_eq!(evaluate(g, &c.formula, &Assignment::new()).unwrap(), member);
                }
            }
        }
    }

    #[test]
    fn two_vertex_example() {
        let fam = vec![GraphData::complete(2), GraphData::empty(2)];
        let table = hintikka_descriptions(&fam, &QuantifierPattern::all(2)).unwrap();
        let c = table.class_of_member(0).unwrap();
        assert!(evaluate(&fam[0], &c.formula, &Assignment::new()).unwrap());
        assert!(!evaluate(&fam[1], &c.formula, &Assignment::new()).unwrap());
        assert_eq!(table.sentences().classes.len(), 2);
    }

    #[test]
    fn singleton_family() {
        let fam = vec![GraphData::empty(1)];
        for k in 0..=2 {
            let table = hintikka_descriptions(&fam, &QuantifierPattern::all(k)).unwrap();
            assert!(table.levels.iter().all(|l| l.classes.len() == 1));
            assert!(evaluate(&fam[0], &table.sentences().classes[0].formula, &Assignment::new()).unwrap());
        }
    }

    #[test]
    fn lengths_and_counts_within_bounds() {
        let fam = small_family();
        let table = hintikka_descriptions(&fam, &QuantifierPattern::all(2)).unwrap();
        assert!(table.count_violations().is_empty());
        for b in &table.bounds {
            assert!(b.l.admits(&BigUint::from(table.max_length(b.s))), "level {}", b.s);
        }
    }

    #[test]
    fn bound_columns() {
        let b = length_bounds(2);
        assert_eq!(b[0].l.to_string(), "24");
        assert_eq!(b[1].l.to_string(), "660");
        assert_eq!(b[1].f.to_string(), "1024");
        assert_eq!(b[2].l.to_string(), (2u64 * 1024 * 669).to_string());
        let b3 = length_bounds(3);
        assert_eq!(b3[0].f.to_string(), "262144");
        assert_eq!(b3[1].f.to_string(), "2^262144");
        assert_eq!(b3[2].f, BoundValue::Unrepresentable);
    }

    #[test]
    fn budget_is_enforced() {
        let fam = vec![GraphData::path(4)];
        assert!(matches!(
            hintikka_descriptions(&fam, &QuantifierPattern::all(2)),
            Err(Error::SizeLimit(_))
        ));
        assert!(matches!(
            hintikka_descriptions(&[GraphData::path(2)], &QuantifierPattern::all(3)),
            Err(Error::SizeLimit(_))
        ));
        assert!(hintikka_descriptions(&[], &QuantifierPattern::all(1)).is_err());
    }

    #[test]
    fn patterns() {
        assert_eq!(QuantifierPattern::all(3).patterns().len(), 8);
        assert_eq!(QuantifierPattern::zero_alternation(3).patterns().len(), 2);
        let half = QuantifierPattern::lambda_half(3);
        assert!(half.exists_first_only());
        assert!(half.contains("EEA") && half.contains("EAA") && !half.contains("AEE") && half.contains("AAA"));
        assert!(!half.is_negation_closed());
        assert!(QuantifierPattern::new(2, ["EX"]).is_err());
        assert_eq!(
            QuantifierPattern::all(2).prefixes(1),
            vec!["A".to_string(), "E".to_string()]
        );
    }

    #[test]
    fn sentence_classes_separate_members() {
        let fam = vec![GraphData::path(4), GraphData::cycle(4)];
        let c1 = sentence_classes(&fam, &QuantifierPattern::zero_alternation(1)).unwrap();
        assert_eq!(c1[0], c1[1]);
        let c3 = sentence_classes(&fam, &QuantifierPattern::zero_alternation(3)).unwrap();
        assert_ne!(c3[0], c3[1]);
    }
}
