//! Sentence synthesis and syntactic transforms.

use super::{evaluate, Assignment, Formula, Quantifier, Var};
use crate::error::{invalid, Result};
use crate::graph::GraphData;

/// The generic sentence saying that there are `n` distinct vertices with
/// exactly the adjacencies of `g`, and no `n + 1` distinct vertices.
pub fn trivial_defining_sentence(g: &GraphData) -> Formula {
    let n = g.order();
    let v = |i: usize| (i + 1) as Var;
    let mut lits = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            lits.push(Formula::not(Formula::eq(v(i), v(j))));
        }
    }
    for i in 0..n {
        for j in 0..n {
            let keep = if g.is_directed() {
                i != j || g.loops_allowed()
            } else {
                i < j
            };
            if keep {
                let a = Formula::adj(v(i), v(j));
                lits.push(if g.has_edge(i, j) { a } else { Formula::not(a) });
            }
        }
    }
    let vars: Vec<Var> = (0..n).map(v).collect();
    let all: Vec<Var> = (0..=n).map(v).collect();
    let mut eqs = Vec::new();
    for i in 0..=n {
        for j in i + 1..=n {
            eqs.push(Formula::eq(v(i), v(j)));
        }
    }
    Formula::and(vec![
        Formula::exists_all(&vars, Formula::and(lits)),
        Formula::forall_all(&all, Formula::or(eqs)),
    ])
}

/// Whether no existential quantifier lies in the scope of a universal one
/// and every negation sits on an atom.
fn is_exists_forall_shaped(phi: &Formula) -> bool {
    phi.negations_on_atoms()
        && phi.quantifier_chains().iter().all(|c| {
            c.windows(2)
                .all(|w| !(w[0] == Quantifier::Forall && w[1] == Quantifier::Exists))
        })
}

struct Pull {
    scope: Vec<(Var, Var)>,
    exists: Vec<Var>,
    forall: Vec<Var>,
    next: Var,
}

impl Pull {
    fn lookup(&self, v: Var) -> Var {
        self.scope.iter().rev().find(|p| p.0 == v).map_or(v, |p| p.1)
    }

    fn strip(&mut self, f: &Formula) -> Formula {
        match f {
            Formula::Eq(a, b) => Formula::Eq(self.lookup(*a), self.lookup(*b)),
            Formula::Adj(a, b) => Formula::Adj(self.lookup(*a), self.lookup(*b)),
            Formula::Not(g) => Formula::not(self.strip(g)),
            Formula::And(gs) => Formula::And(gs.iter().map(|g| self.strip(g)).collect()),
            Formula::Or(gs) => Formula::Or(gs.iter().map(|g| self.strip(g)).collect()),
            Formula::Exists(v, g) | Formula::Forall(v, g) => {
                let fresh = self.next;
                self.next += 1;
                if matches!(f, Formula::Exists(..)) {
                    self.exists.push(fresh);
                } else {
                    self.forall.push(fresh);
                }
                self.scope.push((*v, fresh));
                let body = self.strip(g);
                self.scope.pop();
                body
            }
        }
    }
}

/// Converts a sentence with no existential quantifier under a universal
/// one (in particular any 0-alternating sentence) to the prenex form
/// `∃x_1..∃x_l ∀y_1..∀y_m (matrix)`. Quantified variables are renamed apart
/// and numbered in the order they are met, existential ones first.
pub fn to_prenex(phi: &Formula) -> Result<Formula> {
    if !phi.is_sentence() {
        return Err(invalid!("prenex conversion needs a sentence"));
    }
    if !is_exists_forall_shaped(phi) {
        return Err(invalid!(
            "prenex conversion needs negations on atoms and no existential quantifier below a universal one"
        ));
    }
    let mut p = Pull {
        scope: Vec::new(),
        exists: Vec::new(),
        forall: Vec::new(),
        next: 1,
    };
    let matrix = p.strip(phi);
    // Renumber so that existential variables come first.
    let mut order = p.exists.clone();
    order.extend(&p.forall);
    let rename = |v: Var| order.iter().position(|&w| w == v).expect("bound") as Var + 1;
    let matrix = rename_vars(&matrix, &rename);
    let l = p.exists.len() as Var;
    let m = p.forall.len() as Var;
    let ex: Vec<Var> = (1..=l).collect();
    let fa: Vec<Var> = (l + 1..=l + m).collect();
    Ok(Formula::exists_all(&ex, Formula::forall_all(&fa, matrix)))
}

fn rename_vars(f: &Formula, r: &impl Fn(Var) -> Var) -> Formula {
    match f {
        Formula::Eq(a, b) => Formula::Eq(r(*a), r(*b)),
        Formula::Adj(a, b) => Formula::Adj(r(*a), r(*b)),
        Formula::Not(g) => Formula::not(rename_vars(g, r)),
        Formula::And(gs) => Formula::And(gs.iter().map(|g| rename_vars(g, r)).collect()),
        Formula::Or(gs) => Formula::Or(gs.iter().map(|g| rename_vars(g, r)).collect()),
        Formula::Exists(v, g) => Formula::exists(r(*v), rename_vars(g, r)),
        Formula::Forall(v, g) => Formula::forall(r(*v), rename_vars(g, r)),
    }
}

/// Splits a prenex sentence into its existential prefix, universal prefix
/// and matrix.
fn split_prenex(psi: &Formula) -> Option<(Vec<Var>, Vec<Var>, &Formula)> {
    let mut ex = Vec::new();
    let mut fa = Vec::new();
    let mut cur = psi;
    loop {
        match cur {
            Formula::Exists(v, g) if fa.is_empty() => {
                ex.push(*v);
                cur = g;
            }
            Formula::Forall(v, g) => {
                fa.push(*v);
                cur = g;
            }
            _ => break,
        }
    }
    (cur.quantifier_count() == 0).then_some((ex, fa, cur))
}

/// Cap on the number of existential assignments tried.
const WITNESS_SEARCH_CAP: u128 = 50_000_000;

/// A set of at most `max(l, 1)` vertices of `h` whose induced substructure
/// satisfies the prenex sentence `psi` with `l` existential quantifiers.
pub fn small_model_witness(psi: &Formula, h: &GraphData) -> Result<Vec<usize>> {
    let (ex, fa, matrix) = split_prenex(psi).ok_or_else(|| invalid!("expected a prenex ∃*∀* sentence"))?;
    if !psi.is_sentence() {
        return Err(invalid!("expected a sentence"));
    }
    if h.order() == 0 {
        return Err(invalid!("the structure has no vertices"));
    }
    if !evaluate(h, psi, &Assignment::new())? {
        return Err(invalid!("the sentence is false on the given structure"));
    }
    if ex.is_empty() {
        return Ok(vec![0]);
    }
    let n = h.order();
    let universal = Formula::forall_all(&fa, matrix.clone());
    // Only variables the matrix mentions are searched; the others take the
    // value of the first searched one so that they add no vertex.
    let free = universal.free_vars();
    let searched: Vec<Var> = ex.iter().copied().filter(|v| free.contains(v)).collect();
    if (n as u128)
        .checked_pow(searched.len() as u32)
        .is_none_or(|t| t > WITNESS_SEARCH_CAP)
    {
        return Err(crate::Error::SizeLimit(format!(
            "{n}^{} existential assignments exceed the search cap",
            searched.len()
        )));
    }
    let mut cur = vec![0usize; searched.len()];
    loop {
        let a: Assignment = searched.iter().copied().zip(cur.iter().copied()).collect();
        if evaluate(h, &universal, &a)? {
            let mut set = cur.clone();
            if set.is_empty() {
                set.push(0);
            }
            set.sort_unstable();
            set.dedup();
            let sub = h.induced_subgraph(&set)?;
            if evaluate(&sub, psi, &Assignment::new())? {
                return Ok(set);
            }
        }
        let mut i = searched.len();
        loop {
            if i == 0 {
                return Err(crate::Error::Internal(
                    "no satisfying existential assignment yields a substructure model".into(),
                ));
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < n {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// Pushes every quantifier as far inward as it goes: vacuous quantifiers
/// are dropped, ∀ distributes over ∧ and ∃ over ∨, conjuncts or disjuncts
/// not mentioning the bound variable move out of its scope, and adjacent
/// quantifiers of one kind commute. The result is equivalent to `phi` on
/// every nonempty model.
pub fn miniscope(phi: &Formula) -> Formula {
    match phi {
        Formula::Eq(..) | Formula::Adj(..) => phi.clone(),
        Formula::Not(h) => Formula::Not(Box::new(miniscope(h))),
        Formula::And(hs) => Formula::And(hs.iter().map(miniscope).collect()),
        Formula::Or(hs) => Formula::Or(hs.iter().map(miniscope).collect()),
        Formula::Exists(v, h) => push_quantifier(Quantifier::Exists, *v, miniscope(h)),
        Formula::Forall(v, h) => push_quantifier(Quantifier::Forall, *v, miniscope(h)),
    }
}

fn quantify(q: Quantifier, v: Var, f: Formula) -> Formula {
    match q {
        Quantifier::Exists => Formula::exists(v, f),
        Quantifier::Forall => Formula::forall(v, f),
    }
}

fn push_quantifier(q: Quantifier, v: Var, body: Formula) -> Formula {
    if !body.free_vars().contains(&v) {
        return body;
    }
    match (q, body) {
        (Quantifier::Forall, Formula::And(hs)) => {
            Formula::And(hs.into_iter().map(|h| push_quantifier(q, v, h)).collect())
        }
        (Quantifier::Exists, Formula::Or(hs)) => {
            Formula::Or(hs.into_iter().map(|h| push_quantifier(q, v, h)).collect())
        }
        (_, Formula::And(hs)) | (_, Formula::Or(hs)) if hs.len() == 1 => {
            push_quantifier(q, v, hs.into_iter().next().expect("one part"))
        }
        (Quantifier::Exists, Formula::And(hs)) => {
            let (with, without): (Vec<_>, Vec<_>) = hs.into_iter().partition(|h| h.free_vars().contains(&v));
            if without.is_empty() {
                return quantify(q, v, Formula::And(with));
            }
            let mut out = without;
            out.push(push_quantifier(q, v, Formula::And(with)));
            Formula::And(out)
        }
        (Quantifier::Forall, Formula::Or(hs)) => {
            let (with, without): (Vec<_>, Vec<_>) = hs.into_iter().partition(|h| h.free_vars().contains(&v));
            if without.is_empty() {
                return quantify(q, v, Formula::Or(with));
            }
            let mut out = without;
            out.push(push_quantifier(q, v, Formula::Or(with)));
            Formula::Or(out)
        }
        (Quantifier::Exists, Formula::Exists(w, h)) => Formula::exists(w, push_quantifier(q, v, *h)),
        (Quantifier::Forall, Formula::Forall(w, h)) => Formula::forall(w, push_quantifier(q, v, *h)),
        (_, body) => quantify(q, v, body),
    }
}

/// The symmetric loopless digraph with an arc pair for every edge.
pub fn encode_digraph(g: &GraphData) -> Result<GraphData> {
    if g.is_directed() {
        return Err(invalid!("expected an undirected graph"));
    }
    g.to_symmetric_digraph()
}

/// Conjoins `phi` with guards forcing the model to be a loopless digraph
/// whose arcs come in symmetric pairs, so that a sentence over graphs
/// becomes one over digraphs defining the encoded graph.
pub fn transform_sentence(phi: &Formula) -> Formula {
    let a = phi.max_var() + 1;
    let b = a + 1;
    let no_loops = Formula::forall(a, Formula::not(Formula::adj(a, a)));
    let symmetric = Formula::forall_all(
        &[a, b],
        Formula::or(vec![
            Formula::and(vec![Formula::adj(a, b), Formula::adj(b, a)]),
            Formula::and(vec![Formula::not(Formula::adj(a, b)), Formula::not(Formula::adj(b, a))]),
        ]),
    );
    Formula::and(vec![no_loops, symmetric, phi.clone()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_nonisomorphic, is_isomorphic};

    fn holds(g: &GraphData, f: &Formula) -> bool {
        evaluate(g, f, &Assignment::new()).unwrap()
    }

    #[test]
    fn trivial_sentence_defines_its_graph() {
        let p3 = GraphData::path(3);
        let phi = trivial_defining_sentence(&p3);
        let m = phi.metrics();
        assert_eq!((m.depth, m.width, m.alternation), (4, 4, Some(0)));
        let mut hits = 0;
        for n in 1..=4 {
            for h in enumerate_nonisomorphic(n, false, false).unwrap() {
                if holds(&h, &phi) {
                    hits += 1;
                    assert!(is_isomorphic(&h, &p3));
                }
            }
        }
        assert_eq!(hits, 1);
    }

    #[test]
    fn prenex_example() {
        let phi: Formula = "(exists 1 (and (eq 1 1) (forall 2 (eq 2 2))))".parse().unwrap();
        let psi = to_prenex(&phi).unwrap();
        assert_eq!(psi.to_string(), "(exists 1 (forall 2 (and (eq 1 1) (eq 2 2))))");
        let bad: Formula = "(forall 1 (exists 2 (adj 1 2)))".parse().unwrap();
        assert!(to_prenex(&bad).is_err());
        let shadow: Formula = "(and (exists 1 (adj 1 1)) (forall 1 (exists 2 (eq 1 2))))"
            .parse()
            .unwrap();
        assert!(to_prenex(&shadow).is_err());
        let reuse: Formula = "(or (exists 1 (adj 1 1)) (exists 1 (not (adj 1 1))))".parse().unwrap();
        let out = to_prenex(&reuse).unwrap();
        assert_eq!(out.to_string(), "(exists 1 (exists 2 (or (adj 1 1) (not (adj 2 2)))))");
    }

    #[test]
    fn witnesses() {
        let psi: Formula = "(exists 1 (forall 2 (eq 2 1)))".parse().unwrap();
        assert_eq!(small_model_witness(&psi, &GraphData::empty(1)).unwrap(), vec![0]);
        let edge: Formula = "(exists 1 (exists 2 (adj 1 2)))".parse().unwrap();
        let w = small_model_witness(&edge, &GraphData::path(3)).unwrap();
        assert_eq!(w.len(), 2);
        assert!(holds(&GraphData::path(3).induced_subgraph(&w).unwrap(), &edge));
        assert!(small_model_witness(&edge, &GraphData::empty(3)).is_err());
        let univ: Formula = "(forall 1 (not (adj 1 1)))".parse().unwrap();
        assert_eq!(small_model_witness(&univ, &GraphData::cycle(5)).unwrap(), vec![0]);
    }

    #[test]
    fn digraph_transform() {
        let p3 = GraphData::path(3);
        let d = encode_digraph(&p3).unwrap();
        assert_eq!((d.order(), d.edge_count()), (3, 4));
        let phi = transform_sentence(&trivial_defining_sentence(&p3));
        assert!(holds(&d, &phi));
        for n in 1..=4 {
            for h in enumerate_nonisomorphic(n, false, false).unwrap() {
                if !is_isomorphic(&h, &p3) {
                    assert!(!holds(&encode_digraph(&h).unwrap(), &phi));
                }
            }
        }
        let asym = GraphData::from_edges(3, true, false, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        assert!(!holds(&asym, &phi));
        let looped = GraphData::from_edges(3, true, true, &[(0, 1), (1, 0), (1, 2), (2, 1), (0, 0)]).unwrap();
        assert!(!holds(&looped, &phi));
    }
}
