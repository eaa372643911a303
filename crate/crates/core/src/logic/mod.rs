//! First-order formulas over the graph and digraph vocabulary.
//!
//! `Adj(x, y)` reads as adjacency on graphs and as the arc relation
//! `x -> y` on digraphs. Variables are positive integers.
//!
//! Length convention: an atom counts 3 symbols (two variables and the
//! relation), a negation adds 1, a quantifier adds 2 for itself and its
//! variable plus 2 for the parentheses around its body, and an n-ary
//! conjunction or disjunction adds `n - 1` connectives plus 2 for
//! parentheses unless it is the whole formula or the body of a quantifier.
//! A unary connective counts as its child and an empty one as 1 symbol.

mod eval;
pub mod hintikka;
mod random;
mod sexpr;
mod transform;
mod types;

pub use eval::{evaluate, evaluate_relational, Assignment};
pub use hintikka::{
    hintikka_descriptions, length_bounds, sentence_classes, BoundValue, ClassEntry, DescriptionTable, QuantifierPattern,
};
pub use random::random_zero_alternation_sentence;
pub use transform::{
    encode_digraph, miniscope, small_model_witness, to_prenex, transform_sentence, trivial_defining_sentence,
};
pub use types::{enumerate_qf_configurations, enumerate_qf_types, QfType, QF_TYPE_CAP};

use serde::Serialize;
use std::collections::BTreeSet;

pub type Var = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Eq(Var, Var),
    Adj(Var, Var),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Quantifier {
    Exists,
    Forall,
}

impl Quantifier {
    pub fn symbol(self) -> char {
        match self {
            Quantifier::Exists => 'E',
            Quantifier::Forall => 'A',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaMetrics {
    pub length: usize,
    pub depth: usize,
    pub width: usize,
    /// `None` when some negation is not directly on an atom.
    pub alternation: Option<usize>,
    /// Membership in the class of formulas with at most one alternation in
    /// which every quantifier chain with an alternation starts with ∃.
    pub lambda_half: Option<bool>,
}

impl Formula {
    pub fn eq(a: Var, b: Var) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn adj(a: Var, b: Var) -> Formula {
        Formula::Adj(a, b)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(fs: Vec<Formula>) -> Formula {
        Formula::And(fs)
    }

    pub fn or(fs: Vec<Formula>) -> Formula {
        Formula::Or(fs)
    }

    pub fn exists(v: Var, f: Formula) -> Formula {
        Formula::Exists(v, Box::new(f))
    }

    pub fn forall(v: Var, f: Formula) -> Formula {
        Formula::Forall(v, Box::new(f))
    }

    /// Nests `exists` over `vars`, outermost first.
    pub fn exists_all(vars: &[Var], f: Formula) -> Formula {
        vars.iter().rev().fold(f, |acc, &v| Formula::exists(v, acc))
    }

    pub fn forall_all(vars: &[Var], f: Formula) -> Formula {
        vars.iter().rev().fold(f, |acc, &v| Formula::forall(v, acc))
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Eq(..) | Formula::Adj(..))
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Eq(a, b) | Formula::Adj(a, b) => {
                for v in [a, b] {
                    if !bound.contains(v) {
                        out.insert(*v);
                    }
                }
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_free(bound, out)),
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                bound.push(*v);
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Every variable occurring anywhere, bound or free.
    pub fn variables(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Eq(a, b) | Formula::Adj(a, b) => {
                out.insert(*a);
                out.insert(*b);
            }
            Formula::Exists(v, _) | Formula::Forall(v, _) => {
                out.insert(*v);
            }
            _ => {}
        });
        out
    }

    fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Not(g) | Formula::Exists(_, g) | Formula::Forall(_, g) => g.visit(f),
            Formula::And(gs) | Formula::Or(gs) => gs.iter().for_each(|g| g.visit(f)),
            _ => {}
        }
    }

    pub fn quantifier_count(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |f| {
            if matches!(f, Formula::Exists(..) | Formula::Forall(..)) {
                n += 1;
            }
        });
        n
    }

    pub fn max_var(&self) -> Var {
        self.variables().into_iter().max().unwrap_or(0)
    }

    pub fn length(&self) -> usize {
        self.length_in(Context::Top)
    }

    fn length_in(&self, ctx: Context) -> usize {
        match self {
            Formula::Eq(..) | Formula::Adj(..) => 3,
            Formula::Not(f) => 1 + f.length_in(Context::Connective),
            Formula::Exists(_, f) | Formula::Forall(_, f) => 4 + f.length_in(Context::Body),
            Formula::And(fs) | Formula::Or(fs) => match fs.len() {
                0 => 1,
                1 => fs[0].length_in(ctx),
                n => {
                    let inner: usize = fs.iter().map(|f| f.length_in(Context::Connective)).sum();
                    inner + (n - 1) + if ctx == Context::Connective { 2 } else { 0 }
                }
            },
        }
    }

    /// Quantifier depth.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Eq(..) | Formula::Adj(..) => 0,
            Formula::Not(f) => f.depth(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().map(Formula::depth).max().unwrap_or(0),
            Formula::Exists(_, f) | Formula::Forall(_, f) => 1 + f.depth(),
        }
    }

    /// Whether every negation sits directly on an atom.
    pub fn negations_on_atoms(&self) -> bool {
        match self {
            Formula::Eq(..) | Formula::Adj(..) => true,
            Formula::Not(f) => f.is_atom(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().all(Formula::negations_on_atoms),
            Formula::Exists(_, f) | Formula::Forall(_, f) => f.negations_on_atoms(),
        }
    }

    /// Every maximal chain of nested quantifiers, outermost first.
    pub fn quantifier_chains(&self) -> Vec<Vec<Quantifier>> {
        let mut out = Vec::new();
        self.chains(&mut Vec::new(), &mut out);
        out
    }

    fn chains(&self, cur: &mut Vec<Quantifier>, out: &mut Vec<Vec<Quantifier>>) {
        match self {
            Formula::Eq(..) | Formula::Adj(..) => out.push(cur.clone()),
            Formula::Not(f) => f.chains(cur, out),
            Formula::And(fs) | Formula::Or(fs) => {
                if fs.is_empty() {
                    out.push(cur.clone());
                }
                fs.iter().for_each(|f| f.chains(cur, out));
            }
            Formula::Exists(_, f) | Formula::Forall(_, f) => {
                cur.push(if matches!(self, Formula::Exists(..)) {
                    Quantifier::Exists
                } else {
                    Quantifier::Forall
                });
                f.chains(cur, out);
                cur.pop();
            }
        }
    }

    pub fn alternation(&self) -> Option<usize> {
        if !self.negations_on_atoms() {
            return None;
        }
        Some(
            self.quantifier_chains()
                .iter()
                .map(|c| c.windows(2).filter(|w| w[0] != w[1]).count())
                .max()
                .unwrap_or(0),
        )
    }

    pub fn metrics(&self) -> FormulaMetrics {
        let alternation = self.alternation();
        let lambda_half = alternation.map(|a| {
            a <= 1
                && self
                    .quantifier_chains()
                    .iter()
                    .all(|c| c.first() != Some(&Quantifier::Forall) || c.iter().all(|&q| q == Quantifier::Forall))
        });
        FormulaMetrics {
            length: self.length(),
            depth: self.depth(),
            width: self.variables().len(),
            alternation,
            lambda_half,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Context {
    Top,
    Body,
    Connective,
}

impl std::fmt::Display for Formula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&sexpr::print(self))
    }
}

impl Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl std::str::FromStr for Formula {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Formula, Self::Err> {
        sexpr::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_examples() {
        let f = Formula::exists(1, Formula::eq(1, 1));
        let m = f.metrics();
        assert_eq!((m.length, m.depth, m.width, m.alternation), (7, 1, 1, Some(0)));
        // Five negated literals joined by four conjunctions.
        let lits = vec![
            Formula::not(Formula::eq(1, 2)),
            Formula::not(Formula::adj(1, 1)),
            Formula::not(Formula::adj(1, 2)),
            Formula::not(Formula::adj(2, 1)),
            Formula::not(Formula::adj(2, 2)),
        ];
        assert_eq!(Formula::and(lits.clone()).length(), 24);
        // Parenthesised below a negation or another connective.
        let inner = Formula::or(vec![Formula::eq(1, 2), Formula::adj(1, 2)]);
        assert_eq!(Formula::not(inner.clone()).length(), 1 + 7 + 2);
        assert_eq!(Formula::and(vec![inner.clone(), Formula::eq(1, 1)]).length(), 9 + 3 + 1);
        assert_eq!(Formula::exists(1, inner).length(), 4 + 7);
        assert_eq!(Formula::and(vec![]).length(), 1);
    }

    #[test]
    fn alternation_and_lambda_half() {
        let ea = Formula::exists(1, Formula::forall(2, Formula::adj(1, 2)));
        let ae = Formula::forall(1, Formula::exists(2, Formula::adj(1, 2)));
        assert_eq!(ea.alternation(), Some(1));
        assert_eq!(ea.metrics().lambda_half, Some(true));
        assert_eq!(ae.metrics().lambda_half, Some(false));
        let neg = Formula::not(Formula::exists(1, Formula::eq(1, 1)));
        assert_eq!(neg.alternation(), None);
        let mixed = Formula::and(vec![
            Formula::exists(1, Formula::eq(1, 1)),
            Formula::forall(1, Formula::eq(1, 1)),
        ]);
        assert_eq!(mixed.alternation(), Some(0));
    }

    #[test]
    fn free_variables() {
        let f = Formula::exists(1, Formula::and(vec![Formula::adj(1, 2), Formula::eq(3, 1)]));
        assert_eq!(f.free_vars().into_iter().collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(f.variables().len(), 3);
        assert!(!f.is_sentence());
    }
}
