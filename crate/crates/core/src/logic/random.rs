//! Random 0-alternating sentences for sweep tests.

use super::{Formula, Quantifier, Var};
use rand::Rng;

const VARS: Var = 3;

/// A random sentence of quantifier depth at most `max_depth` in which every
/// chain of nested quantifiers uses a single quantifier kind. Variables are
/// drawn from `1..=3` and may be rebound.
pub fn random_zero_alternation_sentence<R: Rng + ?Sized>(rng: &mut R, max_depth: usize) -> Formula {
    let depth = max_depth.max(1);
    if rng.gen_bool(0.3) {
        let parts = (0..2).map(|_| quantified(rng, depth, &mut Vec::new(), None)).collect();
        return if rng.gen_bool(0.5) {
            Formula::and(parts)
        } else {
            Formula::or(parts)
        };
    }
    quantified(rng, depth, &mut Vec::new(), None)
}

fn quantified<R: Rng + ?Sized>(rng: &mut R, depth: usize, bound: &mut Vec<Var>, kind: Option<Quantifier>) -> Formula {
    let q = kind.unwrap_or(if rng.gen_bool(0.5) {
        Quantifier::Exists
    } else {
        Quantifier::Forall
    });
    let v = rng.gen_range(1..=VARS);
    bound.push(v);
    let body = node(rng, depth - 1, bound, Some(q));
    bound.pop();
    match q {
        Quantifier::Exists => Formula::exists(v, body),
        Quantifier::Forall => Formula::forall(v, body),
    }
}

fn node<R: Rng + ?Sized>(rng: &mut R, depth: usize, bound: &mut Vec<Var>, kind: Option<Quantifier>) -> Formula {
    let roll = rng.gen_range(0..10);
    if bound.is_empty() || (depth > 0 && roll < 3) {
        return quantified(rng, depth.max(1), bound, if bound.is_empty() { None } else { kind });
    }
    match roll {
        3..=4 if depth > 0 || bound.len() > 1 => {
            let parts = (0..rng.gen_range(2..=3))
                .map(|_| node(rng, depth, bound, kind))
                .collect();
            if rng.gen_bool(0.5) {
                Formula::and(parts)
            } else {
                Formula::or(parts)
            }
        }
        _ => {
            let a = bound[rng.gen_range(0..bound.len())];
            let b = bound[rng.gen_range(0..bound.len())];
            let atom = if rng.gen_bool(0.4) {
                Formula::eq(a, b)
            } else {
                Formula::adj(a, b)
            };
            if rng.gen_bool(0.4) {
                Formula::not(atom)
            } else {
                atom
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_sentences_are_zero_alternating() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let f = random_zero_alternation_sentence(&mut rng, 3);
            assert!(f.is_sentence(), "{f}");
            assert_eq!(f.alternation(), Some(0), "{f}");
            assert!(f.depth() <= 3 && f.depth() >= 1, "{f}");
        }
    }
}
