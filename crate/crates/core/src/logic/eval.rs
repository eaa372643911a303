//! Two independent evaluators: a direct recursive one and a bottom-up one
//! that computes the relation defined by every subformula.

use super::{miniscope, Formula, Var};
use crate::error::{invalid, Result};
use crate::graph::GraphData;
use std::collections::{BTreeMap, BTreeSet};

pub type Assignment = BTreeMap<Var, usize>;

fn check_assignment(model: &GraphData, phi: &Formula, a: &Assignment) -> Result<()> {
    if let Some(v) = phi.free_vars().into_iter().find(|v| !a.contains_key(v)) {
        return Err(invalid!("free variable {v} is unassigned"));
    }
    if let Some((v, &x)) = a.iter().find(|(_, &x)| x >= model.order()) {
        return Err(invalid!("variable {v} assigned to vertex {x} outside the model"));
    }
    Ok(())
}

/// Truth of `phi` on `model` under `assignment`. The formula is
/// miniscoped first (models are never empty), so long quantifier prefixes
/// such as prenex forms cost what their scoped form costs.
pub fn evaluate(model: &GraphData, phi: &Formula, assignment: &Assignment) -> Result<bool> {
    check_assignment(model, phi, assignment)?;
    let phi = &miniscope(phi);
    let size = phi.max_var().max(assignment.keys().copied().max().unwrap_or(0)) as usize + 1;
    let mut env = vec![usize::MAX; size];
    for (&v, &x) in assignment {
        env[v as usize] = x;
    }
    Ok(walk(model, phi, &mut env))
}

fn walk(g: &GraphData, f: &Formula, env: &mut Vec<usize>) -> bool {
    match f {
        Formula::Eq(a, b) => env[*a as usize] == env[*b as usize],
        Formula::Adj(a, b) => g.has_edge(env[*a as usize], env[*b as usize]),
        Formula::Not(h) => !walk(g, h, env),
        Formula::And(hs) => hs.iter().all(|h| walk(g, h, env)),
        Formula::Or(hs) => hs.iter().any(|h| walk(g, h, env)),
        Formula::Exists(v, h) | Formula::Forall(v, h) => {
            let saved = env[*v as usize];
            let want = matches!(f, Formula::Exists(..));
            let mut result = !want;
            for x in 0..g.order() {
                env[*v as usize] = x;
                if walk(g, h, env) == want {
                    result = want;
                    break;
                }
            }
            env[*v as usize] = saved;
            result
        }
    }
}

/// A relation over an ordered list of variables.
struct Relation {
    vars: Vec<Var>,
    tuples: BTreeSet<Vec<usize>>,
}

impl Relation {
    fn all(vars: Vec<Var>, n: usize) -> Relation {
        let mut tuples = BTreeSet::new();
        let k = vars.len();
        let mut cur = vec![0; k];
        loop {
            tuples.insert(cur.clone());
            let mut i = k;
            loop {
                if i == 0 {
                    return Relation { vars, tuples };
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

    fn filter(vars: Vec<Var>, n: usize, keep: impl Fn(&[usize]) -> bool) -> Relation {
        let mut r = Relation::all(vars, n);
        r.tuples.retain(|t| keep(t));
        r
    }

    /// Re-expresses the relation over a superset of its variables.
    fn extend(&self, vars: &[Var], n: usize) -> BTreeSet<Vec<usize>> {
        let pos: Vec<usize> = self
            .vars
            .iter()
            .map(|w| vars.iter().position(|v| v == w).expect("superset"))
            .collect();
        Relation::all(vars.to_vec(), n)
            .tuples
            .into_iter()
            .filter(|t| {
                let proj: Vec<usize> = pos.iter().map(|&p| t[p]).collect();
                self.tuples.contains(&proj)
            })
            .collect()
    }
}

fn union_vars(rs: &[Relation]) -> Vec<Var> {
    let set: BTreeSet<Var> = rs.iter().flat_map(|r| r.vars.iter().copied()).collect();
    set.into_iter().collect()
}

fn relation(g: &GraphData, f: &Formula) -> Relation {
    let n = g.order();
    match f {
        Formula::Eq(a, b) | Formula::Adj(a, b) => {
            let is_eq = matches!(f, Formula::Eq(..));
            let vars: Vec<Var> = if a == b { vec![*a] } else { vec![*a.min(b), *a.max(b)] };
            let (ia, ib) = (
                vars.iter().position(|v| v == a).expect("present"),
                vars.iter().position(|v| v == b).expect("present"),
            );
            Relation::filter(vars, n, |t| {
                if is_eq {
                    t[ia] == t[ib]
                } else {
                    g.has_edge(t[ia], t[ib])
                }
            })
        }
        Formula::Not(h) => {
            let r = relation(g, h);
            let all = Relation::all(r.vars.clone(), n);
            Relation {
                tuples: all.tuples.difference(&r.tuples).cloned().collect(),
                vars: r.vars,
            }
        }
        Formula::And(hs) | Formula::Or(hs) => {
            let rs: Vec<Relation> = hs.iter().map(|h| relation(g, h)).collect();
            let vars = union_vars(&rs);
            let is_and = matches!(f, Formula::And(_));
            let mut acc: Option<BTreeSet<Vec<usize>>> = None;
            for r in &rs {
                let ext = r.extend(&vars, n);
                acc = Some(match acc {
                    None => ext,
                    Some(a) if is_and => a.intersection(&ext).cloned().collect(),
                    Some(a) => a.union(&ext).cloned().collect(),
                });
            }
            let tuples = acc.unwrap_or_else(|| {
                if is_and {
                    Relation::all(Vec::new(), n).tuples
                } else {
                    BTreeSet::new()
                }
            });
            Relation { vars, tuples }
        }
        Formula::Exists(v, h) | Formula::Forall(v, h) => {
            let r = relation(g, h);
            let Some(idx) = r.vars.iter().position(|w| w == v) else {
                // Vacuous quantifier over a nonempty domain.
                return r;
            };
            let mut vars = r.vars.clone();
            vars.remove(idx);
            let is_exists = matches!(f, Formula::Exists(..));
            let tuples = Relation::all(vars.clone(), n)
                .tuples
                .into_iter()
                .filter(|t| {
                    let mut hit = (0..n).map(|x| {
                        let mut full = t.clone();
                        full.insert(idx, x);
                        r.tuples.contains(&full)
                    });
                    if is_exists {
                        hit.any(|b| b)
                    } else {
                        hit.all(|b| b)
                    }
                })
                .collect();
            Relation { vars, tuples }
        }
    }
}

/// Truth of `phi` computed from the relations defined by its subformulas.
pub fn evaluate_relational(model: &GraphData, phi: &Formula, assignment: &Assignment) -> Result<bool> {
    check_assignment(model, phi, assignment)?;
    let r = relation(model, phi);
    let t: Vec<usize> = r.vars.iter().map(|v| assignment[v]).collect();
    Ok(r.tuples.contains(&t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn both(g: &GraphData, f: &Formula) -> bool {
        let a = evaluate(g, f, &Assignment::new()).unwrap();
        assert_eq!(a, evaluate_relational(g, f, &Assignment::new()).unwrap());
        a
    }

    #[test]
    fn evaluation_examples() {
        let two = Formula::exists_all(&[1, 2], Formula::not(Formula::eq(1, 2)));
        assert!(both(&GraphData::complete(2), &two));
        assert!(!both(&GraphData::empty(1), &two));
        let indep = Formula::forall_all(
            &[1, 2],
            Formula::or(vec![Formula::eq(1, 2), Formula::not(Formula::adj(1, 2))]),
        );
        assert!(both(&GraphData::empty(2), &indep));
        assert!(!both(&GraphData::complete(2), &indep));
    }

    #[test]
    fn unbound_variable_is_rejected() {
        let f = Formula::adj(1, 2);
        let mut a = Assignment::new();
        a.insert(1, 0);
        assert!(evaluate(&GraphData::complete(2), &f, &a).is_err());
        a.insert(2, 1);
        assert!(evaluate(&GraphData::complete(2), &f, &a).unwrap());
        assert!(evaluate_relational(&GraphData::complete(2), &f, &a).unwrap());
    }

    #[test]
    fn long_prefixes_are_cheap() {
        // Thirty universal quantifiers over a disjunction of independent
        // literals: naive evaluation would visit 5^30 assignments.
        let parts = (1..=30).map(|v| Formula::not(Formula::adj(v, v))).collect();
        let f = Formula::forall_all(&(1..=30).collect::<Vec<_>>(), Formula::or(parts));
        assert!(evaluate(&GraphData::cycle(5), &f, &Assignment::new()).unwrap());
    }

    #[test]
    fn digraph_arcs() {
        let d = GraphData::from_edges(2, true, false, &[(0, 1)]).unwrap();
        let f = Formula::exists_all(
            &[1, 2],
            Formula::and(vec![Formula::adj(1, 2), Formula::not(Formula::adj(2, 1))]),
        );
        assert!(both(&d, &f));
    }
}
