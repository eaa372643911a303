//! Duplicator agents.

use super::{compatible, GameValue, Position, Side, Solver};
use crate::error::{Error, Result};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub trait Duplicator {
    fn name(&self) -> String;
    /// The reply, in the graph opposite `side`, to Spoiler selecting `v`.
    fn reply(&mut self, position: &Position<'_>, side: Side, v: usize) -> Result<usize>;
}

fn candidate_pair(side: Side, v: usize, z: usize) -> (usize, usize) {
    match side {
        Side::Left => (v, z),
        Side::Right => (z, v),
    }
}

/// Replies that keep the partial isomorphism, in increasing order.
fn safe_replies(position: &Position<'_>, side: Side, v: usize) -> Vec<usize> {
    (0..position.graph(side.other()).order())
        .filter(|&z| {
            let pair = candidate_pair(side, v, z);
            position
                .picks
                .iter()
                .chain(std::iter::once(&pair))
                .all(|&p| compatible(position.left, position.right, pair, p))
        })
        .collect()
}

/// Replies maximizing the number of rounds Spoiler still needs under
/// optimal play; ties go to the lowest vertex.
pub struct OptimalDuplicator {
    solver: Solver,
    horizon: usize,
}

impl OptimalDuplicator {
    /// `horizon` bounds the look-ahead in rounds.
    pub fn new(solver: Solver, horizon: usize) -> OptimalDuplicator {
        OptimalDuplicator { solver, horizon }
    }
}

impl Duplicator for OptimalDuplicator {
    fn name(&self) -> String {
        "optimal".into()
    }

    fn reply(&mut self, position: &Position<'_>, side: Side, v: usize) -> Result<usize> {
        if position.left.order() != self.solver.left().order() || position.right.order() != self.solver.right().order()
        {
            return Err(Error::Protocol {
                agent: "duplicator".into(),
                detail: "solver was built for different graphs".into(),
            });
        }
        let lock = match position.variant {
            super::Variant::ZeroAlternation => Some(side),
            super::Variant::Full => None,
        };
        let remaining = self.horizon.saturating_sub(position.picks.len() + 1);
        let mut best: Option<(usize, usize)> = None;
        for z in safe_replies(position, side, v) {
            let mut picks = position.picks.to_vec();
            picks.push(candidate_pair(side, v, z));
            let score = match self.solver.value(lock, &picks, remaining)? {
                GameValue::Within(k) => k,
                GameValue::Beyond(_) => remaining + 1,
            };
            if best.is_none_or(|(s, _)| score > s) {
                best = Some((score, z));
            }
            if score > remaining {
                break;
            }
        }
        Ok(best.map_or(0, |b| b.1))
    }
}

/// Uniformly random reply among those keeping the partial isomorphism,
/// or vertex 0 when there is none.
pub struct RandomDuplicator {
    rng: ChaCha8Rng,
    seed: u64,
}

impl RandomDuplicator {
    pub fn new(seed: u64) -> RandomDuplicator {
        RandomDuplicator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            seed,
        }
    }
}

impl Duplicator for RandomDuplicator {
    fn name(&self) -> String {
        format!("random(seed={})", self.seed)
    }

    fn reply(&mut self, position: &Position<'_>, side: Side, v: usize) -> Result<usize> {
        let safe = safe_replies(position, side, v);
        if safe.is_empty() {
            return Ok(0);
        }
        Ok(safe[self.rng.gen_range(0..safe.len())])
    }
}

/// One-step look-ahead: among safe replies, the one leaving Spoiler the
/// fewest single moves that Duplicator could not answer next round.
pub struct GreedyDuplicator;

impl Duplicator for GreedyDuplicator {
    fn name(&self) -> String {
        "greedy".into()
    }

    fn reply(&mut self, position: &Position<'_>, side: Side, v: usize) -> Result<usize> {
        let safe = safe_replies(position, side, v);
        let sides: Vec<Side> = match position.variant {
            super::Variant::ZeroAlternation => vec![side],
            super::Variant::Full => vec![Side::Left, Side::Right],
        };
        let mut best: Option<(usize, usize)> = None;
        for z in safe {
            let mut picks = position.picks.to_vec();
            picks.push(candidate_pair(side, v, z));
            let next = Position {
                picks: &picks,
                ..*position
            };
            let threats: usize = sides
                .iter()
                .map(|&s| {
                    (0..next.graph(s).order())
                        .filter(|&u| safe_replies(&next, s, u).is_empty())
                        .count()
                })
                .sum();
            if best.is_none_or(|(t, _)| threats < t) {
                best = Some((threats, z));
            }
        }
        Ok(best.map_or(0, |b| b.1))
    }
}

#[cfg(test)]
mod tests {
    use super::super::{play_match, GameConfig, SolverSpoiler, Variant, Winner};
    use super::*;
    use crate::graph::GraphData;

    #[test]
    fn optimal_play_on_k1_vs_2k1() {
        let g = GraphData::empty(1);
        let h = GraphData::empty(2);
        let cfg = GameConfig::new(g.clone(), h.clone(), Variant::ZeroAlternation);
        let mut sp = SolverSpoiler::new(Solver::new(&g, &h, Variant::ZeroAlternation).unwrap());
        let mut du = OptimalDuplicator::new(Solver::new(&g, &h, Variant::ZeroAlternation).unwrap(), 9);
        let t = play_match(&mut sp, &mut du, &cfg, 9).unwrap();
        assert_eq!((t.winner, t.rounds), (Winner::Spoiler, 2));
        assert!(!super::super::check_partial_isomorphism(&t.picks, &g, &h));
        assert!(super::super::check_partial_isomorphism(&t.picks[..1], &g, &h));
    }

    #[test]
    fn first_reply_on_k2_vs_2k1_is_safe() {
        let g = GraphData::complete(2);
        let h = GraphData::empty(2);
        let cfg = GameConfig::new(g.clone(), h.clone(), Variant::ZeroAlternation);
        let mut du = OptimalDuplicator::new(Solver::new(&g, &h, Variant::ZeroAlternation).unwrap(), 9);
        for side in [Side::Left, Side::Right] {
            for v in 0..2 {
                let z = du.reply(&cfg.position(), side, v).unwrap();
                let pair = candidate_pair(side, v, z);
                assert!(super::super::check_partial_isomorphism(&[pair], &g, &h));
            }
        }
    }

    #[test]
    fn random_duplicator_loses_no_later() {
        let g = GraphData::path(4);
        let h = GraphData::cycle(4);
        let cfg = GameConfig::new(g.clone(), h.clone(), Variant::ZeroAlternation);
        let mut sp = SolverSpoiler::new(Solver::new(&g, &h, Variant::ZeroAlternation).unwrap());
        let mut opt = OptimalDuplicator::new(Solver::new(&g, &h, Variant::ZeroAlternation).unwrap(), 9);
        let best = play_match(&mut sp, &mut opt, &cfg, 9).unwrap();
        assert_eq!(best.rounds, super::super::d0_pair(&g, &h).unwrap());
        for seed in 0..10 {
            let mut r = RandomDuplicator::new(seed);
            let t = play_match(&mut sp, &mut r, &cfg, 9).unwrap();
            assert_eq!(t.winner, Winner::Spoiler);
            assert!(t.rounds <= best.rounds);
        }
        let t = play_match(&mut sp, &mut GreedyDuplicator, &cfg, 9).unwrap();
        assert!(t.rounds <= best.rounds);
    }

    #[test]
    fn protocol_violation_is_reported() {
        struct Switcher;
        impl super::super::SpoilerAgent for Switcher {
            fn name(&self) -> String {
                "switcher".into()
            }
            fn run(&mut self, arena: &mut super::super::Arena<'_>) -> std::result::Result<(), super::super::Stop> {
                arena.play(Side::Left, 0)?;
                arena.play(Side::Right, 0)?;
                Ok(())
            }
        }
        let g = GraphData::empty(2);
        let cfg = GameConfig::new(g.clone(), g.clone(), Variant::ZeroAlternation);
        match play_match(&mut Switcher, &mut GreedyDuplicator, &cfg, 5) {
            Err(Error::Protocol { agent, .. }) => assert_eq!(agent, "spoiler"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
