//! Checking a strategy's move-count guarantee against Duplicators.

use crate::error::{Error, Result};
use crate::game::{play_match, Duplicator, GameConfig, SpoilerAgent, Transcript, Winner};
use serde::Serialize;

/// Which guarantee a claimed bound comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    /// `l + 1`.
    Plunge,
    /// `k + c - 1` extra moves.
    X1y1,
    /// `rk G + c + 1`.
    Main,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchRecord {
    pub duplicator: String,
    pub moves: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GuaranteeCertificate {
    pub claimed_bound: usize,
    /// Largest move count over all matches.
    pub actual_moves: usize,
    pub bound_source: BoundSource,
    pub matches: Vec<MatchRecord>,
    /// Transcript of the longest match.
    pub longest: Option<Transcript>,
}

/// Plays `agent` from `config` against every adversary. Moves are counted
/// from the configured position, so preset picks are not included.
/// A match that Spoiler does not win, or wins too late, is reported as a
/// guarantee violation carrying its transcript.
pub fn validate_strategy(
    agent: &mut dyn SpoilerAgent,
    config: &GameConfig,
    claimed_bound: usize,
    bound_source: BoundSource,
    adversaries: &mut [Box<dyn Duplicator + '_>],
) -> Result<GuaranteeCertificate> {
    // Room past the bound so that violations show the real move count.
    let max_rounds = claimed_bound.saturating_mul(2) + 2;
    let mut cert = GuaranteeCertificate {
        claimed_bound,
        actual_moves: 0,
        bound_source,
        matches: Vec::new(),
        longest: None,
    };
    for adversary in adversaries.iter_mut() {
        let t = play_match(agent, adversary.as_mut(), config, max_rounds)?;
        if t.winner != Winner::Spoiler {
            return Err(Error::GuaranteeViolation {
                detail: format!(
                    "{} did not beat {} within {} rounds",
                    t.spoiler, t.duplicator, max_rounds
                ),
                transcript: Box::new(t),
            });
        }
        if t.rounds > claimed_bound {
            return Err(Error::GuaranteeViolation {
                detail: format!(
                    "{} needed {} moves against {}, above the bound {claimed_bound}",
                    t.spoiler, t.rounds, t.duplicator
                ),
                transcript: Box::new(t),
            });
        }
        cert.matches.push(MatchRecord {
            duplicator: t.duplicator.clone(),
            moves: t.rounds,
        });
        if cert.longest.is_none() || t.rounds > cert.actual_moves {
            cert.actual_moves = t.rounds;
            cert.longest = Some(t);
        }
    }
    Ok(cert)
}
