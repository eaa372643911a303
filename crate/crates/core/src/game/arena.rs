//! Refereed play between a Spoiler agent and a Duplicator.

use super::{compatible, Duplicator, GameConfig, Position, Side, Variant};
use crate::error::{Error, Result};
use crate::graph::GraphData;
use serde::Serialize;

/// Why a Spoiler's call to [`Arena::play`] did not return a reply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stop {
    /// The last round broke the partial isomorphism.
    SpoilerWon,
    /// The round limit was reached without a win.
    RoundLimit,
    /// A protocol violation or agent failure.
    Failed(Error),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Stop {
        Stop::Failed(e)
    }
}

/// A Spoiler strategy: makes moves through the arena until it wins, gives
/// up (returns `Ok`), or the arena stops it.
pub trait SpoilerAgent {
    fn name(&self) -> String;
    fn run(&mut self, arena: &mut Arena<'_>) -> std::result::Result<(), Stop>;
}

/// The referee: validates moves, asks the Duplicator for replies and
/// checks the winning condition after every round.
pub struct Arena<'a> {
    left: &'a GraphData,
    right: &'a GraphData,
    variant: Variant,
    side: Option<Side>,
    picks: Vec<(usize, usize)>,
    rounds: Vec<TranscriptRound>,
    duplicator: &'a mut dyn Duplicator,
    max_rounds: usize,
    won: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TranscriptRound {
    pub side: Side,
    pub spoiler: usize,
    pub duplicator: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Winner {
    Spoiler,
    Duplicator,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transcript {
    pub spoiler: String,
    pub duplicator: String,
    pub rounds: usize,
    pub winner: Winner,
    /// `(left vertex, right vertex)` after each round.
    pub picks: Vec<(usize, usize)>,
    pub moves: Vec<TranscriptRound>,
}

impl<'a> Arena<'a> {
    pub fn left(&self) -> &'a GraphData {
        self.left
    }

    pub fn right(&self) -> &'a GraphData {
        self.right
    }

    pub fn graph(&self, side: Side) -> &'a GraphData {
        match side {
            Side::Left => self.left,
            Side::Right => self.right,
        }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn spoiler_side(&self) -> Option<Side> {
        self.side
    }

    pub fn picks(&self) -> &[(usize, usize)] {
        &self.picks
    }

    pub fn rounds_played(&self) -> usize {
        self.picks.len()
    }

    /// Spoiler selects `v` in the graph on `side`; returns Duplicator's
    /// reply in the other graph.
    pub fn play(&mut self, side: Side, v: usize) -> std::result::Result<usize, Stop> {
        if self.won {
            return Err(Stop::SpoilerWon);
        }
        if self.picks.len() >= self.max_rounds {
            return Err(Stop::RoundLimit);
        }
        if self.variant == Variant::ZeroAlternation && self.side.is_some_and(|s| s != side) {
            return Err(Stop::Failed(Error::Protocol {
                agent: "spoiler".into(),
                detail: format!("moved in the {side:?} graph after committing to the other one"),
            }));
        }
        if v >= self.graph(side).order() {
            return Err(Stop::Failed(Error::Protocol {
                agent: "spoiler".into(),
                detail: format!("vertex {v} is outside the {side:?} graph"),
            }));
        }
        if self.variant == Variant::ZeroAlternation {
            self.side = Some(side);
        }
        let position = Position {
            left: self.left,
            right: self.right,
            variant: self.variant,
            spoiler_side: self.side,
            picks: &self.picks,
        };
        let reply = self.duplicator.reply(&position, side, v).map_err(Stop::Failed)?;
        if reply >= self.graph(side.other()).order() {
            return Err(Stop::Failed(Error::Protocol {
                agent: "duplicator".into(),
                detail: format!("reply {reply} is outside the {:?} graph", side.other()),
            }));
        }
        let pair = match side {
            Side::Left => (v, reply),
            Side::Right => (reply, v),
        };
        let ok = self
            .picks
            .iter()
            .chain(std::iter::once(&pair))
            .all(|&p| compatible(self.left, self.right, pair, p));
        self.picks.push(pair);
        self.rounds.push(TranscriptRound {
            side,
            spoiler: v,
            duplicator: reply,
        });
        if !ok {
            self.won = true;
            return Err(Stop::SpoilerWon);
        }
        Ok(reply)
    }
}

/// Plays `spoiler` against `duplicator` from the position in `config` for at
/// most `max_rounds` rounds.
pub fn play_match(
    spoiler: &mut dyn SpoilerAgent,
    duplicator: &mut dyn Duplicator,
    config: &GameConfig,
    max_rounds: usize,
) -> Result<Transcript> {
    let dname = duplicator.name();
    let mut arena = Arena {
        left: &config.left,
        right: &config.right,
        variant: config.variant,
        side: config.spoiler_side,
        picks: config.picks.clone(),
        rounds: Vec::new(),
        duplicator,
        max_rounds: config.picks.len() + max_rounds,
        won: false,
    };
    match spoiler.run(&mut arena) {
        Ok(()) | Err(Stop::SpoilerWon) | Err(Stop::RoundLimit) => {}
        Err(Stop::Failed(e)) => return Err(e),
    }
    let winner = if arena.won { Winner::Spoiler } else { Winner::Duplicator };
    Ok(Transcript {
        spoiler: spoiler.name(),
        duplicator: dname,
        rounds: arena.rounds.len(),
        winner,
        picks: arena.picks,
        moves: arena.rounds,
    })
}
