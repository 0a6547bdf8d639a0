//! Teams, matchups, rounds and schedules.
//!
//! A [`Schedule`] is stored as an ordered list of rounds, each round an ordered
//! list of home/away matchups. Construction rejects any round that is not a
//! perfect matching of the teams, so every downstream counter can assume
//! per-round validity. The per-team view ([`TeamTable`]) and the venue strings
//! ([`VenueSequence`]) are derived from it on demand.

use std::fmt;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised while building or decoding a schedule.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScheduleError {
    #[error("team count {0} must be even and at least 4")]
    InvalidTeamCount(usize),
    #[error("expected {expected} rounds for {n_teams} teams, got {actual}")]
    RoundCount {
        n_teams: usize,
        expected: usize,
        actual: usize,
    },
    #[error("round {round}: expected {expected} matchups, got {actual}")]
    MatchupCount {
        round: usize,
        expected: usize,
        actual: usize,
    },
    #[error("round {round}: team {team} is out of range for {n_teams} teams")]
    TeamOutOfRange { round: usize, team: usize, n_teams: usize },
    #[error("round {round}: team {team} plays itself")]
    SelfMatch { round: usize, team: usize },
    #[error("round {round}: team {team} appears more than once")]
    DuplicateTeam { round: usize, team: usize },
    #[error("team {team} is out of range for {n_teams} teams")]
    UnknownTeam { team: usize, n_teams: usize },
    #[error("team table is inconsistent at team {team}, round {round}")]
    InconsistentTable { team: usize, round: usize },
}

/// Zero-based team index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TeamId(pub usize);

impl TeamId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for TeamId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A single game: `home` hosts `away`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatchUp {
    pub home: TeamId,
    pub away: TeamId,
}

impl MatchUp {
    pub fn new(home: usize, away: usize) -> Self {
        MatchUp {
            home: TeamId(home),
            away: TeamId(away),
        }
    }

    /// The same pairing with venues swapped.
    pub fn reversed(self) -> Self {
        MatchUp {
            home: self.away,
            away: self.home,
        }
    }

    pub fn involves(self, t: TeamId) -> bool {
        self.home == t || self.away == t
    }

    /// The pairing without orientation, smaller id first.
    pub fn unordered(self) -> (TeamId, TeamId) {
        if self.home <= self.away {
            (self.home, self.away)
        } else {
            (self.away, self.home)
        }
    }
}

impl From<(usize, usize)> for MatchUp {
    fn from((home, away): (usize, usize)) -> Self {
        MatchUp::new(home, away)
    }
}

/// One round: a perfect matching of all teams.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Round {
    matchups: Vec<MatchUp>,
}

impl Round {
    /// Builds a round, checking that every team in `0..n_teams` appears exactly once.
    /// `index` is only used to label errors.
    pub fn new(n_teams: usize, index: usize, matchups: Vec<MatchUp>) -> Result<Self, ScheduleError> {
        if matchups.len() != n_teams / 2 {
            return Err(ScheduleError::MatchupCount {
                round: index,
                expected: n_teams / 2,
                actual: matchups.len(),
            });
        }
        let mut seen = vec![false; n_teams];
        for m in &matchups {
            if m.home == m.away {
                return Err(ScheduleError::SelfMatch {
                    round: index,
                    team: m.home.0,
                });
            }
            for t in [m.home, m.away] {
                if t.0 >= n_teams {
                    return Err(ScheduleError::TeamOutOfRange {
                        round: index,
                        team: t.0,
                        n_teams,
                    });
                }
                if std::mem::replace(&mut seen[t.0], true) {
                    return Err(ScheduleError::DuplicateTeam {
                        round: index,
                        team: t.0,
                    });
                }
            }
        }
        Ok(Round { matchups })
    }

    /// Wraps matchups already known to form a perfect matching.
    pub(crate) fn from_matching(matchups: Vec<MatchUp>) -> Self {
        Round { matchups }
    }

    pub fn matchups(&self) -> &[MatchUp] {
        &self.matchups
    }

    /// The matchup `t` takes part in, if any.
    pub fn matchup_of(&self, t: TeamId) -> Option<MatchUp> {
        self.matchups.iter().copied().find(|m| m.involves(t))
    }

    /// Matchups sorted, for order-insensitive comparison.
    pub fn matchup_set(&self) -> Vec<MatchUp> {
        let mut v = self.matchups.clone();
        v.sort_unstable();
        v
    }
}

/// Number of rounds in a double round robin over `n_teams` teams.
pub fn rounds_for(n_teams: usize) -> usize {
    2 * (n_teams - 1)
}

/// Checks the team count shared by every entry point.
pub fn check_team_count(n_teams: usize) -> Result<(), ScheduleError> {
    if n_teams < 4 || !n_teams.is_multiple_of(2) {
        Err(ScheduleError::InvalidTeamCount(n_teams))
    } else {
        Ok(())
    }
}

/// A complete tournament of `2 * (n_teams - 1)` rounds.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ScheduleJson", into = "ScheduleJson")]
pub struct Schedule {
    n_teams: usize,
    rounds: Vec<Round>,
}

impl Schedule {
    pub fn new(n_teams: usize, rounds: Vec<Round>) -> Result<Self, ScheduleError> {
        check_team_count(n_teams)?;
        let expected = rounds_for(n_teams);
        if rounds.len() != expected {
            return Err(ScheduleError::RoundCount {
                n_teams,
                expected,
                actual: rounds.len(),
            });
        }
        // Rounds may have been built for a different team count.
        for (i, r) in rounds.iter().enumerate() {
            Round::new(n_teams, i, r.matchups.clone())?;
        }
        Ok(Schedule { n_teams, rounds })
    }

    /// Builds a schedule from `(home, away)` pairs per round.
    pub fn from_pairs(n_teams: usize, rounds: &[Vec<(usize, usize)>]) -> Result<Self, ScheduleError> {
        check_team_count(n_teams)?;
        let rounds = rounds
            .iter()
            .enumerate()
            .map(|(i, r)| Round::new(n_teams, i, r.iter().map(|&p| p.into()).collect()))
            .collect::<Result<Vec<_>, _>>()?;
        Schedule::new(n_teams, rounds)
    }

    pub(crate) fn from_valid_rounds(n_teams: usize, rounds: Vec<Round>) -> Self {
        debug_assert_eq!(rounds.len(), rounds_for(n_teams));
        Schedule { n_teams, rounds }
    }

    pub fn n_teams(&self) -> usize {
        self.n_teams
    }

    pub fn rounds(&self) -> &[Round] {
        &self.rounds
    }

    pub fn n_rounds(&self) -> usize {
        self.rounds.len()
    }

    pub fn teams(&self) -> impl Iterator<Item = TeamId> {
        (0..self.n_teams).map(TeamId)
    }

    fn check_team(&self, t: TeamId) -> Result<(), ScheduleError> {
        if t.0 >= self.n_teams {
            Err(ScheduleError::UnknownTeam {
                team: t.0,
                n_teams: self.n_teams,
            })
        } else {
            Ok(())
        }
    }

    /// Per-team view of the schedule, indexed `[team][round]`.
    pub fn per_team_table(&self) -> TeamTable {
        let n_rounds = self.rounds.len();
        let mut cells = vec![
            TeamRoundCell {
                opponent: TeamId(0),
                venue: Venue::Home,
            };
            self.n_teams * n_rounds
        ];
        for (r, round) in self.rounds.iter().enumerate() {
            for m in &round.matchups {
                cells[m.home.0 * n_rounds + r] = TeamRoundCell {
                    opponent: m.away,
                    venue: Venue::Home,
                };
                cells[m.away.0 * n_rounds + r] = TeamRoundCell {
                    opponent: m.home,
                    venue: Venue::Away,
                };
            }
        }
        TeamTable {
            n_teams: self.n_teams,
            n_rounds,
            cells,
        }
    }

    /// Home/away string of team `t` over the season.
    pub fn venue_sequence(&self, t: TeamId) -> Result<VenueSequence, ScheduleError> {
        self.check_team(t)?;
        Ok(VenueSequence(
            self.rounds
                .iter()
                .map(|r| {
                    if r.matchups.iter().any(|m| m.home == t) {
                        Venue::Home
                    } else {
                        Venue::Away
                    }
                })
                .collect(),
        ))
    }

    /// Serializes to the canonical single-line JSON form.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("schedule serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Wire form: `{"n_teams": N, "rounds": [[[h, a], ...], ...]}`.
#[derive(Serialize, Deserialize)]
struct ScheduleJson {
    n_teams: usize,
    rounds: Vec<Vec<[usize; 2]>>,
}

impl TryFrom<ScheduleJson> for Schedule {
    type Error = ScheduleError;

    fn try_from(j: ScheduleJson) -> Result<Self, Self::Error> {
        let pairs: Vec<Vec<(usize, usize)>> = j
            .rounds
            .into_iter()
            .map(|r| r.into_iter().map(|[h, a]| (h, a)).collect())
            .collect();
        Schedule::from_pairs(j.n_teams, &pairs)
    }
}

impl From<Schedule> for ScheduleJson {
    fn from(s: Schedule) -> Self {
        ScheduleJson {
            n_teams: s.n_teams,
            rounds: s
                .rounds
                .iter()
                .map(|r| r.matchups.iter().map(|m| [m.home.0, m.away.0]).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Venue {
    Home,
    Away,
}

impl Venue {
    pub fn symbol(self) -> char {
        match self {
            Venue::Home => 'H',
            Venue::Away => 'A',
        }
    }
}

/// What one team does in one round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TeamRoundCell {
    pub opponent: TeamId,
    pub venue: Venue,
}

/// Team-by-round matrix of [`TeamRoundCell`]s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TeamTable {
    n_teams: usize,
    n_rounds: usize,
    cells: Vec<TeamRoundCell>,
}

impl TeamTable {
    pub fn n_teams(&self) -> usize {
        self.n_teams
    }

    pub fn n_rounds(&self) -> usize {
        self.n_rounds
    }

    pub fn cell(&self, t: TeamId, round: usize) -> TeamRoundCell {
        self.cells[t.0 * self.n_rounds + round]
    }

    /// Row of team `t` across all rounds.
    pub fn row(&self, t: TeamId) -> &[TeamRoundCell] {
        &self.cells[t.0 * self.n_rounds..(t.0 + 1) * self.n_rounds]
    }

    /// All cells, team-major.
    pub fn cells(&self) -> &[TeamRoundCell] {
        &self.cells
    }

    /// Rebuilds the schedule. Each round lists its matchups by ascending home team,
    /// so only the unordered matchup content of the source is recovered.
    pub fn to_schedule(&self) -> Result<Schedule, ScheduleError> {
        let mut rounds = Vec::with_capacity(self.n_rounds);
        for r in 0..self.n_rounds {
            let mut matchups = Vec::with_capacity(self.n_teams / 2);
            for t in 0..self.n_teams {
                let cell = self.cell(TeamId(t), r);
                let inconsistent = ScheduleError::InconsistentTable { team: t, round: r };
                if cell.opponent.0 >= self.n_teams || cell.opponent.0 == t {
                    return Err(inconsistent);
                }
                let back = self.cell(cell.opponent, r);
                if back.opponent.0 != t || back.venue == cell.venue {
                    return Err(inconsistent);
                }
                if cell.venue == Venue::Home {
                    matchups.push(MatchUp {
                        home: TeamId(t),
                        away: cell.opponent,
                    });
                }
            }
            rounds.push(Round::new(self.n_teams, r, matchups)?);
        }
        Schedule::new(self.n_teams, rounds)
    }
}

/// A team's season as a string over `{H, A}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VenueSequence(Vec<Venue>);

impl VenueSequence {
    pub fn venues(&self) -> &[Venue] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::str::FromStr for VenueSequence {
    type Err = char;

    /// Parses a string of `H`/`A` symbols; the error is the first offending character.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                'H' => Ok(Venue::Home),
                'A' => Ok(Venue::Away),
                other => Err(other),
            })
            .collect::<Result<_, _>>()
            .map(VenueSequence)
    }
}

impl fmt::Display for VenueSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|v| write!(f, "{}", v.symbol()))
    }
}

/// Error from reading a JSON Lines stream, carrying the 1-based line number.
#[derive(Debug, Error)]
pub enum JsonLinesError {
    #[error("line {line}: {source}")]
    Parse {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("line {line}: {source}")]
    Io {
        line: usize,
        #[source]
        source: std::io::Error,
    },
}

/// Reads one schedule per non-blank line.
pub fn read_json_lines<R: BufRead>(reader: R) -> Result<Vec<Schedule>, JsonLinesError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|source| JsonLinesError::Io { line: i + 1, source })?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(Schedule::from_json(&line).map_err(|source| JsonLinesError::Parse { line: i + 1, source })?);
    }
    Ok(out)
}

pub fn write_json_line<W: Write>(mut w: W, s: &Schedule) -> std::io::Result<()> {
    writeln!(w, "{}", s.to_json())
}
