//! Exhaustive depth-first enumeration of valid schedules.
//!
//! The first round is fixed to `[(0,1), (2,3), ..., (n-2,n-1)]`. Every later
//! round is filled one matchup at a time, always pairing the lowest team not yet
//! placed in the round, so each round's matchup set is generated exactly once.
//! After each placement the partial schedule is checked against all three
//! constraints and the branch is abandoned on the first violation.

use std::ops::ControlFlow;

use thiserror::Error;

use crate::schedule::{check_team_count, rounds_for, MatchUp, Round, Schedule, ScheduleError, TeamId, Venue};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumError {
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error("max streak must be at least 1")]
    ZeroMaxStreak,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumConfig {
    n_teams: usize,
    max_streak: usize,
    limit: Option<usize>,
}

impl EnumConfig {
    pub fn new(n_teams: usize, max_streak: usize, limit: Option<usize>) -> Result<Self, EnumError> {
        check_team_count(n_teams)?;
        if max_streak == 0 {
            return Err(EnumError::ZeroMaxStreak);
        }
        Ok(EnumConfig {
            n_teams,
            max_streak,
            limit,
        })
    }

    /// `max_streak = 3`, no limit.
    pub fn with_teams(n_teams: usize) -> Result<Self, EnumError> {
        Self::new(n_teams, 3, None)
    }

    pub fn n_teams(&self) -> usize {
        self.n_teams
    }

    pub fn max_streak(&self) -> usize {
        self.max_streak
    }

    pub fn limit(&self) -> Option<usize> {
        self.limit
    }
}

/// Why a placement was refused.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PruneReason {
    /// The ordered game was already played.
    DoubleRoundRobin,
    /// A venue run would exceed the streak limit.
    MaxStreak,
    /// The pairing also occurs in the previous round.
    NoRepeat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PruneDecision {
    Accept,
    Reject(PruneReason),
}

#[derive(Debug, Clone, Copy)]
struct Run {
    venue: Option<Venue>,
    len: usize,
}

impl Run {
    fn extended(self, v: Venue) -> Run {
        if self.venue == Some(v) {
            Run {
                venue: Some(v),
                len: self.len + 1,
            }
        } else {
            Run { venue: Some(v), len: 1 }
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Placement {
    matchup: MatchUp,
    home_run: Run,
    away_run: Run,
    closed_round: bool,
}

/// A schedule under construction, with the bookkeeping the pruning rules need.
#[derive(Debug, Clone)]
pub struct PartialSchedule {
    n_teams: usize,
    max_streak: usize,
    rounds: Vec<Round>,
    current: Vec<MatchUp>,
    in_current: Vec<bool>,
    /// `played[home * n + away]`
    played: Vec<bool>,
    runs: Vec<Run>,
    /// Opponent of each team in each completed round.
    opponents: Vec<Vec<TeamId>>,
    history: Vec<Placement>,
}

impl PartialSchedule {
    /// An empty schedule: no rounds placed.
    pub fn new(n_teams: usize, max_streak: usize) -> Result<Self, EnumError> {
        check_team_count(n_teams)?;
        if max_streak == 0 {
            return Err(EnumError::ZeroMaxStreak);
        }
        Ok(PartialSchedule {
            n_teams,
            max_streak,
            rounds: Vec::with_capacity(rounds_for(n_teams)),
            current: Vec::with_capacity(n_teams / 2),
            in_current: vec![false; n_teams],
            played: vec![false; n_teams * n_teams],
            runs: vec![Run { venue: None, len: 0 }; n_teams],
            opponents: Vec::with_capacity(rounds_for(n_teams)),
            history: Vec::new(),
        })
    }

    /// Starts from the canonical first round `[(0,1), (2,3), ...]`.
    pub fn half_normalized(n_teams: usize, max_streak: usize) -> Result<Self, EnumError> {
        let mut p = Self::new(n_teams, max_streak)?;
        for m in canonical_first_round(n_teams) {
            p.place(m);
        }
        Ok(p)
    }

    pub fn completed_rounds(&self) -> &[Round] {
        &self.rounds
    }

    pub fn current_round(&self) -> &[MatchUp] {
        &self.current
    }

    pub fn is_complete(&self) -> bool {
        self.rounds.len() == rounds_for(self.n_teams)
    }

    pub fn has_played(&self, m: MatchUp) -> bool {
        self.played[m.home.0 * self.n_teams + m.away.0]
    }

    /// Appends `m` to the current round without checking constraints.
    ///
    /// # Panics
    /// If either team is out of range or already placed in the current round,
    /// or the schedule is already complete.
    pub fn place(&mut self, m: MatchUp) {
        assert!(!self.is_complete(), "schedule is already complete");
        assert!(m.home != m.away, "team {} cannot play itself", m.home);
        for t in [m.home, m.away] {
            assert!(t.0 < self.n_teams, "team {t} out of range");
            assert!(!self.in_current[t.0], "team {t} already placed in this round");
        }
        let placement = Placement {
            matchup: m,
            home_run: self.runs[m.home.0],
            away_run: self.runs[m.away.0],
            closed_round: self.current.len() + 1 == self.n_teams / 2,
        };
        self.runs[m.home.0] = placement.home_run.extended(Venue::Home);
        self.runs[m.away.0] = placement.away_run.extended(Venue::Away);
        self.played[m.home.0 * self.n_teams + m.away.0] = true;
        self.in_current[m.home.0] = true;
        self.in_current[m.away.0] = true;
        self.current.push(m);
        if placement.closed_round {
            let mut opp = vec![TeamId(0); self.n_teams];
            for x in &self.current {
                opp[x.home.0] = x.away;
                opp[x.away.0] = x.home;
            }
            self.opponents.push(opp);
            let matchups = std::mem::take(&mut self.current);
            self.rounds.push(Round::from_matching(matchups));
            self.in_current.iter_mut().for_each(|b| *b = false);
        }
        self.history.push(placement);
    }

    /// Reverts the most recent [`place`](Self::place). Returns the removed matchup.
    pub fn unplace(&mut self) -> Option<MatchUp> {
        let p = self.history.pop()?;
        if p.closed_round {
            self.opponents.pop();
            let round = self.rounds.pop().expect("closed round present");
            self.current = round.matchups().to_vec();
            for x in &self.current {
                self.in_current[x.home.0] = true;
                self.in_current[x.away.0] = true;
            }
        }
        let m = self.current.pop().expect("placement present");
        debug_assert_eq!(m, p.matchup);
        self.in_current[m.home.0] = false;
        self.in_current[m.away.0] = false;
        self.played[m.home.0 * self.n_teams + m.away.0] = false;
        self.runs[m.home.0] = p.home_run;
        self.runs[m.away.0] = p.away_run;
        Some(m)
    }

    fn to_schedule(&self) -> Schedule {
        Schedule::from_valid_rounds(self.n_teams, self.rounds.clone())
    }
}

/// `[(0,1), (2,3), ..., (n-2,n-1)]`
pub fn canonical_first_round(n_teams: usize) -> Vec<MatchUp> {
    (0..n_teams).step_by(2).map(|t| MatchUp::new(t, t + 1)).collect()
}

/// Branches for the next placement: the lowest unplaced team against every
/// other unplaced team, opponent ascending, home orientation first. Games
/// already played are left out.
pub fn next_matchup_candidates(p: &PartialSchedule) -> Vec<MatchUp> {
    if p.is_complete() {
        return Vec::new();
    }
    let Some(low) = (0..p.n_teams).find(|&t| !p.in_current[t]) else {
        return Vec::new();
    };
    let mut out = Vec::with_capacity(2 * (p.n_teams - 1));
    for other in low + 1..p.n_teams {
        if p.in_current[other] {
            continue;
        }
        for m in [MatchUp::new(low, other), MatchUp::new(other, low)] {
            if !p.has_played(m) {
                out.push(m);
            }
        }
    }
    out
}

/// Decides whether `m` can extend `p` without breaking a constraint.
pub fn prune_check(p: &PartialSchedule, m: MatchUp) -> PruneDecision {
    if p.has_played(m) {
        return PruneDecision::Reject(PruneReason::DoubleRoundRobin);
    }
    if p.runs[m.home.0].extended(Venue::Home).len > p.max_streak
        || p.runs[m.away.0].extended(Venue::Away).len > p.max_streak
    {
        return PruneDecision::Reject(PruneReason::MaxStreak);
    }
    if let Some(prev) = p.opponents.last() {
        if prev[m.home.0] == m.away {
            return PruneDecision::Reject(PruneReason::NoRepeat);
        }
    }
    PruneDecision::Accept
}

/// Streams every valid half-normalized schedule to `sink` in depth-first order
/// and returns how many were emitted. Stops after `cfg.limit()` schedules.
pub fn enumerate_valid<F: FnMut(Schedule)>(cfg: &EnumConfig, mut sink: F) -> usize {
    if cfg.limit == Some(0) {
        return 0;
    }
    let mut p = PartialSchedule::half_normalized(cfg.n_teams, cfg.max_streak).expect("validated config");
    let mut emitted = 0usize;
    let _ = search(&mut p, cfg, &mut emitted, &mut sink);
    emitted
}

/// Collects [`enumerate_valid`] into a vector.
pub fn enumerate_all(cfg: &EnumConfig) -> Vec<Schedule> {
    let mut out = Vec::new();
    enumerate_valid(cfg, |s| out.push(s));
    out
}

fn search<F: FnMut(Schedule)>(
    p: &mut PartialSchedule,
    cfg: &EnumConfig,
    emitted: &mut usize,
    sink: &mut F,
) -> ControlFlow<()> {
    if p.is_complete() {
        let s = p.to_schedule();
        #[cfg(debug_assertions)]
        {
            let report = crate::constraints::violation_report(&s, cfg.max_streak);
            assert!(report.is_valid(), "enumerator emitted an invalid schedule: {report:?}");
        }
        sink(s);
        *emitted += 1;
        return match cfg.limit {
            Some(l) if *emitted >= l => ControlFlow::Break(()),
            _ => ControlFlow::Continue(()),
        };
    }
    for m in next_matchup_candidates(p) {
        if prune_check(p, m) != PruneDecision::Accept {
            continue;
        }
        p.place(m);
        let flow = search(p, cfg, emitted, sink);
        p.unplace();
        flow?;
    }
    ControlFlow::Continue(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn m(h: usize, a: usize) -> MatchUp {
        MatchUp::new(h, a)
    }

    #[test]
    fn empty_round_candidates() {
        let p = PartialSchedule::new(4, 3).unwrap();
        assert_eq!(
            next_matchup_candidates(&p),
            vec![m(0, 1), m(1, 0), m(0, 2), m(2, 0), m(0, 3), m(3, 0)]
        );
    }

    #[test]
    fn forced_last_pair() {
        let mut p = PartialSchedule::new(4, 3).unwrap();
        p.place(m(0, 2));
        assert_eq!(next_matchup_candidates(&p), vec![m(1, 3), m(3, 1)]);
    }

    #[test]
    fn played_game_excluded() {
        let p = PartialSchedule::half_normalized(4, 3).unwrap();
        let c = next_matchup_candidates(&p);
        assert!(!c.contains(&m(0, 1)));
        assert!(c.contains(&m(1, 0)));
        assert_eq!(c.len(), 5);
    }

    #[test]
    fn prune_reasons() {
        let mut p = PartialSchedule::half_normalized(4, 3).unwrap();
        p.place(m(0, 2));
        p.place(m(1, 3));
        assert_eq!(
            prune_check(&p, m(0, 1)),
            PruneDecision::Reject(PruneReason::DoubleRoundRobin)
        );
        assert_eq!(prune_check(&p, m(3, 0)), PruneDecision::Accept);

        // Team 0 on H,H,H with unplayed opponents left needs more than 4 teams.
        let mut w = PartialSchedule::new(8, 3).unwrap();
        for r in [
            [m(0, 1), m(2, 3), m(4, 5), m(6, 7)],
            [m(0, 2), m(1, 3), m(4, 6), m(5, 7)],
            [m(0, 3), m(1, 2), m(4, 7), m(5, 6)],
        ] {
            r.into_iter().for_each(|x| w.place(x));
        }
        assert_eq!(prune_check(&w, m(0, 4)), PruneDecision::Reject(PruneReason::MaxStreak));
        assert_eq!(prune_check(&w, m(5, 0)), PruneDecision::Accept);
        // Team 7 is on A,A,A.
        assert_eq!(prune_check(&w, m(1, 7)), PruneDecision::Reject(PruneReason::MaxStreak));
    }

    #[test]
    fn prune_no_repeat() {
        let p = PartialSchedule::half_normalized(4, 3).unwrap();
        assert_eq!(prune_check(&p, m(1, 0)), PruneDecision::Reject(PruneReason::NoRepeat));
        assert_eq!(prune_check(&p, m(2, 0)), PruneDecision::Accept);
    }

    #[test]
    fn place_and_unplace_restore_state() {
        let mut p = PartialSchedule::half_normalized(4, 3).unwrap();
        let before = format!("{p:?}");
        p.place(m(0, 2));
        p.place(m(1, 3));
        assert_eq!(p.completed_rounds().len(), 2);
        p.place(m(3, 0));
        assert_eq!(p.unplace(), Some(m(3, 0)));
        assert_eq!(p.unplace(), Some(m(1, 3)));
        assert_eq!(p.current_round(), &[m(0, 2)]);
        assert_eq!(p.unplace(), Some(m(0, 2)));
        assert_eq!(format!("{p:?}"), before);
    }

    #[test]
    #[should_panic(expected = "already placed")]
    fn place_rejects_structural_clash() {
        let mut p = PartialSchedule::new(4, 3).unwrap();
        p.place(m(0, 1));
        p.place(m(1, 2));
    }

    #[test]
    fn enumerates_160_distinct() {
        let all = enumerate_all(&EnumConfig::with_teams(4).unwrap());
        assert_eq!(all.len(), 160);
        let set: HashSet<_> = all.iter().collect();
        assert_eq!(set.len(), 160);
        let first = canonical_first_round(4);
        assert!(all.iter().all(|s| s.rounds()[0].matchups() == first.as_slice()));
    }

    #[test]
    fn limit_yields_prefix() {
        let all = enumerate_all(&EnumConfig::with_teams(4).unwrap());
        let ten = enumerate_all(&EnumConfig::new(4, 3, Some(10)).unwrap());
        assert_eq!(ten.as_slice(), &all[..10]);
        let mut calls = 0;
        assert_eq!(
            enumerate_valid(&EnumConfig::new(4, 3, Some(0)).unwrap(), |_| calls += 1),
            0
        );
        assert_eq!(calls, 0);
    }

    #[test]
    fn tighter_streaks() {
        // Streak limit never binds above 3 at n=4; at 2 only 24 survive.
        assert_eq!(enumerate_all(&EnumConfig::new(4, 4, None).unwrap()).len(), 160);
        assert_eq!(enumerate_all(&EnumConfig::new(4, 2, None).unwrap()).len(), 24);
        assert_eq!(enumerate_all(&EnumConfig::new(4, 1, None).unwrap()).len(), 0);
    }

    #[test]
    fn six_teams_with_limit() {
        let got = enumerate_all(&EnumConfig::new(6, 3, Some(3)).unwrap());
        assert_eq!(got.len(), 3);
        for s in &got {
            assert!(crate::constraints::violation_report(s, 3).is_valid());
        }
    }

    #[test]
    fn config_validation() {
        assert!(EnumConfig::new(5, 3, None).is_err());
        assert_eq!(EnumConfig::new(4, 0, None), Err(EnumError::ZeroMaxStreak));
    }
}
