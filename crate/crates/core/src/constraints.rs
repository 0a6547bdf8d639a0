//! Violation counting for the three tournament constraints.
//!
//! Counts follow tuple semantics: a game is the ordered pair `(home, away)`.
//!
//! * double round robin: one violation per missing ordered game plus one per
//!   surplus appearance of a game;
//! * max streak: within each maximal home or away run, every game past `k`;
//! * no repeat: every unordered pairing shared by two adjacent rounds.

use serde::{Deserialize, Serialize};

use crate::schedule::{Schedule, TeamId, Venue, VenueSequence};

/// The three counts for one schedule at one streak limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ViolationReport {
    pub drr: u64,
    pub max_streak_k: usize,
    pub max_streak: u64,
    pub no_repeat: u64,
}

impl ViolationReport {
    pub const CSV_HEADER: &'static str = "drr,max_streak_k,max_streak,no_repeat";

    /// All three counts are zero.
    pub fn is_valid(&self) -> bool {
        self.drr == 0 && self.max_streak == 0 && self.no_repeat == 0
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{}",
            self.drr, self.max_streak_k, self.max_streak, self.no_repeat
        )
    }
}

/// Missing plus surplus ordered games. Always even for a schedule of the
/// right length, since slots and required games balance.
pub fn count_drr(s: &Schedule) -> u64 {
    let n = s.n_teams();
    let mut seen = vec![0u32; n * n];
    for m in s.rounds().iter().flat_map(|r| r.matchups()) {
        seen[m.home.0 * n + m.away.0] += 1;
    }
    let mut violations = 0u64;
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            violations += match seen[a * n + b] {
                0 => 1,
                c => u64::from(c - 1),
            };
        }
    }
    violations
}

/// Games past `k` within runs of equal venues.
///
/// # Panics
/// If `k == 0`.
pub fn streak_violations(v: &VenueSequence, k: usize) -> u64 {
    streak_excess(v.venues().iter().copied(), k)
}

fn streak_excess(venues: impl Iterator<Item = Venue>, k: usize) -> u64 {
    assert!(k >= 1, "streak limit must be at least 1");
    let mut total = 0u64;
    let mut prev = None;
    let mut run = 0usize;
    for v in venues {
        if prev == Some(v) {
            run += 1;
        } else {
            prev = Some(v);
            run = 1;
        }
        if run > k {
            total += 1;
        }
    }
    total
}

/// Sum of [`streak_violations`] over all teams.
pub fn count_maxstreak(s: &Schedule, k: usize) -> u64 {
    streak_counts(s, &[k])[0]
}

/// Max-streak counts for several limits on one schedule, in the order given.
pub fn streak_counts(s: &Schedule, ks: &[usize]) -> Vec<u64> {
    assert!(ks.iter().all(|&k| k >= 1), "streak limit must be at least 1");
    let mut out = vec![0u64; ks.len()];
    // Venue per team per round, then one pass per team computing run lengths.
    let n_rounds = s.n_rounds();
    let mut home = vec![false; s.n_teams() * n_rounds];
    for (r, round) in s.rounds().iter().enumerate() {
        for m in round.matchups() {
            home[m.home.0 * n_rounds + r] = true;
        }
    }
    for row in home.chunks_exact(n_rounds) {
        let mut run = 0usize;
        for (r, &h) in row.iter().enumerate() {
            run = if r > 0 && row[r - 1] == h { run + 1 } else { 1 };
            for (slot, &k) in out.iter_mut().zip(ks) {
                if run > k {
                    *slot += 1;
                }
            }
        }
    }
    out
}

/// Unordered pairings repeated in the following round, summed over adjacencies.
pub fn count_norepeat(s: &Schedule) -> u64 {
    let n = s.n_teams();
    let mut opponent = vec![TeamId(0); n];
    let mut total = 0u64;
    for (r, round) in s.rounds().iter().enumerate() {
        if r > 0 {
            total += round.matchups().iter().filter(|m| opponent[m.home.0] == m.away).count() as u64;
        }
        for m in round.matchups() {
            opponent[m.home.0] = m.away;
            opponent[m.away.0] = m.home;
        }
    }
    total
}

/// Upper bound on [`count_norepeat`], reached when every round is the same matching.
pub fn max_norepeat(n_teams: usize) -> u64 {
    ((2 * n_teams - 3) * n_teams / 2) as u64
}

pub fn violation_report(s: &Schedule, k: usize) -> ViolationReport {
    ViolationReport {
        drr: count_drr(s),
        max_streak_k: k,
        max_streak: count_maxstreak(s, k),
        no_repeat: count_norepeat(s),
    }
}
