//! Pairwise distance between schedules and population statistics.
//!
//! The distance is a Hamming distance over the `(team, round)` cells of the
//! per-team table. Each mode projects a cell before comparing it: `full` keeps
//! `(opponent, venue)`, `opponent` keeps the opponent only, `venue` keeps the
//! home/away flag only.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::schedule::{Schedule, TeamRoundCell, TeamTable};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiversityError {
    #[error("schedules differ in shape: {0} teams x {1} rounds vs {2} teams x {3} rounds")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("need at least 2 schedules, got {0}")]
    PopulationTooSmall(usize),
    #[error("unknown diff mode `{0}` (expected full, opponent or venue)")]
    UnknownMode(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiffMode {
    Full,
    Opponent,
    Venue,
}

impl DiffMode {
    pub const ALL: [DiffMode; 3] = [DiffMode::Full, DiffMode::Opponent, DiffMode::Venue];

    pub fn token(self) -> &'static str {
        match self {
            DiffMode::Full => "full",
            DiffMode::Opponent => "opponent",
            DiffMode::Venue => "venue",
        }
    }

    #[inline]
    fn differs(self, a: TeamRoundCell, b: TeamRoundCell) -> bool {
        match self {
            DiffMode::Full => a != b,
            DiffMode::Opponent => a.opponent != b.opponent,
            DiffMode::Venue => a.venue != b.venue,
        }
    }
}

impl fmt::Display for DiffMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for DiffMode {
    type Err = DiversityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "full" => Ok(DiffMode::Full),
            "opponent" => Ok(DiffMode::Opponent),
            "venue" => Ok(DiffMode::Venue),
            other => Err(DiversityError::UnknownMode(other.to_string())),
        }
    }
}

impl Serialize for DiffMode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.token())
    }
}

fn check_shape(a: &TeamTable, b: &TeamTable) -> Result<(), DiversityError> {
    if a.n_teams() != b.n_teams() || a.n_rounds() != b.n_rounds() {
        Err(DiversityError::ShapeMismatch(
            a.n_teams(),
            a.n_rounds(),
            b.n_teams(),
            b.n_rounds(),
        ))
    } else {
        Ok(())
    }
}

/// Distance between two precomputed tables of equal shape.
pub fn table_diff(a: &TeamTable, b: &TeamTable, mode: DiffMode) -> Result<usize, DiversityError> {
    check_shape(a, b)?;
    Ok(cell_diff(a, b, mode))
}

#[inline]
fn cell_diff(a: &TeamTable, b: &TeamTable, mode: DiffMode) -> usize {
    a.cells()
        .iter()
        .zip(b.cells())
        .filter(|(x, y)| mode.differs(**x, **y))
        .count()
}

/// Number of `(team, round)` cells on which `a` and `b` disagree under `mode`.
pub fn diff(a: &Schedule, b: &Schedule, mode: DiffMode) -> Result<usize, DiversityError> {
    table_diff(&a.per_team_table(), &b.per_team_table(), mode)
}

/// Distances over all unordered pairs of a population.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiffStats {
    pub mode: DiffMode,
    #[serde(rename = "pairs")]
    pub pair_count: u64,
    pub mean: f64,
    #[serde(skip)]
    pub histogram: BTreeMap<usize, u64>,
}

impl DiffStats {
    /// Sum of all pair distances, recovered exactly from the histogram.
    pub fn total_distance(&self) -> u64 {
        self.histogram.iter().map(|(&d, &c)| d as u64 * c).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("stats serialization is infallible")
    }

    /// `distance,count` rows in ascending distance.
    pub fn histogram_csv(&self) -> String {
        let mut out = String::from("distance,count\n");
        for (d, c) in &self.histogram {
            out.push_str(&format!("{d},{c}\n"));
        }
        out
    }
}

/// Distance statistics over every unordered pair of `pop`.
///
/// Rows are processed in parallel, each producing an integer histogram; the
/// merge is exact, so the result does not depend on scheduling.
pub fn pairwise_stats(pop: &[Schedule], mode: DiffMode) -> Result<DiffStats, DiversityError> {
    if pop.len() < 2 {
        return Err(DiversityError::PopulationTooSmall(pop.len()));
    }
    let tables: Vec<TeamTable> = pop.iter().map(Schedule::per_team_table).collect();
    for t in &tables[1..] {
        check_shape(&tables[0], t)?;
    }
    let histogram = (0..tables.len())
        .into_par_iter()
        .map(|i| {
            let mut h = BTreeMap::new();
            for j in i + 1..tables.len() {
                *h.entry(cell_diff(&tables[i], &tables[j], mode)).or_insert(0u64) += 1;
            }
            h
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (d, c) in b {
                *a.entry(d).or_insert(0) += c;
            }
            a
        });
    let n = tables.len() as u64;
    let pair_count = n * (n - 1) / 2;
    let mut stats = DiffStats {
        mode,
        pair_count,
        mean: 0.0,
        histogram,
    };
    stats.mean = stats.total_distance() as f64 / pair_count as f64;
    Ok(stats)
}
