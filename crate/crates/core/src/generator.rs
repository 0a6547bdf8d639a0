//! Rows-first random tournaments.
//!
//! Each round shuffles `0..n_teams` and pairs consecutive entries, the first of
//! each pair hosting. Rounds are drawn independently, so per-round validity is
//! guaranteed while every cross-round constraint is left to chance.
//!
//! Every schedule is drawn from its own Xoshiro256++ stream, seeded with
//! [`substream_seed`] of `(master seed, n_teams, sample index)`. Samples can
//! therefore be produced in any order, or in parallel, with identical results.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::schedule::{check_team_count, rounds_for, MatchUp, Round, Schedule, ScheduleError, TeamId};

/// Generator PRNG.
pub type ScheduleRng = Xoshiro256PlusPlus;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenConfig {
    n_teams: usize,
    seed: u64,
}

impl GenConfig {
    pub fn new(n_teams: usize, seed: u64) -> Result<Self, ScheduleError> {
        check_team_count(n_teams)?;
        Ok(GenConfig { n_teams, seed })
    }

    pub fn n_teams(&self) -> usize {
        self.n_teams
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// Seed of the stream for one `(master_seed, n_teams, sample_index)` triple.
///
/// Each component is absorbed by adding the golden-gamma increment and applying
/// the SplitMix64 finalizer.
pub fn substream_seed(master_seed: u64, n_teams: usize, sample_index: u64) -> u64 {
    let mut h = mix64(master_seed.wrapping_add(GOLDEN_GAMMA));
    h = mix64(h ^ (n_teams as u64).wrapping_add(GOLDEN_GAMMA));
    mix64(h ^ sample_index.wrapping_add(GOLDEN_GAMMA))
}

/// Stream used for one sample.
pub fn sample_rng(master_seed: u64, n_teams: usize, sample_index: u64) -> ScheduleRng {
    ScheduleRng::seed_from_u64(substream_seed(master_seed, n_teams, sample_index))
}

/// Uniform random perfect matching with orientation taken from shuffle order.
pub fn random_round<R: Rng + ?Sized>(n_teams: usize, rng: &mut R) -> Result<Round, ScheduleError> {
    check_team_count(n_teams)?;
    Ok(draw_round(n_teams, rng))
}

fn draw_round<R: Rng + ?Sized>(n_teams: usize, rng: &mut R) -> Round {
    let mut order: Vec<usize> = (0..n_teams).collect();
    order.shuffle(rng);
    Round::from_matching(
        order
            .chunks_exact(2)
            .map(|p| MatchUp {
                home: TeamId(p[0]),
                away: TeamId(p[1]),
            })
            .collect(),
    )
}

/// Sample `sample_index` of the population described by `cfg`.
pub fn random_schedule(cfg: &GenConfig, sample_index: u64) -> Schedule {
    let mut rng = sample_rng(cfg.seed, cfg.n_teams, sample_index);
    let rounds = (0..rounds_for(cfg.n_teams))
        .map(|_| draw_round(cfg.n_teams, &mut rng))
        .collect();
    Schedule::from_valid_rounds(cfg.n_teams, rounds)
}
