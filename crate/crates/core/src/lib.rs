//! Random generation, violation counting, exhaustive enumeration and diversity
//! statistics for Traveling Tournament Problem schedules.
//!
//! Only schedule validity is modelled; there are no distances or travel costs.

pub mod analytics;
pub mod cli;
pub mod constraints;
pub mod diversity;
pub mod enumerator;
pub mod generator;
pub mod schedule;

pub use analytics::{
    expected_violations, fit_quadratic, run_sweep, Constraint, FitCoefficients, SweepConfig, SweepRecord,
};
pub use constraints::{
    count_drr, count_maxstreak, count_norepeat, streak_violations, violation_report, ViolationReport,
};
pub use diversity::{diff, pairwise_stats, DiffMode, DiffStats};
pub use enumerator::{enumerate_all, enumerate_valid, EnumConfig};
pub use generator::{random_round, random_schedule, GenConfig};
pub use schedule::{MatchUp, Round, Schedule, ScheduleError, TeamId, TeamRoundCell, TeamTable, Venue, VenueSequence};
