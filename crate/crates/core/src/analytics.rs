//! Monte Carlo sweeps over team counts, quadratic fitting of the average
//! violation curves, and closed-form expectations under the rows-first model.

use std::collections::HashMap;
use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::constraints::{count_drr, count_norepeat, streak_counts};
use crate::generator::{random_schedule, GenConfig};
use crate::schedule::{check_team_count, rounds_for};

#[derive(Debug, Error, PartialEq)]
pub enum AnalyticsError {
    #[error("unsupported constraint `{0}` (expected drr, maxstreak or norepeat)")]
    UnknownConstraint(String),
    #[error("team count {0} must be even and at least 4")]
    InvalidTeamCount(usize),
    #[error("maxstreak needs a streak limit k >= 1")]
    MissingStreakLimit,
    #[error("streak limit must be at least 1")]
    ZeroStreakLimit,
    #[error("samples per size must be at least 1")]
    NoSamples,
    #[error("sweep needs at least one team size")]
    NoTeamSizes,
    #[error("sweep cell n_teams={n_teams} did not complete: {reason}")]
    IncompleteCell { n_teams: usize, reason: String },
    #[error("quadratic fit needs at least 3 distinct team counts, got {0}")]
    DegenerateFit(usize),
    #[error("quadratic fit is numerically singular")]
    SingularFit,
    #[error("sweep csv line {line}: {message}")]
    Csv { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constraint {
    Drr,
    MaxStreak,
    NoRepeat,
}

impl Constraint {
    pub fn token(self) -> &'static str {
        match self {
            Constraint::Drr => "drr",
            Constraint::MaxStreak => "maxstreak",
            Constraint::NoRepeat => "norepeat",
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Constraint {
    type Err = AnalyticsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "drr" => Ok(Constraint::Drr),
            "maxstreak" => Ok(Constraint::MaxStreak),
            "norepeat" => Ok(Constraint::NoRepeat),
            other => Err(AnalyticsError::UnknownConstraint(other.to_string())),
        }
    }
}

impl Serialize for Constraint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.token())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub team_sizes: Vec<usize>,
    pub samples_per_size: u64,
    pub k_values: Vec<usize>,
    pub master_seed: u64,
}

impl Default for SweepConfig {
    /// 24 team sizes of 1000 samples each, streak limits 1 through 6.
    fn default() -> Self {
        SweepConfig {
            team_sizes: (4..=50).step_by(2).collect(),
            samples_per_size: 1000,
            k_values: (1..=6).collect(),
            master_seed: 0,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), AnalyticsError> {
        if self.team_sizes.is_empty() {
            return Err(AnalyticsError::NoTeamSizes);
        }
        if let Some(&n) = self.team_sizes.iter().find(|&&n| check_team_count(n).is_err()) {
            return Err(AnalyticsError::InvalidTeamCount(n));
        }
        if self.samples_per_size == 0 {
            return Err(AnalyticsError::NoSamples);
        }
        if self.k_values.contains(&0) {
            return Err(AnalyticsError::ZeroStreakLimit);
        }
        Ok(())
    }

    /// Number of records [`run_sweep`] emits.
    pub fn record_count(&self) -> usize {
        self.team_sizes.len() * (2 + self.k_values.len())
    }
}

/// Exact integer running statistics. Merging is commutative and associative,
/// so the result does not depend on how samples are split across threads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountStats {
    pub count: u64,
    pub min: u64,
    pub max: u64,
    pub sum: u64,
    pub sum_sq: u128,
}

impl Default for CountStats {
    fn default() -> Self {
        CountStats {
            count: 0,
            min: u64::MAX,
            max: 0,
            sum: 0,
            sum_sq: 0,
        }
    }
}

impl CountStats {
    pub fn push(&mut self, x: u64) {
        self.count += 1;
        self.min = self.min.min(x);
        self.max = self.max.max(x);
        self.sum += x;
        self.sum_sq += u128::from(x) * u128::from(x);
    }

    pub fn merge(mut self, other: CountStats) -> CountStats {
        self.count += other.count;
        self.min = self.min.min(other.min);
        self.max = self.max.max(other.max);
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
        self
    }

    pub fn mean(&self) -> f64 {
        self.sum as f64 / self.count as f64
    }

    /// Sample standard deviation (n - 1 denominator).
    pub fn std_dev(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        let n = self.count as f64;
        // Exact numerator n*sum_sq - sum^2 in integers.
        let num = self.count as u128 * self.sum_sq - u128::from(self.sum) * u128::from(self.sum);
        (num as f64 / (n * (n - 1.0))).sqrt()
    }
}

/// Aggregated violations for one `(n_teams, constraint[, k])` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub n_teams: usize,
    pub constraint: Constraint,
    pub k: Option<usize>,
    pub samples: u64,
    pub min: u64,
    pub avg: f64,
    pub max: u64,
    /// Sample standard deviation; not part of the CSV form, so `None` after parsing.
    pub std_dev: Option<f64>,
}

impl SweepRecord {
    fn from_stats(n_teams: usize, constraint: Constraint, k: Option<usize>, st: &CountStats) -> Self {
        SweepRecord {
            n_teams,
            constraint,
            k,
            samples: st.count,
            min: st.min,
            avg: st.mean(),
            max: st.max,
            std_dev: Some(st.std_dev()),
        }
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.n_teams,
            self.constraint,
            self.k.map(|k| k.to_string()).unwrap_or_default(),
            self.samples,
            self.min,
            self.avg,
            self.max
        )
    }
}

pub const SWEEP_CSV_HEADER: &str = "n_teams,constraint,k,samples,min,avg,max";

/// Runs the sweep on the current rayon pool.
///
/// Every sample schedule is counted under all three constraints and every `k`,
/// so the maxstreak cells for different `k` share one schedule population.
/// Records come out per team size as drr, norepeat, then maxstreak per `k`.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRecord>, AnalyticsError> {
    cfg.validate()?;
    let mut records = Vec::with_capacity(cfg.record_count());
    for &n in &cfg.team_sizes {
        let stats = catch_unwind(AssertUnwindSafe(|| sweep_cell(cfg, n))).map_err(|e| {
            let reason = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "worker panicked".to_string());
            AnalyticsError::IncompleteCell { n_teams: n, reason }
        })?;
        records.push(SweepRecord::from_stats(n, Constraint::Drr, None, &stats[0]));
        records.push(SweepRecord::from_stats(n, Constraint::NoRepeat, None, &stats[1]));
        for (i, &k) in cfg.k_values.iter().enumerate() {
            records.push(SweepRecord::from_stats(
                n,
                Constraint::MaxStreak,
                Some(k),
                &stats[2 + i],
            ));
        }
    }
    Ok(records)
}

/// Runs the sweep on a dedicated pool of `threads` workers.
pub fn run_sweep_with_threads(cfg: &SweepConfig, threads: usize) -> Result<Vec<SweepRecord>, AnalyticsError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| AnalyticsError::IncompleteCell {
            n_teams: cfg.team_sizes.first().copied().unwrap_or(0),
            reason: e.to_string(),
        })?;
    pool.install(|| run_sweep(cfg))
}

fn sweep_cell(cfg: &SweepConfig, n: usize) -> Vec<CountStats> {
    let gen = GenConfig::new(n, cfg.master_seed).expect("validated team count");
    let width = 2 + cfg.k_values.len();
    (0..cfg.samples_per_size)
        .into_par_iter()
        .fold(
            || vec![CountStats::default(); width],
            |mut acc, i| {
                let s = random_schedule(&gen, i);
                acc[0].push(count_drr(&s));
                acc[1].push(count_norepeat(&s));
                for (slot, c) in acc[2..].iter_mut().zip(streak_counts(&s, &cfg.k_values)) {
                    slot.push(c);
                }
                acc
            },
        )
        .reduce(
            || vec![CountStats::default(); width],
            |a, b| a.into_iter().zip(b).map(|(x, y)| x.merge(y)).collect(),
        )
}

pub fn sweep_csv(records: &[SweepRecord]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

pub fn parse_sweep_csv(text: &str) -> Result<Vec<SweepRecord>, AnalyticsError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, h)) if h.trim() == SWEEP_CSV_HEADER => {}
        Some((i, _)) => {
            return Err(AnalyticsError::Csv {
                line: i + 1,
                message: format!("expected header `{SWEEP_CSV_HEADER}`"),
            })
        }
        None => {
            return Err(AnalyticsError::Csv {
                line: 1,
                message: "empty input".into(),
            })
        }
    }
    lines
        .map(|(i, line)| {
            let err = |message: String| AnalyticsError::Csv { line: i + 1, message };
            let f: Vec<&str> = line.trim().split(',').collect();
            if f.len() != 7 {
                return Err(err(format!("expected 7 fields, got {}", f.len())));
            }
            let int = |s: &str, name: &str| s.parse::<u64>().map_err(|_| err(format!("bad {name} `{s}`")));
            let constraint: Constraint = f[1].parse().map_err(|e: AnalyticsError| err(e.to_string()))?;
            let k = if f[2].is_empty() {
                None
            } else {
                Some(int(f[2], "k")? as usize)
            };
            if (constraint == Constraint::MaxStreak) != k.is_some() {
                return Err(err("k must be set exactly for maxstreak rows".into()));
            }
            Ok(SweepRecord {
                n_teams: int(f[0], "n_teams")? as usize,
                constraint,
                k,
                samples: int(f[3], "samples")?,
                min: int(f[4], "min")?,
                avg: f[5].parse().map_err(|_| err(format!("bad avg `{}`", f[5])))?,
                max: int(f[6], "max")?,
                std_dev: None,
            })
        })
        .collect()
}

/// Coefficients of `y = A n^2 + B n + C`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitCoefficients {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub r_squared: f64,
}

impl FitCoefficients {
    pub fn eval(&self, n: f64) -> f64 {
        (self.a * n + self.b) * n + self.c
    }
}

/// Unweighted ordinary least squares quadratic through `(n, y)` points.
///
/// The abscissa is centred and scaled before solving the normal equations,
/// then the coefficients are mapped back to the raw `n` basis.
pub fn fit_quadratic(points: &[(usize, f64)]) -> Result<FitCoefficients, AnalyticsError> {
    let mut distinct: Vec<usize> = points.iter().map(|p| p.0).collect();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(AnalyticsError::DegenerateFit(distinct.len()));
    }
    let m = points.len() as f64;
    let centre = points.iter().map(|p| p.0 as f64).sum::<f64>() / m;
    let scale = points.iter().map(|p| (p.0 as f64 - centre).abs()).fold(0.0, f64::max);

    // Normal equations in basis (u^2, u, 1), u = (n - centre) / scale.
    let mut ata = [[0.0f64; 3]; 3];
    let mut aty = [0.0f64; 3];
    for &(n, y) in points {
        let u = (n as f64 - centre) / scale;
        let row = [u * u, u, 1.0];
        for i in 0..3 {
            aty[i] += row[i] * y;
            for j in 0..3 {
                ata[i][j] += row[i] * row[j];
            }
        }
    }
    let [qa, qb, qc] = solve3(ata, aty).ok_or(AnalyticsError::SingularFit)?;

    let s2 = scale * scale;
    let a = qa / s2;
    let b = qb / scale - 2.0 * qa * centre / s2;
    let c = qa * centre * centre / s2 - qb * centre / scale + qc;
    let mut fit = FitCoefficients {
        a,
        b,
        c,
        r_squared: 0.0,
    };

    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / m;
    let ss_tot: f64 = points.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let ss_res: f64 = points
        .iter()
        .map(|&(n, y)| {
            let u = (n as f64 - centre) / scale;
            (y - ((qa * u + qb) * u + qc)).powi(2)
        })
        .sum();
    fit.r_squared = if ss_tot > 0.0 {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    } else {
        1.0
    };
    Ok(fit)
}

/// Gaussian elimination with partial pivoting.
#[allow(clippy::needless_range_loop)]
fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..3 {
            let f = a[row][col] / a[col][col];
            for k in col..3 {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let tail: f64 = (row + 1..3).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    Some(x)
}

/// A fitted average curve of one constraint (and streak limit).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveFit {
    pub constraint: Constraint,
    pub k: Option<usize>,
    #[serde(flatten)]
    pub coefficients: FitCoefficients,
}

/// Identifies one curve of a sweep.
pub type CurveKey = (Constraint, Option<usize>);

/// Groups records into curves, in order of first appearance.
pub fn curves(records: &[SweepRecord]) -> Vec<(CurveKey, Vec<(usize, f64)>)> {
    let mut index: HashMap<CurveKey, usize> = HashMap::new();
    let mut out: Vec<(CurveKey, Vec<(usize, f64)>)> = Vec::new();
    for r in records {
        let key = (r.constraint, r.k);
        let slot = *index.entry(key).or_insert_with(|| {
            out.push((key, Vec::new()));
            out.len() - 1
        });
        out[slot].1.push((r.n_teams, r.avg));
    }
    out
}

/// Fits the average curve of one `(constraint, k)` key.
pub fn fit_curve(records: &[SweepRecord], key: CurveKey) -> Result<CurveFit, AnalyticsError> {
    let points: Vec<(usize, f64)> = records
        .iter()
        .filter(|r| (r.constraint, r.k) == key)
        .map(|r| (r.n_teams, r.avg))
        .collect();
    Ok(CurveFit {
        constraint: key.0,
        k: key.1,
        coefficients: fit_quadratic(&points)?,
    })
}

/// Expected violation count of a rows-first random schedule.
///
/// * maxstreak: `n (2(n-1) - k) / 2^k`, or 0 once `k >= 2(n-1)`
/// * norepeat: `(2n - 3) n / (2(n-1))`
/// * drr: `2 n (n-1) (1 - 1/(2(n-1)))^(2(n-1))`
///
/// Each team's venue is an independent fair coin per round, any given pairing
/// recurs in the next round with probability `1/(n-1)`, and the appearances of
/// one ordered game are binomial with `p = 1/(2(n-1))`; the per-game count
/// `X - 1 + 2[X = 0]` has mean `2 (1-p)^(2(n-1))`.
pub fn expected_violations(n_teams: usize, constraint: Constraint, k: Option<usize>) -> Result<f64, AnalyticsError> {
    check_team_count(n_teams).map_err(|_| AnalyticsError::InvalidTeamCount(n_teams))?;
    let n = n_teams as f64;
    let season = rounds_for(n_teams);
    Ok(match constraint {
        Constraint::MaxStreak => {
            let k = k.ok_or(AnalyticsError::MissingStreakLimit)?;
            if k == 0 {
                return Err(AnalyticsError::ZeroStreakLimit);
            }
            if k >= season {
                0.0
            } else {
                n * (season - k) as f64 / 2f64.powi(k as i32)
            }
        }
        Constraint::NoRepeat => (2.0 * n - 3.0) * n / (2.0 * (n - 1.0)),
        Constraint::Drr => {
            let p = 1.0 / season as f64;
            2.0 * n * (n - 1.0) * (1.0 - p).powi(season as i32)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_quadratic() {
        let f = fit_quadratic(&[(4, 16.0), (6, 36.0), (8, 64.0), (10, 100.0)]).unwrap();
        assert!((f.a - 1.0).abs() < 1e-9);
        assert!(f.b.abs() < 1e-9);
        assert!(f.c.abs() < 1e-9);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exact_quadratic_negative_terms() {
        let pts: Vec<(usize, f64)> = (4..=50)
            .step_by(2)
            .map(|n| (n, 0.25 * (n * n) as f64 - 1.25 * n as f64 - 0.5))
            .collect();
        let f = fit_quadratic(&pts).unwrap();
        assert!((f.a - 0.25).abs() / 0.25 < 1e-9);
        assert!((f.b + 1.25).abs() / 1.25 < 1e-9);
        assert!((f.c + 0.5).abs() / 0.5 < 1e-9);
    }

    #[test]
    fn degenerate_fit() {
        assert_eq!(
            fit_quadratic(&[(4, 1.0), (4, 2.0), (6, 3.0), (6, 3.5)]),
            Err(AnalyticsError::DegenerateFit(2))
        );
        assert_eq!(fit_quadratic(&[]), Err(AnalyticsError::DegenerateFit(0)));
    }

    #[test]
    fn constant_data_fits_perfectly() {
        let f = fit_quadratic(&[(4, 2.0), (6, 2.0), (8, 2.0)]).unwrap();
        assert!(f.a.abs() < 1e-12 && f.b.abs() < 1e-12);
        assert!((f.c - 2.0).abs() < 1e-12);
        assert_eq!(f.r_squared, 1.0);
    }

    #[test]
    fn expectation_values() {
        assert_eq!(expected_violations(4, Constraint::MaxStreak, Some(3)).unwrap(), 1.5);
        assert!((expected_violations(4, Constraint::NoRepeat, None).unwrap() - 10.0 / 3.0).abs() < 1e-12);
        assert_eq!(expected_violations(4, Constraint::MaxStreak, Some(6)).unwrap(), 0.0);
        assert_eq!(expected_violations(4, Constraint::MaxStreak, Some(9)).unwrap(), 0.0);
        let drr = expected_violations(4, Constraint::Drr, None).unwrap();
        assert!((drr - 24.0 * (5.0f64 / 6.0).powi(6)).abs() < 1e-12);
        assert!((drr - 8.038).abs() < 1e-3);
        assert_eq!(
            expected_violations(4, Constraint::MaxStreak, None),
            Err(AnalyticsError::MissingStreakLimit)
        );
        assert_eq!(
            expected_violations(5, Constraint::Drr, None),
            Err(AnalyticsError::InvalidTeamCount(5))
        );
        assert!(matches!(
            "streaks".parse::<Constraint>(),
            Err(AnalyticsError::UnknownConstraint(_))
        ));
    }

    #[test]
    fn maxstreak_expectation_expands_to_power_of_two_family() {
        // n(2(n-1) - k)/2^k = 2^(1-k) n^2 - (2+k) 2^-k n
        for k in 1..=6usize {
            let pts: Vec<(usize, f64)> = (4..=50)
                .step_by(2)
                .filter(|&n| 2 * (n - 1) > k)
                .map(|n| (n, expected_violations(n, Constraint::MaxStreak, Some(k)).unwrap()))
                .collect();
            let f = fit_quadratic(&pts).unwrap();
            let a = 2f64.powi(1 - k as i32);
            let b = -((2 + k) as f64) / 2f64.powi(k as i32);
            assert!((f.a - a).abs() < 1e-9 * a, "k={k} A={}", f.a);
            assert!((f.b - b).abs() < 1e-8, "k={k} B={}", f.b);
            assert!(f.c.abs() < 1e-7, "k={k} C={}", f.c);
        }
    }

    #[test]
    fn count_stats_merge_matches_sequential() {
        let xs = [3u64, 9, 0, 4, 4, 12, 7];
        let mut all = CountStats::default();
        xs.iter().for_each(|&x| all.push(x));
        let mut left = CountStats::default();
        let mut right = CountStats::default();
        xs[..3].iter().for_each(|&x| left.push(x));
        xs[3..].iter().for_each(|&x| right.push(x));
        assert_eq!(right.merge(left), all);
        assert_eq!((all.min, all.max, all.sum), (0, 12, 39));
        let mean = 39.0 / 7.0;
        let var = xs.iter().map(|&x| (x as f64 - mean).powi(2)).sum::<f64>() / 6.0;
        assert!((all.std_dev() - var.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn small_sweep_shape_and_csv() {
        let cfg = SweepConfig {
            team_sizes: vec![4],
            samples_per_size: 100,
            k_values: vec![3],
            master_seed: 1,
        };
        let recs = run_sweep(&cfg).unwrap();
        assert_eq!(recs.len(), 3);
        let kinds: Vec<_> = recs.iter().map(|r| (r.constraint, r.k)).collect();
        assert_eq!(
            kinds,
            vec![
                (Constraint::Drr, None),
                (Constraint::NoRepeat, None),
                (Constraint::MaxStreak, Some(3))
            ]
        );
        for r in &recs {
            assert_eq!(r.samples, 100);
            assert!(r.min as f64 <= r.avg && r.avg <= r.max as f64);
        }
        let csv = sweep_csv(&recs);
        assert!(csv.starts_with("n_teams,constraint,k,samples,min,avg,max\n4,drr,,100,"));
        let parsed = parse_sweep_csv(&csv).unwrap();
        assert_eq!(parsed.len(), 3);
        for (a, b) in parsed.iter().zip(&recs) {
            assert_eq!(
                (a.n_teams, a.constraint, a.k, a.samples, a.min, a.max),
                (b.n_teams, b.constraint, b.k, b.samples, b.min, b.max)
            );
            assert_eq!(a.avg, b.avg);
        }
    }

    #[test]
    fn sweep_rejects_bad_config() {
        let mut cfg = SweepConfig::default();
        cfg.team_sizes.push(7);
        assert_eq!(run_sweep(&cfg), Err(AnalyticsError::InvalidTeamCount(7)));
        let cfg = SweepConfig {
            k_values: vec![0],
            ..SweepConfig::default()
        };
        assert_eq!(cfg.validate(), Err(AnalyticsError::ZeroStreakLimit));
        let cfg = SweepConfig {
            samples_per_size: 0,
            ..SweepConfig::default()
        };
        assert_eq!(cfg.validate(), Err(AnalyticsError::NoSamples));
        assert_eq!(SweepConfig::default().record_count(), 192);
    }

    #[test]
    fn csv_errors_carry_line_numbers() {
        let bad = "n_teams,constraint,k,samples,min,avg,max\n4,drr,,10,1,2.5,4\n4,maxstreak,,10,1,2,3\n";
        assert!(matches!(parse_sweep_csv(bad), Err(AnalyticsError::Csv { line: 3, .. })));
        assert!(matches!(
            parse_sweep_csv("a,b\n"),
            Err(AnalyticsError::Csv { line: 1, .. })
        ));
        assert!(matches!(parse_sweep_csv(""), Err(AnalyticsError::Csv { .. })));
    }

    #[test]
    fn curve_grouping_and_fit_json() {
        let recs: Vec<SweepRecord> = [4usize, 6, 8]
            .iter()
            .flat_map(|&n| {
                [
                    SweepRecord {
                        n_teams: n,
                        constraint: Constraint::Drr,
                        k: None,
                        samples: 1,
                        min: 0,
                        avg: (n * n) as f64,
                        max: 0,
                        std_dev: None,
                    },
                    SweepRecord {
                        n_teams: n,
                        constraint: Constraint::MaxStreak,
                        k: Some(2),
                        samples: 1,
                        min: 0,
                        avg: n as f64,
                        max: 0,
                        std_dev: None,
                    },
                ]
            })
            .collect();
        let cs = curves(&recs);
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0].0, (Constraint::Drr, None));
        let fit = fit_curve(&recs, (Constraint::MaxStreak, Some(2))).unwrap();
        let v: serde_json::Value = serde_json::to_value(&fit).unwrap();
        assert_eq!(v["constraint"], "maxstreak");
        assert_eq!(v["k"], 2);
        assert!((v["B"].as_f64().unwrap() - 1.0).abs() < 1e-9);
        assert!(v["A"].as_f64().unwrap().abs() < 1e-9);
        let drr = serde_json::to_value(fit_curve(&recs, (Constraint::Drr, None)).unwrap()).unwrap();
        assert!(drr["k"].is_null());
    }
}
