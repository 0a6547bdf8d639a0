//! Test-only reference implementations, kept independent of the library's
//! counting, generation and search paths.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;

/// Schedule as plain `(home, away)` pairs per round.
pub type Plain = Vec<Vec<(usize, usize)>>;

/// Every oriented perfect matching of `0..n`, via permutations paired off
/// consecutively and deduplicated by matchup set.
pub fn oriented_matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn perms(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == items.len() {
            out.push(items.clone());
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            perms(items, k + 1, out);
            items.swap(k, i);
        }
    }
    let mut all = Vec::new();
    perms(&mut (0..n).collect(), 0, &mut all);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for p in all {
        let mut round: Vec<(usize, usize)> = p.chunks(2).map(|c| (c[0], c[1])).collect();
        round.sort();
        if seen.insert(round.clone()) {
            out.push(round);
        }
    }
    out
}

/// Missing plus surplus ordered games, via a hash map.
pub fn naive_drr(s: &Plain, n: usize) -> u64 {
    let mut counts: HashMap<(usize, usize), u64> = HashMap::new();
    for g in s.iter().flatten() {
        *counts.entry(*g).or_default() += 1;
    }
    let mut v = 0;
    for a in 0..n {
        for b in 0..n {
            if a != b {
                let c = counts.get(&(a, b)).copied().unwrap_or(0);
                v += if c == 0 { 1 } else { c - 1 };
            }
        }
    }
    v
}

/// Window formula: positions i >= k whose k+1 trailing symbols are equal.
pub fn naive_streak(s: &Plain, n: usize, k: usize) -> u64 {
    let mut total = 0;
    for t in 0..n {
        let v: Vec<bool> = s.iter().map(|r| r.iter().any(|&(h, _)| h == t)).collect();
        for i in k..v.len() {
            if v[i - k..=i].iter().all(|&x| x == v[i]) {
                total += 1;
            }
        }
    }
    total
}

pub fn naive_norepeat(s: &Plain) -> u64 {
    let norm =
        |r: &Vec<(usize, usize)>| -> HashSet<(usize, usize)> { r.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect() };
    s.windows(2)
        .map(|w| norm(&w[0]).intersection(&norm(&w[1])).count() as u64)
        .sum()
}

pub fn naive_valid(s: &Plain, n: usize, k: usize) -> bool {
    naive_drr(s, n) == 0 && naive_streak(s, n, k) == 0 && naive_norepeat(s) == 0
}

/// Rows-first schedule drawn from an arbitrary rng.
pub fn naive_random(n: usize, rng: &mut impl Rng) -> Plain {
    (0..2 * (n - 1))
        .map(|_| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(rng);
            p.chunks(2).map(|c| (c[0], c[1])).collect()
        })
        .collect()
}

/// Order-insensitive form of a schedule: each round's matchups sorted.
pub fn canonical(s: &Plain) -> Plain {
    s.iter()
        .map(|r| {
            let mut r = r.clone();
            r.sort();
            r
        })
        .collect()
}

pub fn to_plain(s: &ttp_validity::Schedule) -> Plain {
    s.rounds()
        .iter()
        .map(|r| r.matchups().iter().map(|m| (m.home.0, m.away.0)).collect())
        .collect()
}

/// Brute-force filter: every tournament with the fixed first round
/// `[(0,1),(2,3)]` and arbitrary oriented matchings elsewhere, kept if valid.
pub fn brute_force_valid_n4(k: usize) -> Vec<Plain> {
    let ms = oriented_matchings(4);
    assert_eq!(ms.len(), 12);
    let first = vec![(0, 1), (2, 3)];
    let mut out = Vec::new();
    let mut idx = [0usize; 5];
    loop {
        let mut s = vec![first.clone()];
        s.extend(idx.iter().map(|&i| ms[i].clone()));
        if naive_valid(&s, 4, k) {
            out.push(canonical(&s));
        }
        // odometer
        let mut d = 0;
        loop {
            if d == 5 {
                return out;
            }
            idx[d] += 1;
            if idx[d] < 12 {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}

/// One line per criterion; sub-checks are listed beneath it.
pub struct Criterion {
    name: &'static str,
    checks: Vec<(bool, String)>,
}

impl Criterion {
    pub fn new(name: &'static str) -> Self {
        Criterion {
            name,
            checks: Vec::new(),
        }
    }

    pub fn check(&mut self, ok: bool, detail: impl Into<String>) {
        self.checks.push((ok, detail.into()));
    }

    /// Prints the verdict and panics if any sub-check failed.
    pub fn finish(self) {
        let ok = self.checks.iter().all(|c| c.0);
        println!("[{}] {}", if ok { "PASS" } else { "FAIL" }, self.name);
        for (pass, d) in &self.checks {
            println!("    {} {}", if *pass { "ok  " } else { "FAIL" }, d);
        }
        let failed: Vec<&String> = self.checks.iter().filter(|c| !c.0).map(|c| &c.1).collect();
        assert!(failed.is_empty(), "{}: failed checks: {:?}", self.name, failed);
    }
}
