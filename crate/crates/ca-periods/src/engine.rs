//! General rule evaluation on a sigma-ring and exact cycle census of the
//! configuration functional graph, from which the extremal temporal
//! periods X and Y are read off.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u128 = 1 << 31;

/// Node-visit budget for censuses; the CA_PERIODS_BUDGET environment
/// variable overrides the default.
pub fn budget_from_env() -> u128 {
    std::env::var("CA_PERIODS_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// xi_(t+1)(x) = f(xi_t(x - 1), xi_t(x))
    Left,
    /// xi_(t+1)(x) = f(xi_t(x), xi_t(x + 1))
    Right,
}

/// Explicit lookup table of an n-state two-neighbor rule; entry at index
/// c0 * n + c1 is f(c0, c1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleTable {
    pub n: u64,
    pub orientation: Orientation,
    pub table: Vec<u64>,
}

impl RuleTable {
    pub fn new(n: u64, orientation: Orientation, table: Vec<u64>) -> Result<Self> {
        if table.len() as u64 != n * n {
            return Err(Error::InvalidRule(format!(
                "table length {} != n^2 = {}",
                table.len(),
                n * n
            )));
        }
        if let Some(&bad) = table.iter().find(|&&e| e >= n) {
            return Err(Error::InvalidRule(format!(
                "entry {bad} out of range for n = {n}"
            )));
        }
        Ok(RuleTable {
            n,
            orientation,
            table,
        })
    }

    /// Builds f from a closure over (c0, c1).
    pub fn from_fn(n: u64, orientation: Orientation, f: impl Fn(u64, u64) -> u64) -> Result<Self> {
        let f = &f;
        let table = (0..n)
            .flat_map(|c0| (0..n).map(move |c1| f(c0, c1)))
            .collect();
        RuleTable::new(n, orientation, table)
    }

    /// The n-state additive rule f(c0, c1) = b*c0 + a*c1, left oriented.
    pub fn additive(n: u64, a: u64, b: u64) -> Self {
        RuleTable::from_fn(n, Orientation::Left, |c0, c1| (b * c0 + a * c1) % n).unwrap()
    }

    #[inline]
    pub fn apply(&self, c0: u64, c1: u64) -> u64 {
        self.table[(c0 * self.n + c1) as usize]
    }

    /// Vertical reflection: flips orientation and swaps the arguments.
    /// An involution; the census multiset is invariant under it.
    pub fn mirror(&self) -> RuleTable {
        let flipped = match self.orientation {
            Orientation::Left => Orientation::Right,
            Orientation::Right => Orientation::Left,
        };
        RuleTable::from_fn(self.n, flipped, |c0, c1| self.apply(c1, c0)).unwrap()
    }
}

/// A word of sigma states on the periodic ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingConfig {
    pub word: Vec<u64>,
}

impl RingConfig {
    pub fn new(word: Vec<u64>) -> Self {
        assert!(!word.is_empty());
        RingConfig { word }
    }

    pub fn sigma(&self) -> usize {
        self.word.len()
    }

    pub fn index(&self, n: u64) -> u64 {
        self.word.iter().rev().fold(0, |acc, &c| acc * n + c)
    }

    pub fn from_index(mut idx: u64, n: u64, sigma: usize) -> Self {
        let mut word = Vec::with_capacity(sigma);
        for _ in 0..sigma {
            word.push(idx % n);
            idx /= n;
        }
        RingConfig { word }
    }

    /// Smallest divisor d of sigma with rotation-by-d invariance.
    pub fn spatial_period(&self) -> usize {
        let sigma = self.sigma();
        for d in crate::numtheory::divisors(sigma as u64) {
            let d = d as usize;
            if (0..sigma).all(|i| self.word[i] == self.word[(i + d) % sigma]) {
                return d;
            }
        }
        unreachable!()
    }
}

/// One synchronous update honoring the orientation flag.
pub fn step(rule: &RuleTable, c: &RingConfig) -> Result<RingConfig> {
    if let Some(&bad) = c.word.iter().find(|&&s| s >= rule.n) {
        return Err(Error::AlphabetMismatch {
            state: bad,
            n: rule.n,
        });
    }
    let sigma = c.sigma();
    let word = (0..sigma)
        .map(|x| match rule.orientation {
            Orientation::Left => rule.apply(c.word[(x + sigma - 1) % sigma], c.word[x]),
            Orientation::Right => rule.apply(c.word[x], c.word[(x + 1) % sigma]),
        })
        .collect();
    Ok(RingConfig { word })
}

/// One group of cycles sharing a (length, spatial period) signature.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleRecord {
    pub length: u64,
    pub spatial_period: usize,
    pub representative: RingConfig,
    pub count: u64,
}

/// All cycles of the configuration functional graph, grouped by
/// (length, spatial period).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCensus {
    pub sigma: usize,
    pub n: u64,
    pub cycles: Vec<CycleRecord>,
    /// Configurations not on any cycle.
    pub transient: u64,
}

impl CycleCensus {
    /// Total configurations accounted for; always n^sigma.
    pub fn total(&self) -> u128 {
        self.transient as u128
            + self
                .cycles
                .iter()
                .map(|c| c.length as u128 * c.count as u128)
                .sum::<u128>()
    }
}

/// Largest / smallest temporal period among cycles of exact spatial
/// period sigma; absent when no such cycle exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalPeriods {
    #[serde(rename = "X")]
    pub x: Option<u64>,
    #[serde(rename = "Y")]
    pub y: Option<u64>,
}

/// Exact census by an iterative three-color walk over index-encoded
/// configurations; every node is visited a bounded number of times and
/// cycle lengths are exact.
pub fn cycle_census(rule: &RuleTable, sigma: usize, budget: u128) -> Result<CycleCensus> {
    let n = rule.n;
    let total = (n as u128)
        .checked_pow(sigma as u32)
        .filter(|&t| t <= budget && t <= usize::MAX as u128)
        .ok_or(Error::BudgetExceeded {
            needed: (n as f64).powi(sigma as i32) as u128,
            budget,
        })?;
    let total = total as usize;

    let next = |idx: u64| -> u64 {
        let c = RingConfig::from_index(idx, n, sigma);
        step(rule, &c).unwrap().index(n)
    };

    // 0 = unvisited, 1 = on current path, 2 = finished
    let mut mark = vec![0u8; total];
    let mut on_cycle = vec![false; total];
    let mut groups: std::collections::BTreeMap<(u64, usize), (u64, RingConfig)> =
        std::collections::BTreeMap::new();
    let mut cycle_nodes = 0u64;
    let mut path: Vec<u64> = Vec::new();

    for start in 0..total as u64 {
        if mark[start as usize] != 0 {
            continue;
        }
        path.clear();
        let mut x = start;
        while mark[x as usize] == 0 {
            mark[x as usize] = 1;
            path.push(x);
            x = next(x);
        }
        if mark[x as usize] == 1 {
            // closed a new cycle at x; measure it
            let pos = path.iter().position(|&y| y == x).unwrap();
            let cycle = &path[pos..];
            let length = cycle.len() as u64;
            let rep = RingConfig::from_index(cycle[0], n, sigma);
            let sp = rep.spatial_period();
            // spatial period is constant along a cycle
            debug_assert!(cycle
                .iter()
                .all(|&y| RingConfig::from_index(y, n, sigma).spatial_period() == sp));
            for &y in cycle {
                on_cycle[y as usize] = true;
            }
            cycle_nodes += length;
            groups
                .entry((length, sp))
                .and_modify(|(count, _)| *count += 1)
                .or_insert((1, rep));
        }
        for &y in &path {
            mark[y as usize] = 2;
        }
    }

    let cycles = groups
        .into_iter()
        .map(
            |((length, spatial_period), (count, representative))| CycleRecord {
                length,
                spatial_period,
                representative,
                count,
            },
        )
        .collect();
    Ok(CycleCensus {
        sigma,
        n,
        cycles,
        transient: total as u64 - cycle_nodes,
    })
}

/// X and Y over census cycles whose spatial period equals sigma exactly.
pub fn extremal_periods(rule: &RuleTable, sigma: usize, budget: u128) -> Result<ExtremalPeriods> {
    Ok(extremal_from_census(&cycle_census(rule, sigma, budget)?))
}

pub fn extremal_from_census(census: &CycleCensus) -> ExtremalPeriods {
    let exact: Vec<u64> = census
        .cycles
        .iter()
        .filter(|c| c.spatial_period == census.sigma)
        .map(|c| c.length)
        .collect();
    ExtremalPeriods {
        x: exact.iter().max().copied(),
        y: exact.iter().min().copied(),
    }
}
