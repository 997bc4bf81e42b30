//! Exhaustive searches over rule space: counts of maximum-cycle-length
//! rules, extremal X/Y tables over all n-state rules, extremal tables
//! restricted to additive rules, and the scan comparing brute-force
//! additive periods against their recursive upper bound.

use rayon::prelude::*;

use crate::additive::{pi_brute, ub};
use crate::engine::{cycle_census, extremal_from_census, step, Orientation, RingConfig, RuleTable};
use crate::error::{Error, Result};
use crate::numtheory::{aperiodic_count, factorize};

/// Number of rules on n states: n^(n^2), or None when it overflows u128.
pub fn rule_count(n: u64) -> Option<u128> {
    (n as u128).checked_pow((n * n) as u32)
}

/// The rule whose table digits spell `code` in base n, least significant
/// digit at table index 0. Enumerating codes 0..n^(n^2) visits every rule
/// exactly once.
pub fn rule_from_code(code: u128, n: u64) -> RuleTable {
    let mut digits = Vec::with_capacity((n * n) as usize);
    let mut c = code;
    for _ in 0..n * n {
        digits.push((c % n as u128) as u64);
        c /= n as u128;
    }
    RuleTable::new(n, Orientation::Left, digits).unwrap()
}

/// True iff the rule's longest aperiodic cycle passes through every
/// aperiodic word, i.e. X equals the aperiodic word count T. Such a cycle
/// must visit the fixed seed 1 0...0, so it suffices to follow that one
/// orbit: the rule qualifies exactly when the first return to the seed
/// happens at step T. The walk aborts as soon as the spatial period
/// drops, since it can never grow back.
pub fn is_mcl_rule(rule: &RuleTable, sigma: usize) -> Result<bool> {
    let t = aperiodic_count(sigma as u64, rule.n)?;
    let mut seed_word = vec![0; sigma];
    seed_word[0] = 1;
    let seed = RingConfig::new(seed_word);
    let mut c = seed.clone();
    for step_no in 1..=t {
        c = step(rule, &c)?;
        if c == seed {
            return Ok(step_no == t);
        }
        if c.spatial_period() < sigma {
            return Ok(false);
        }
    }
    Ok(false)
}

const CHECKPOINT_BLOCK: u128 = 1 << 24;

/// Counts rules with X = T(sigma, n) by scanning all n^(n^2) rules.
/// When `checkpoint` names a file, the scan position and running count
/// are saved there after every block of 2^24 rules and restored on
/// restart.
pub fn mcl_count(
    sigma: usize,
    n: u64,
    budget: u128,
    checkpoint: Option<&std::path::Path>,
) -> Result<(u64, u128)> {
    let total = rule_count(n).ok_or(Error::Overflow("rule count"))?;
    if total > budget {
        return Err(Error::BudgetExceeded {
            needed: total,
            budget,
        });
    }
    let (mut next, mut count) = match &checkpoint {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => {
                let state: serde_json::Value = serde_json::from_str(&text)?;
                (
                    state["next"].as_u64().unwrap_or(0) as u128,
                    state["count"].as_u64().unwrap_or(0),
                )
            }
            Err(_) => (0, 0),
        },
        None => (0, 0),
    };
    while next < total {
        let end = total.min(next + CHECKPOINT_BLOCK);
        count += (next..end)
            .into_par_iter()
            .map(|code| is_mcl_rule(&rule_from_code(code, n), sigma).map(u64::from))
            .try_reduce(|| 0, |a, b| Ok(a + b))?;
        next = end;
        if let Some(path) = &checkpoint {
            std::fs::write(
                path,
                serde_json::json!({"next": next as u64, "count": count}).to_string(),
            )?;
        }
    }
    Ok((count, total))
}

/// One row of the all-rules extremal table; skipped rows name the reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalRow {
    pub sigma: usize,
    pub n: u64,
    pub result: std::result::Result<ExtremalValues, String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtremalValues {
    pub max_x: u64,
    pub count_x: u64,
    pub max_y: u64,
    pub count_y: u64,
    pub total: u64,
}

/// max X, max Y and attainment counts over all n-state rules, one row per
/// sigma. Rules with no aperiodic cycle contribute to neither maximum.
pub fn extremal_table(n: u64, sigmas: &[usize], budget: u128) -> Result<Vec<ExtremalRow>> {
    let rules = rule_count(n).ok_or(Error::Overflow("rule count"))?;
    let mut rows = Vec::new();
    for &sigma in sigmas {
        let needed = rules.saturating_mul((n as u128).pow(sigma as u32));
        if needed > budget {
            rows.push(ExtremalRow {
                sigma,
                n,
                result: Err(format!("skipped-budget: {needed} > {budget}")),
            });
            continue;
        }
        // (max, count) pairs merge by keeping the larger max
        let merge = |a: (u64, u64), b: (u64, u64)| match a.0.cmp(&b.0) {
            std::cmp::Ordering::Less => b,
            std::cmp::Ordering::Greater => a,
            std::cmp::Ordering::Equal => (a.0, a.1 + b.1),
        };
        let (x, y) = (0..rules)
            .into_par_iter()
            .map(|code| {
                let census = cycle_census(&rule_from_code(code, n), sigma, budget)?;
                let xy = extremal_from_census(&census);
                debug_assert!(xy.y.unwrap_or(0) <= xy.x.unwrap_or(0));
                Ok::<_, Error>((
                    xy.x.map_or((0, 0), |v| (v, 1)),
                    xy.y.map_or((0, 0), |v| (v, 1)),
                ))
            })
            .try_reduce(
                || ((0, 0), (0, 0)),
                |a, b| Ok((merge(a.0, b.0), merge(a.1, b.1))),
            )?;
        rows.push(ExtremalRow {
            sigma,
            n,
            result: Ok(ExtremalValues {
                max_x: x.0,
                count_x: x.1,
                max_y: y.0,
                count_y: y.1,
                total: aperiodic_count(sigma as u64, n)? as u64,
            }),
        });
    }
    Ok(rows)
}

pub fn extremal_table_csv(rows: &[ExtremalRow]) -> String {
    let mut out = String::from("sigma,maxX,N_X,maxY,N_Y,T\n");
    for row in rows {
        match &row.result {
            Ok(v) => out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                row.sigma, v.max_x, v.count_x, v.max_y, v.count_y, v.total
            )),
            Err(reason) => out.push_str(&format!("{},{reason},,,,\n", row.sigma)),
        }
    }
    out
}

/// rho (max over additive rules of the shortest aperiodic period Y) and
/// pi (max eventual period of the defining polynomial) for one n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdditiveRow {
    pub sigma: usize,
    pub n: u64,
    pub rho: u64,
    pub pi: u64,
}

pub fn additive_extremal_table(
    sigma: usize,
    n_range: impl Iterator<Item = u64>,
    budget: u128,
) -> Result<Vec<AdditiveRow>> {
    n_range
        .map(|n| {
            let rho = (0..n * n)
                .into_par_iter()
                .map(|code| {
                    let rule = RuleTable::additive(n, code % n, code / n);
                    let census = cycle_census(&rule, sigma, budget)?;
                    Ok::<_, Error>(extremal_from_census(&census).y.unwrap_or(0))
                })
                .try_reduce(|| 0, |a: u64, b| Ok(a.max(b)))?;
            let (pi, _) = pi_brute(sigma, n);
            Ok(AdditiveRow { sigma, n, rho, pi })
        })
        .collect()
}

pub fn additive_table_csv(rows2: &[AdditiveRow], rows3: &[AdditiveRow]) -> String {
    assert_eq!(rows2.len(), rows3.len());
    let mut out = String::from("n,rho_2,pi_2,rho_3,pi_3\n");
    for (a, b) in rows2.iter().zip(rows3) {
        assert_eq!(a.n, b.n);
        out.push_str(&format!("{},{},{},{},{}\n", a.n, a.rho, a.pi, b.rho, b.pi));
    }
    out
}

/// A prime power where the brute-force additive period falls short of
/// the recursive upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiscrepancyRow {
    pub sigma: u64,
    pub p: u64,
    pub m: u32,
    pub pi: u64,
    pub ub: u64,
}

/// For each (sigma, p) pair, scans prime powers p^m <= max_n in
/// ascending m, reporting every instance with pi < ub. The bound is
/// p * pi(p^(m-1)) for m >= 2 and grows with m, so the walk stops at the
/// first bound above `ub_cap` (brute force would be too long past it).
pub fn pi_ub_scan(pairs: &[(u64, u64)], max_n: u64, ub_cap: u64) -> Result<Vec<DiscrepancyRow>> {
    let mut rows = Vec::new();
    for &(sigma, p) in pairs {
        debug_assert_eq!(factorize(p).factors, [(p, 1)]);
        let mut pi_prev: Option<u64> = None;
        let mut m = 1u32;
        while p.checked_pow(m).is_some_and(|n| n <= max_n) {
            let n = p.pow(m);
            let bound = match pi_prev {
                None => ub(sigma as usize, p, 1)?,
                Some(prev) => p.checked_mul(prev).ok_or(Error::Overflow("ub"))?,
            };
            if bound > ub_cap {
                break;
            }
            let (pi, _) = pi_brute(sigma as usize, n);
            assert!(pi <= bound, "sigma={sigma} n={n}: pi={pi} > ub={bound}");
            if pi < bound {
                rows.push(DiscrepancyRow {
                    sigma,
                    p,
                    m,
                    pi,
                    ub: bound,
                });
            }
            pi_prev = Some(pi);
            m += 1;
        }
    }
    Ok(rows)
}

pub fn discrepancy_csv(rows: &[DiscrepancyRow]) -> String {
    let mut out = String::from("sigma,p,m,pi,ub\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{},{}\n", r.sigma, r.p, r.m, r.pi, r.ub));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::DEFAULT_BUDGET;

    #[test]
    fn rule_enumeration_round_trip() {
        let n = 3;
        let rule = rule_from_code(12345, n);
        let code: u128 = rule
            .table
            .iter()
            .rev()
            .fold(0u128, |acc, &d| acc * n as u128 + d as u128);
        assert_eq!(code, 12345);
        assert_eq!(rule_count(3), Some(19683));
        assert_eq!(rule_count(2), Some(16));
    }

    #[test]
    fn mcl_counts_small() {
        assert_eq!(mcl_count(3, 2, DEFAULT_BUDGET, None).unwrap(), (1, 16));
        assert_eq!(mcl_count(3, 3, DEFAULT_BUDGET, None).unwrap(), (12, 19683));
        assert!(matches!(
            mcl_count(3, 4, DEFAULT_BUDGET, None),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn mcl_counts_match_scaled_euler_numbers() {
        for n in [2u64, 3] {
            let (count, _) = mcl_count(3, n, DEFAULT_BUDGET, None).unwrap();
            let expected = crate::numtheory::euler_sequence((n - 2) as u32);
            assert_eq!(num::BigInt::from(count), expected);
        }
    }

    #[test]
    fn mcl_checkpoint_resumes() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.json");
        // a partial scan state: 2 rules done, none qualified yet
        std::fs::write(&path, r#"{"next": 2, "count": 0}"#).unwrap();
        let resumed = mcl_count(3, 2, DEFAULT_BUDGET, Some(&path));
        // the single qualifying rule for n=2 has code >= 2, so the
        // resumed count still finds it
        assert_eq!(resumed.unwrap().0, 1);
        let state: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(state["next"], 16);
    }

    #[test]
    fn extremal_rows_small_sigma() {
        let rows = extremal_table(3, &[1, 2, 3, 4], DEFAULT_BUDGET).unwrap();
        let expect = [
            (1, 3, 1458, 3, 1458, 3),
            (2, 6, 216, 6, 216, 6),
            (3, 24, 12, 24, 12, 24),
            (4, 40, 12, 32, 72, 72),
        ];
        for (row, e) in rows.iter().zip(expect) {
            let v = row.result.as_ref().unwrap();
            assert_eq!(
                (row.sigma, v.max_x, v.count_x, v.max_y, v.count_y, v.total),
                e
            );
        }
    }

    #[test]
    fn extremal_budget_row_is_skipped() {
        let rows = extremal_table(3, &[2], 100).unwrap();
        assert!(rows[0]
            .result
            .as_ref()
            .unwrap_err()
            .starts_with("skipped-budget"));
    }

    #[test]
    fn additive_rows_examples() {
        let rows = additive_extremal_table(2, [8, 11].into_iter(), DEFAULT_BUDGET).unwrap();
        assert_eq!(
            rows[0],
            AdditiveRow {
                sigma: 2,
                n: 8,
                rho: 2,
                pi: 4
            }
        );
        assert_eq!(
            rows[1],
            AdditiveRow {
                sigma: 2,
                n: 11,
                rho: 10,
                pi: 10
            }
        );
        let rows = additive_extremal_table(3, [11, 16].into_iter(), DEFAULT_BUDGET).unwrap();
        assert_eq!(
            rows[0],
            AdditiveRow {
                sigma: 3,
                n: 11,
                rho: 120,
                pi: 120
            }
        );
        assert_eq!(
            rows[1],
            AdditiveRow {
                sigma: 3,
                n: 16,
                rho: 3,
                pi: 24
            }
        );
    }

    #[test]
    fn scan_finds_known_discrepancies_and_no_others() {
        let rows = pi_ub_scan(&[(3, 2), (3, 3), (3, 5), (7, 3)], 27, 1000).unwrap();
        assert_eq!(
            rows,
            vec![DiscrepancyRow {
                sigma: 7,
                p: 3,
                m: 1,
                pi: 364,
                ub: 728
            }]
        );
    }

    #[test]
    fn csv_shapes() {
        let rows = extremal_table(3, &[1], DEFAULT_BUDGET).unwrap();
        assert_eq!(
            extremal_table_csv(&rows),
            "sigma,maxX,N_X,maxY,N_Y,T\n1,3,1458,3,1458,3\n"
        );
        let csv = discrepancy_csv(&[DiscrepancyRow {
            sigma: 7,
            p: 3,
            m: 1,
            pi: 364,
            ub: 728,
        }]);
        assert_eq!(csv, "sigma,p,m,pi,ub\n7,3,1,364,728\n");
    }
}
