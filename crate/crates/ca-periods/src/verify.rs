//! Self-check suites: each check exercises an identity or invariant that
//! ties two independent code paths together (closed form vs brute force,
//! algebra vs simulation). The CLI `verify` subcommand runs these and the
//! acceptance tests reuse them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::additive::{additive_period, explicit_power, pi_brute, pi_formula, AdditiveRule};
use crate::engine::{cycle_census, step, Orientation, RingConfig, RuleTable};
use crate::error::Result;
use crate::modular::{exponent_brute, lambda_formula, unity_root_census, Ring};
use crate::numtheory::{gcd, lcm};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Quick,
    Full,
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &'static str, run: impl FnOnce() -> Result<Option<String>>) -> CheckResult {
    match run() {
        Ok(None) => CheckResult {
            name,
            pass: true,
            detail: String::from("ok"),
        },
        Ok(Some(detail)) => CheckResult {
            name,
            pass: false,
            detail,
        },
        Err(e) => CheckResult {
            name,
            pass: false,
            detail: e.to_string(),
        },
    }
}

fn random_rule(rng: &mut ChaCha8Rng, n: u64) -> RuleTable {
    let table = (0..n * n).map(|_| rng.gen_range(0..n)).collect();
    RuleTable::new(n, Orientation::Left, table).unwrap()
}

fn shift_equivariance() -> Result<Option<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let n = rng.gen_range(2..=5);
        let sigma = rng.gen_range(2..=8usize);
        let rule = random_rule(&mut rng, n);
        let word: Vec<u64> = (0..sigma).map(|_| rng.gen_range(0..n)).collect();
        let c = RingConfig::new(word);
        let stepped = step(&rule, &c)?;
        for d in 1..sigma {
            let rot = |v: &RingConfig| {
                RingConfig::new((0..sigma).map(|i| v.word[(i + d) % sigma]).collect())
            };
            if step(&rule, &rot(&c))? != rot(&stepped) {
                return Ok(Some(format!("rotation by {d} not equivariant for n={n}")));
            }
        }
    }
    Ok(None)
}

fn spatial_period_divides() -> Result<Option<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let n = rng.gen_range(2..=4);
        let sigma = rng.gen_range(2..=10usize);
        let rule = random_rule(&mut rng, n);
        let c = RingConfig::new((0..sigma).map(|_| rng.gen_range(0..n)).collect());
        let s = step(&rule, &c)?;
        if !c.spatial_period().is_multiple_of(s.spatial_period()) {
            return Ok(Some(format!(
                "spatial period {} -> {} (not a divisor)",
                c.spatial_period(),
                s.spatial_period()
            )));
        }
    }
    Ok(None)
}

fn census_conservation(budget: u128) -> Result<Option<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let n = rng.gen_range(2..=4);
        let sigma = rng.gen_range(1..=6usize);
        let census = cycle_census(&random_rule(&mut rng, n), sigma, budget)?;
        if census.total() != (n as u128).pow(sigma as u32) {
            return Ok(Some(format!(
                "census total {} != {n}^{sigma}",
                census.total()
            )));
        }
    }
    Ok(None)
}

fn lambda_matches_brute(sigma: u64, max_n: u64) -> Result<Option<String>> {
    let ring = match sigma {
        2 => Ring::Integers,
        3 => Ring::Eisenstein,
        4 => Ring::Gaussian,
        _ => unreachable!(),
    };
    for n in 2..=max_n {
        let brute = exponent_brute(ring, n).value;
        let formula = lambda_formula(sigma, n)?;
        if brute != formula {
            return Ok(Some(format!(
                "sigma={sigma} n={n}: brute {brute} != formula {formula}"
            )));
        }
    }
    Ok(None)
}

fn explicit_power_matches_iteration(cases: u32) -> Result<Option<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for sigma in [2usize, 3, 4, 6] {
        for _ in 0..cases {
            let n = rng.gen_range(2..=9);
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            let t = rng.gen_range(0..=12u64);
            let rule = AdditiveRule::new(n, sigma, a, b);
            let mut iterated = crate::additive::QuotientPoly::one(n, sigma);
            for _ in 0..t {
                iterated = crate::additive::poly_mul(&iterated, &rule.poly())?;
            }
            let closed = explicit_power(sigma, n, a, b, t)?;
            if closed != iterated {
                return Ok(Some(format!("sigma={sigma} n={n} a={a} b={b} t={t}")));
            }
        }
    }
    Ok(None)
}

fn pi_formula_matches_brute(ranges: &[(usize, u64)]) -> Result<Option<String>> {
    for &(sigma, max_n) in ranges {
        for n in 2..=max_n {
            let (brute, witness) = pi_brute(sigma, n);
            let formula = pi_formula(sigma, n)?;
            if brute != formula {
                return Ok(Some(format!(
                    "sigma={sigma} n={n}: brute {brute} (witness {witness:?}) != formula {formula}"
                )));
            }
        }
    }
    Ok(None)
}

fn crt_lcm_property() -> Result<Option<String>> {
    for sigma in [2usize, 3] {
        for n1 in 2..=6u64 {
            for n2 in 2..=6u64 {
                if gcd(n1, n2) != 1 {
                    continue;
                }
                let whole = pi_brute(sigma, n1 * n2).0;
                let parts = lcm(pi_brute(sigma, n1).0, pi_brute(sigma, n2).0);
                if whole != parts {
                    return Ok(Some(format!(
                        "sigma={sigma}: pi({n1}*{n2}) = {whole} != lcm = {parts}"
                    )));
                }
            }
        }
    }
    Ok(None)
}

fn pi_upper_bound() -> Result<Option<String>> {
    for (sigma, max_n) in [(2usize, 16u64), (3, 12), (4, 8)] {
        for n in 2..=max_n {
            let pi = pi_brute(sigma, n).0;
            if (pi as u128) > (n as u128).pow(sigma as u32 - 1) {
                return Ok(Some(format!("pi_{sigma}({n}) = {pi} > n^(sigma-1)")));
            }
        }
    }
    Ok(None)
}

fn eisenstein_unity_census() -> Result<Option<String>> {
    for m in [3u32, 4, 5] {
        let count = unity_root_census(Ring::Eisenstein, 2u64.pow(m), 2);
        if count != 8 {
            return Ok(Some(format!("x^2 = 1 solutions mod 2^{m}: {count} != 8")));
        }
    }
    Ok(None)
}

fn construction_spot_checks(budget: u128) -> Result<Option<String>> {
    let rule = crate::constructions::odometer::odometer_rule(10)?;
    let start = crate::constructions::odometer::canonical_start(3, 10);
    let mut c = step(&rule, &start)?;
    let mut period = 1;
    while c != start {
        c = step(&rule, &c)?;
        period += 1;
        if period > 2000 {
            return Ok(Some("odometer orbit did not close".into()));
        }
    }
    if period != 1200 {
        return Ok(Some(format!("odometer orbit period {period} != 1200")));
    }

    let (rule, spec) = crate::constructions::prime_partition::prime_partition_rule(2, 6)?;
    let census = cycle_census(&rule, 2, budget)?;
    let xy = crate::engine::extremal_from_census(&census);
    if spec.period() != 6 || xy.x != Some(6) || xy.y != Some(6) {
        return Ok(Some(format!("prime partition sigma=2 n=6: {xy:?}")));
    }
    Ok(None)
}

fn additive_period_spot_checks() -> Result<Option<String>> {
    let got = additive_period(&AdditiveRule::new(3, 4, 1, 1));
    // 1 + x is a zero divisor mod x^4 - 1 (x = -1 is a root), so the
    // orbit has a one-step approach to its cycle.
    if (got.period, got.preperiod) != (8, 1) {
        return Ok(Some(format!("sum rule n=3 sigma=4: {got:?}")));
    }
    Ok(None)
}

/// Runs one suite; the full suite widens the brute-force ranges to the
/// sizes used by the acceptance gate.
pub fn run_suite(suite: Suite, budget: u128) -> Vec<CheckResult> {
    let mut results = vec![
        check("shift-equivariance", shift_equivariance),
        check("spatial-period-divides", spatial_period_divides),
        check("census-conservation", || census_conservation(budget)),
        check("lambda-sigma2-formula-vs-brute", || {
            lambda_matches_brute(2, 200)
        }),
        check("lambda-sigma3-formula-vs-brute", || {
            lambda_matches_brute(3, 60)
        }),
        check("lambda-sigma4-formula-vs-brute", || {
            lambda_matches_brute(4, 60)
        }),
        check("explicit-power-vs-iteration", || {
            explicit_power_matches_iteration(200)
        }),
        check("pi-formula-vs-brute", || {
            pi_formula_matches_brute(&[(2, 12), (3, 12), (4, 12), (6, 10)])
        }),
        check("pi-crt-lcm", crt_lcm_property),
        check("pi-upper-bound", pi_upper_bound),
        check("eisenstein-unity-census", eisenstein_unity_census),
        check("additive-period-examples", additive_period_spot_checks),
    ];
    if suite == Suite::Full {
        results.push(check("pi-formula-vs-brute-wide", || {
            pi_formula_matches_brute(&[(2, 20), (3, 20), (4, 12), (6, 10)])
        }));
        results.push(check("construction-orbits", || {
            construction_spot_checks(budget)
        }));
    }
    results
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::DEFAULT_BUDGET;

    #[test]
    fn quick_suite_is_green() {
        for r in run_suite(Suite::Quick, DEFAULT_BUDGET) {
            assert!(r.pass, "{}: {}", r.name, r.detail);
        }
    }

    #[test]
    fn full_suite_is_green() {
        for r in run_suite(Suite::Full, DEFAULT_BUDGET) {
            assert!(r.pass, "{}: {}", r.name, r.detail);
        }
    }
}
