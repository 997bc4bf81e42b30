//! The prime partition rule: sigma disjoint blocks of nonzero states with
//! distinct prime sizes, each carrying a cyclic permutation. A site in
//! block j advances its cycle exactly when its right neighbor sits in
//! block j+1, and everything else dies to 0, so the surviving aperiodic
//! cycles all have length p_0 * p_1 * ... * p_(sigma-1).

use serde::Serialize;

use super::{Construction, ConstructionOutput, ConstructionParams};
use crate::engine::{Orientation, RuleTable};
use crate::error::{Error, Result};

/// Which branch picked the primes: the preferred window
/// [(n-1)/(2*sigma), (n-1)/sigma], or the max-product fallback over all
/// sigma distinct primes with sum <= n-1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrimeSelection {
    Window,
    MaxProduct,
}

#[derive(Debug, Clone, Serialize)]
pub struct PrimePartitionSpec {
    pub sigma: usize,
    pub n: u64,
    pub selection: PrimeSelection,
    pub primes: Vec<u64>,
    /// blocks[j] lists the states of block j in cycle order; the
    /// permutation maps each entry to the next one cyclically.
    pub blocks: Vec<Vec<u64>>,
}

impl PrimePartitionSpec {
    pub fn period(&self) -> u64 {
        self.primes.iter().product()
    }
}

fn primes_up_to(limit: u64) -> Vec<u64> {
    (2..=limit)
        .filter(|&p| crate::numtheory::factorize(p).factors == [(p, 1)])
        .collect()
}

/// Largest-product choice of `want` distinct primes from `pool` (sorted
/// ascending) with sum <= `budget`; ties cannot occur since products of
/// distinct prime sets are distinct.
fn best_subset(pool: &[u64], want: usize, budget: u64) -> Option<Vec<u64>> {
    fn go(pool: &[u64], want: usize, budget: u64) -> Option<(u128, Vec<u64>)> {
        if want == 0 {
            return Some((1, Vec::new()));
        }
        if pool.len() < want || pool.iter().take(want).sum::<u64>() > budget {
            return None;
        }
        let mut best: Option<(u128, Vec<u64>)> = None;
        for i in (want - 1..pool.len()).rev() {
            let p = pool[i];
            if p > budget {
                continue;
            }
            if let Some((prod, mut rest)) = go(&pool[..i], want - 1, budget - p) {
                let cand = prod * p as u128;
                if best.as_ref().is_none_or(|(b, _)| cand > *b) {
                    rest.push(p);
                    best = Some((cand, rest));
                }
            }
        }
        best
    }
    go(pool, want, budget).map(|(_, mut v)| {
        v.sort_unstable();
        v
    })
}

pub fn choose_primes(sigma: usize, n: u64) -> Result<(PrimeSelection, Vec<u64>)> {
    if n < 2 {
        return Err(Error::Infeasible(format!(
            "no nonzero states to partition for n = {n}"
        )));
    }
    let budget = n - 1;
    let lo = budget.div_ceil(2 * sigma as u64);
    let hi = budget / sigma as u64;
    let window: Vec<u64> = primes_up_to(hi).into_iter().filter(|&p| p >= lo).collect();
    if window.len() >= sigma {
        // the window guarantees the sum bound; take the largest sigma
        return Ok((
            PrimeSelection::Window,
            window[window.len() - sigma..].to_vec(),
        ));
    }
    match best_subset(&primes_up_to(budget), sigma, budget) {
        Some(primes) => Ok((PrimeSelection::MaxProduct, primes)),
        None => Err(Error::Infeasible(format!(
            "no {sigma} distinct primes with sum <= {budget} (sigma = {sigma}, n = {n})"
        ))),
    }
}

pub fn prime_partition_rule(sigma: usize, n: u64) -> Result<(RuleTable, PrimePartitionSpec)> {
    if sigma < 2 {
        return Err(Error::Usage("prime-partition needs sigma >= 2".into()));
    }
    let (selection, primes) = choose_primes(sigma, n)?;
    let mut next_state = 1;
    let blocks: Vec<Vec<u64>> = primes
        .iter()
        .map(|&p| {
            let block: Vec<u64> = (next_state..next_state + p).collect();
            next_state += p;
            block
        })
        .collect();

    // block_of[s] = Some(j) iff s is in block j; advance[s] = phi_j(s)
    let mut block_of = vec![None; n as usize];
    let mut advance = vec![0u64; n as usize];
    for (j, block) in blocks.iter().enumerate() {
        for (i, &s) in block.iter().enumerate() {
            block_of[s as usize] = Some(j);
            advance[s as usize] = block[(i + 1) % block.len()];
        }
    }
    let rule = RuleTable::from_fn(n, Orientation::Right, |c0, c1| {
        match (block_of[c0 as usize], block_of[c1 as usize]) {
            (Some(j), Some(j1)) if (j + 1) % sigma == j1 => advance[c0 as usize],
            _ => 0,
        }
    })?;
    Ok((
        rule,
        PrimePartitionSpec {
            sigma,
            n,
            selection,
            primes,
            blocks,
        },
    ))
}

pub struct PrimePartition;

impl Construction for PrimePartition {
    fn name(&self) -> &'static str {
        "prime-partition"
    }

    fn build(&self, params: &ConstructionParams) -> Result<ConstructionOutput> {
        let n = params
            .n
            .ok_or_else(|| Error::Usage("prime-partition needs --n".into()))?;
        let (rule, spec) = prime_partition_rule(params.sigma, n)?;
        let sidecar = serde_json::json!({
            "kind": "prime-partition",
            "sigma": spec.sigma,
            "n": spec.n,
            "selection": spec.selection,
            "primes": spec.primes,
            "blocks": spec.blocks,
            "period": spec.period(),
        });
        Ok(ConstructionOutput { rule, sidecar })
    }
}
