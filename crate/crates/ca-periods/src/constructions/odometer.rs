//! The odometer rule: a right-sided rule on 8k states whose number layer
//! counts in base k around the ring, driven by a left-moving carry
//! particle. Every aperiodic cycle is longer than k^sigma.

use serde::Serialize;

use super::{Construction, ConstructionOutput, ConstructionParams};
use crate::engine::{Orientation, RingConfig, RuleTable};
use crate::error::{Error, Result};

/// One state of the odometer alphabet: a digit plus three optional marks.
/// Encoded as digit + k*(arrow + 2*star + 4*end), 8k states total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OdometerCell {
    pub digit: u64,
    /// The left-moving particle marking where the next increment lands.
    pub arrow: bool,
    /// The carry mark.
    pub star: bool,
    /// The fixed right-end marker of the simulated interval.
    pub end: bool,
}

impl OdometerCell {
    pub fn new(digit: u64, arrow: bool, star: bool, end: bool) -> Self {
        OdometerCell {
            digit,
            arrow,
            star,
            end,
        }
    }

    pub fn plain(digit: u64) -> Self {
        OdometerCell::new(digit, false, false, false)
    }

    pub fn encode(&self, k: u64) -> u64 {
        debug_assert!(self.digit < k);
        self.digit + k * (self.arrow as u64 + 2 * self.star as u64 + 4 * self.end as u64)
    }

    pub fn decode(state: u64, k: u64) -> Self {
        debug_assert!(state < 8 * k);
        OdometerCell {
            digit: state % k,
            arrow: (state / k) & 1 == 1,
            star: (state / k) & 2 == 2,
            end: (state / k) & 4 == 4,
        }
    }
}

/// Applies the first matching of the fourteen update clauses to the
/// ordered pair (own cell, right neighbor); `None` means the default
/// clause (keep own cell) applies. Also reports the clause number so the
/// generator can assert the clause patterns never overlap.
pub fn assignment(s0: OdometerCell, s1: OdometerCell, k: u64) -> Option<(usize, OdometerCell)> {
    let last = k - 1;
    let mut hit: Option<(usize, OdometerCell)> = None;
    let mut found = |idx: usize, out: OdometerCell| {
        assert!(
            hit.is_none(),
            "clauses {} and {idx} overlap",
            hit.unwrap().0
        );
        hit = Some((idx, out));
    };

    let plain0 = !s0.arrow && !s0.star && !s0.end;
    let end0 = !s0.arrow && !s0.star && s0.end;
    if plain0 && s1.arrow && s1.star && !s1.end && s1.digit < last {
        found(1, OdometerCell::new(s0.digit, true, false, false));
    }
    if plain0 && s1.arrow && !s1.star && !s1.end {
        found(2, OdometerCell::new(s0.digit, true, false, false));
    }
    if plain0 && s1.arrow && s1.star && !s1.end && s1.digit == last {
        found(3, OdometerCell::new(s0.digit, true, true, false));
    }
    if s0.arrow && s0.star && !s0.end {
        found(4, OdometerCell::plain((s0.digit + 1) % k));
    }
    if s0.arrow && !s0.star && !s0.end {
        found(5, OdometerCell::plain(s0.digit));
    }
    if plain0 && s1.arrow && !s1.star && s1.end && s1.digit == last {
        found(6, OdometerCell::new(s0.digit, true, true, false));
    }
    if s0.arrow && !s0.star && s0.end && s0.digit < last {
        found(7, OdometerCell::new(s0.digit + 1, true, false, true));
    }
    if s0.arrow && !s0.star && s0.end && s0.digit == last {
        found(8, OdometerCell::new(0, false, false, true));
    }
    if end0 && s1.arrow && s1.star && !s1.end {
        found(9, OdometerCell::new(0, true, false, true));
    }
    if end0 && s1.arrow && !s1.star && !s1.end {
        found(10, OdometerCell::new(0, true, false, true));
    }
    if plain0 && !s1.arrow && !s1.star && !s1.end {
        found(11, OdometerCell::plain(s0.digit));
    }
    if end0 && !s1.arrow && !s1.star && !s1.end {
        found(12, OdometerCell::new(s0.digit, false, false, true));
    }
    if plain0 && !s1.arrow && !s1.star && s1.end {
        found(13, OdometerCell::plain(s0.digit));
    }
    if plain0 && s1.arrow && !s1.star && s1.end && s1.digit < last {
        found(14, OdometerCell::plain(s0.digit));
    }
    hit
}

pub fn odometer_rule(k: u64) -> Result<RuleTable> {
    if k < 2 {
        return Err(Error::Usage(format!("odometer needs k >= 2, got {k}")));
    }
    let n = 8 * k;
    RuleTable::from_fn(n, Orientation::Right, |c0, c1| {
        let s0 = OdometerCell::decode(c0, k);
        let s1 = OdometerCell::decode(c1, k);
        match assignment(s0, s1, k) {
            Some((_, out)) => out.encode(k),
            None => c0,
        }
    })
}

/// Exactly one arrow, exactly one end mark, and stars only at
/// arrow-without-end sites.
pub fn is_legitimate(cells: &[OdometerCell]) -> bool {
    cells.iter().filter(|c| c.arrow).count() == 1
        && cells.iter().filter(|c| c.end).count() == 1
        && cells.iter().all(|c| !c.star || (c.arrow && !c.end))
}

/// The canonical start: sigma - 1 zero digits followed by an
/// arrow-and-end-marked zero.
pub fn canonical_start(sigma: usize, k: u64) -> RingConfig {
    let mut word = vec![OdometerCell::plain(0).encode(k); sigma];
    word[sigma - 1] = OdometerCell::new(0, true, false, true).encode(k);
    RingConfig::new(word)
}

fn encoding_sidecar(sigma: usize, k: u64) -> serde_json::Value {
    let states: Vec<_> = (0..8 * k)
        .map(|s| {
            let c = OdometerCell::decode(s, k);
            serde_json::json!({
                "index": s, "digit": c.digit,
                "arrow": c.arrow, "star": c.star, "end": c.end,
            })
        })
        .collect();
    serde_json::json!({
        "kind": "odometer",
        "sigma": sigma,
        "k": k,
        "n": 8 * k,
        "encoding": "digit + k*(arrow + 2*star + 4*end)",
        "states": states,
    })
}

pub struct Odometer;

impl Construction for Odometer {
    fn name(&self) -> &'static str {
        "odometer"
    }

    fn build(&self, params: &ConstructionParams) -> Result<ConstructionOutput> {
        if params.sigma < 2 {
            return Err(Error::Usage("odometer needs sigma >= 2".into()));
        }
        let k = params
            .k
            .ok_or_else(|| Error::Usage("odometer needs --k".into()))?;
        if let Some(n) = params.n {
            if n != 8 * k {
                return Err(Error::Usage(format!(
                    "odometer has n = 8k = {}, got n = {n}",
                    8 * k
                )));
            }
        }
        Ok(ConstructionOutput {
            rule: odometer_rule(k)?,
            sidecar: encoding_sidecar(params.sigma, k),
        })
    }
}
