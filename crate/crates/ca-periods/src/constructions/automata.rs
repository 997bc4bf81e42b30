//! The odometer rule augmented with two watchdog automata per site. The
//! end-reader stream shifts left past the ring checking that exactly one
//! end mark exists; the arrow-reader sits still checking that an arrow
//! keeps visiting the end position. Either watchdog failing, a carry
//! without an arrow, or two adjacent arrows collapses the configuration
//! to the absorbing terminator, so every surviving cycle is a long
//! odometer orbit and the extremal periods coincide.

use serde::Serialize;

use super::odometer::{assignment, OdometerCell};
use super::{Construction, ConstructionOutput, ConstructionParams};
use crate::engine::{Orientation, RingConfig, RuleTable};
use crate::error::{Error, Result};

/// Non-terminator state count per digit value: 8 * 2*sigma * (sigma+2).
pub fn states_per_digit(sigma: usize) -> u64 {
    16 * sigma as u64 * (sigma as u64 + 2)
}

/// End-reader state: Counting(j, seen) for 0 <= j < sigma with `seen`
/// recording whether an end mark was read this sweep, or the trap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EndReader {
    Counting(usize, bool),
    Trapped,
}

/// Arrow-reader state: steps since the last non-arrow end-mark streak
/// broke, saturating into the trap after sigma + 1 quiet reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ArrowReader {
    Count(usize),
    Trapped,
}

pub fn end_reader_step(state: EndReader, sigma: usize, end: bool) -> EndReader {
    match (state, end) {
        (EndReader::Trapped, _) => EndReader::Trapped,
        (EndReader::Counting(j, false), false) if j + 1 < sigma => {
            EndReader::Counting(j + 1, false)
        }
        (EndReader::Counting(_, false), false) => EndReader::Trapped,
        (EndReader::Counting(j, false), true) if j + 1 < sigma => EndReader::Counting(j + 1, true),
        (EndReader::Counting(_, false), true) => EndReader::Counting(0, false),
        (EndReader::Counting(j, true), false) if j + 1 < sigma => EndReader::Counting(j + 1, true),
        (EndReader::Counting(_, true), false) => EndReader::Counting(0, false),
        (EndReader::Counting(_, true), true) => EndReader::Trapped,
    }
}

pub fn arrow_reader_step(state: ArrowReader, sigma: usize, arrow: bool, end: bool) -> ArrowReader {
    match state {
        ArrowReader::Trapped => ArrowReader::Trapped,
        ArrowReader::Count(j) => {
            if !arrow && end {
                if j < sigma {
                    ArrowReader::Count(j + 1)
                } else {
                    ArrowReader::Trapped
                }
            } else {
                ArrowReader::Count(0)
            }
        }
    }
}

fn end_reader_index(e: EndReader, sigma: usize) -> u64 {
    match e {
        EndReader::Counting(j, false) => j as u64,
        EndReader::Counting(j, true) => (sigma + j - 1) as u64,
        EndReader::Trapped => 2 * sigma as u64 - 1,
    }
}

fn end_reader_decode(idx: u64, sigma: usize) -> EndReader {
    let idx = idx as usize;
    if idx < sigma {
        EndReader::Counting(idx, false)
    } else if idx < 2 * sigma - 1 {
        EndReader::Counting(idx - sigma + 1, true)
    } else {
        EndReader::Trapped
    }
}

fn arrow_reader_index(a: ArrowReader, sigma: usize) -> u64 {
    match a {
        ArrowReader::Count(j) => j as u64,
        ArrowReader::Trapped => sigma as u64 + 1,
    }
}

fn arrow_reader_decode(idx: u64, sigma: usize) -> ArrowReader {
    if (idx as usize) <= sigma {
        ArrowReader::Count(idx as usize)
    } else {
        ArrowReader::Trapped
    }
}

/// A non-terminator state: the odometer cell plus the two reader states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AutomataCell {
    pub first: OdometerCell,
    pub end_reader: EndReader,
    pub arrow_reader: ArrowReader,
}

impl AutomataCell {
    pub fn encode(&self, sigma: usize, k: u64) -> u64 {
        self.first.encode(k)
            + 8 * k
                * (end_reader_index(self.end_reader, sigma)
                    + 2 * sigma as u64 * arrow_reader_index(self.arrow_reader, sigma))
    }

    /// `None` for the terminator and any leftover state.
    pub fn decode(state: u64, sigma: usize, k: u64) -> Option<Self> {
        if state >= terminator(sigma, k) {
            return None;
        }
        let first = OdometerCell::decode(state % (8 * k), k);
        let upper = state / (8 * k);
        Some(AutomataCell {
            first,
            end_reader: end_reader_decode(upper % (2 * sigma as u64), sigma),
            arrow_reader: arrow_reader_decode(upper / (2 * sigma as u64), sigma),
        })
    }
}

/// Index of the absorbing terminator; every state above it is a leftover
/// that terminates immediately.
pub fn terminator(sigma: usize, k: u64) -> u64 {
    states_per_digit(sigma) * k
}

pub fn odometer_automata_rule(sigma: usize, k: u64, n: u64) -> Result<RuleTable> {
    if sigma < 2 {
        return Err(Error::Usage("odometer-automata needs sigma >= 2".into()));
    }
    if k <= sigma as u64 {
        return Err(Error::Usage(format!(
            "odometer-automata needs k > sigma, got k = {k}, sigma = {sigma}"
        )));
    }
    let t = terminator(sigma, k);
    if n < t + 1 {
        return Err(Error::Usage(format!(
            "odometer-automata needs n >= {}, got n = {n}",
            t + 1
        )));
    }
    RuleTable::from_fn(n, Orientation::Right, |c0, c1| {
        let (s0, s1) = match (
            AutomataCell::decode(c0, sigma, k),
            AutomataCell::decode(c1, sigma, k),
        ) {
            (Some(s0), Some(s1)) => (s0, s1),
            _ => return t,
        };
        if s0.end_reader == EndReader::Trapped
            || s1.end_reader == EndReader::Trapped
            || s0.arrow_reader == ArrowReader::Trapped
            || s1.arrow_reader == ArrowReader::Trapped
        {
            return t;
        }
        // a carry mark is only valid on an arrow site away from the end
        // marker; anything else (including arrow+star+end, which no
        // update clause touches) must die or it would sit on a short cycle
        if s0.first.star && (!s0.first.arrow || s0.first.end) {
            return t;
        }
        if s0.first.arrow && s1.first.arrow {
            return t;
        }
        let first = match assignment(s0.first, s1.first, k) {
            Some((_, out)) => out,
            None => s0.first,
        };
        // the reader stream shifts left: this site inherits the reader
        // of its right neighbor after it reads its own end coordinate
        let end_reader = end_reader_step(s1.end_reader, sigma, s1.first.end);
        // the arrow reader stays put and watches its own site
        let arrow_reader = arrow_reader_step(s0.arrow_reader, sigma, s0.first.arrow, s0.first.end);
        AutomataCell {
            first,
            end_reader,
            arrow_reader,
        }
        .encode(sigma, k)
    })
}

/// The canonical start with both readers freshly reset at every site.
pub fn canonical_start(sigma: usize, k: u64) -> RingConfig {
    let word = super::odometer::canonical_start(sigma, k)
        .word
        .iter()
        .map(|&s| {
            AutomataCell {
                first: OdometerCell::decode(s, k),
                end_reader: EndReader::Counting(0, false),
                arrow_reader: ArrowReader::Count(0),
            }
            .encode(sigma, k)
        })
        .collect();
    RingConfig::new(word)
}

pub struct OdometerAutomata;

impl Construction for OdometerAutomata {
    fn name(&self) -> &'static str {
        "odometer-automata"
    }

    fn build(&self, params: &ConstructionParams) -> Result<ConstructionOutput> {
        let sigma = params.sigma;
        let k = params
            .k
            .ok_or_else(|| Error::Usage("odometer-automata needs --k".into()))?;
        let n = params.n.unwrap_or_else(|| terminator(sigma, k) + 1);
        let rule = odometer_automata_rule(sigma, k, n)?;
        let t = terminator(sigma, k);
        let states: Vec<_> = (0..t)
            .map(|s| {
                let c = AutomataCell::decode(s, sigma, k).unwrap();
                serde_json::json!({
                    "index": s,
                    "digit": c.first.digit, "arrow": c.first.arrow,
                    "star": c.first.star, "end": c.first.end,
                    "end_reader": c.end_reader, "arrow_reader": c.arrow_reader,
                })
            })
            .collect();
        let sidecar = serde_json::json!({
            "kind": "odometer-automata",
            "sigma": sigma,
            "k": k,
            "n": n,
            "encoding": "first + 8k*(end_reader + 2*sigma*arrow_reader)",
            "terminator": t,
            "leftover_from": t + 1,
            "states": states,
        });
        Ok(ConstructionOutput { rule, sidecar })
    }
}
