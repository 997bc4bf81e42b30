//! Named generators for explicit long-period rules. Each generator is a
//! strategy behind the [`Construction`] trait and is selected by name at
//! the CLI; all of them emit an ordinary [`RuleTable`] plus a JSON
//! sidecar documenting the state encoding.

pub mod automata;
pub mod odometer;
pub mod prime_partition;

use crate::engine::RuleTable;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Default)]
pub struct ConstructionParams {
    pub sigma: usize,
    pub k: Option<u64>,
    pub n: Option<u64>,
}

pub struct ConstructionOutput {
    pub rule: RuleTable,
    pub sidecar: serde_json::Value,
}

pub trait Construction: Sync {
    fn name(&self) -> &'static str;
    fn build(&self, params: &ConstructionParams) -> Result<ConstructionOutput>;
}

pub const REGISTRY: &[&dyn Construction] = &[
    &odometer::Odometer,
    &automata::OdometerAutomata,
    &prime_partition::PrimePartition,
];

pub fn lookup(name: &str) -> Result<&'static dyn Construction> {
    REGISTRY
        .iter()
        .copied()
        .find(|c| c.name() == name)
        .ok_or_else(|| {
            let known: Vec<_> = REGISTRY.iter().map(|c| c.name()).collect();
            Error::Usage(format!(
                "unknown construction {name:?}; known: {}",
                known.join(", ")
            ))
        })
}
