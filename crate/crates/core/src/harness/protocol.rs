//! Experiment protocols, registered by the `kind` name used in configs.

use super::config::{ExperimentKind, ExperimentSpec};
use super::csv::{sweep_table, trapping_table, Table};
use super::sweep::run_sweep;
use super::trapping::run_trapping;
use crate::error::{Error, Result};

pub trait Protocol: Send + Sync {
    fn kind(&self) -> ExperimentKind;

    fn run(&self, spec: &ExperimentSpec) -> Result<Table>;

    fn name(&self) -> &'static str {
        self.kind().name()
    }
}

/// Mean time until the order parameter reaches the sync threshold.
#[derive(Debug, Clone, Copy, Default)]
pub struct SyncSweep;

/// Mean time until every relative frequency is below the lock tolerance.
#[derive(Debug, Clone, Copy, Default)]
pub struct LockingSweep;

/// Worst final relative phase per pacemaker multiplier.
#[derive(Debug, Clone, Copy, Default)]
pub struct TrappingCurve;

fn with_kind(spec: &ExperimentSpec, kind: ExperimentKind) -> ExperimentSpec {
    let mut spec = spec.clone();
    spec.kind = kind;
    spec
}

impl Protocol for SyncSweep {
    fn kind(&self) -> ExperimentKind {
        ExperimentKind::SyncSweep
    }

    fn run(&self, spec: &ExperimentSpec) -> Result<Table> {
        Ok(sweep_table(&run_sweep(&with_kind(spec, self.kind()))?))
    }
}

impl Protocol for LockingSweep {
    fn kind(&self) -> ExperimentKind {
        ExperimentKind::LockingSweep
    }

    fn run(&self, spec: &ExperimentSpec) -> Result<Table> {
        Ok(sweep_table(&run_sweep(&with_kind(spec, self.kind()))?))
    }
}

impl Protocol for TrappingCurve {
    fn kind(&self) -> ExperimentKind {
        ExperimentKind::Trapping
    }

    fn run(&self, spec: &ExperimentSpec) -> Result<Table> {
        Ok(trapping_table(&run_trapping(&with_kind(spec, self.kind()))?))
    }
}

pub struct ProtocolRegistry {
    protocols: Vec<Box<dyn Protocol>>,
}

impl Default for ProtocolRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

impl ProtocolRegistry {
    pub fn empty() -> Self {
        ProtocolRegistry { protocols: Vec::new() }
    }

    pub fn builtin() -> Self {
        let mut reg = Self::empty();
        reg.register(Box::new(SyncSweep));
        reg.register(Box::new(LockingSweep));
        reg.register(Box::new(TrappingCurve));
        reg
    }

    pub fn register(&mut self, protocol: Box<dyn Protocol>) {
        self.protocols.retain(|p| p.name() != protocol.name());
        self.protocols.push(protocol);
    }

    pub fn get(&self, name: &str) -> Result<&dyn Protocol> {
        self.protocols
            .iter()
            .find(|p| p.name() == name)
            .map(Box::as_ref)
            .ok_or_else(|| Error::UnknownStrategy {
                registry: "protocol",
                name: name.to_string(),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.protocols.iter().map(|p| p.name()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_names() {
        let reg = ProtocolRegistry::builtin();
        assert_eq!(reg.names(), vec!["sync_sweep", "locking_sweep", "trapping"]);
        assert_eq!(reg.get("trapping").unwrap().kind(), ExperimentKind::Trapping);
        assert!(matches!(reg.get("nope"), Err(Error::UnknownStrategy { .. })));
    }

    #[test]
    fn sweep_protocol_emits_one_row_per_multiplier() {
        let spec = ExperimentSpec::from_json_str(
            r#"{"n": 3, "multipliers": [1, 2], "runs": 2, "t_max": 50, "seed": 1}"#,
        )
        .unwrap();
        let table = ProtocolRegistry::builtin().get("sync_sweep").unwrap().run(&spec).unwrap();
        assert_eq!(table.header, vec!["multiplier", "mean_time", "std_time", "timeouts"]);
        assert_eq!(table.rows.len(), 2);
    }
}
