//! Seeded experiments, time-to-event detection, CSV output and the CLI.

pub mod cli;
mod config;
pub mod csv;
mod detect;
mod protocol;
pub mod rng;
mod sweep;
mod trapping;

pub use config::{
    CouplingSource, ExperimentKind, ExperimentSpec, InitialPhases, NaturalFrequencies, RunInputs, SweepTarget,
};
pub use detect::{first_event, time_to_lock, time_to_sync, EventDetector, LockDetector, SyncDetector};
pub use protocol::{LockingSweep, Protocol, ProtocolRegistry, SyncSweep, TrappingCurve};
pub use rng::sample_initial_phases;
pub use sweep::{run_sweep, MultiplierRecord, RunOutcome, SweepResult};
pub use trapping::{run_trapping, TrappingRecord, TrappingResult};
