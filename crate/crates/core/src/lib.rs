//! Kuramoto oscillator networks entrained by a pacemaker.
//!
//! The crate is organised in four layers:
//!
//! - [`network`]: coupling graphs, signed incidence form and weighted Laplacian.
//! - [`dynamics`]: full-phase and relative-phase vector fields and a fixed-step
//!   RK4 integrator that records trajectories.
//! - [`analysis`]: sinc constants, the exponential-rate lower bounds
//!   (`alpha1`..`alpha4`), sufficient synchronization / locking / trapping
//!   conditions, and trajectory diagnostics.
//! - [`harness`]: seeded experiment generation, sweep and trapping protocols,
//!   CSV output and the `kpace` command line.
//!
//! Rate bounds and experiment protocols are strategies behind trait objects and
//! are looked up by name in a registry ([`analysis::BoundRegistry`],
//! [`harness::ProtocolRegistry`]).

pub mod analysis;
pub mod dynamics;
pub mod error;
pub mod harness;
pub mod network;

pub use error::{Error, Result};
