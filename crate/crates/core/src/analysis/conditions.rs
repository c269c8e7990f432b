//! Sufficient conditions for synchronization, phase locking and phase
//! trapping. Each check reports the slack of its binding inequality.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::eigen::symmetric_eigen_extremes;
use super::scalar::{epsilon0, sinc};
use crate::dynamics::ModelParams;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    Synchronization,
    PhaseLocking,
    PhaseTrapping,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::Synchronization => "synchronization",
            Theorem::PhaseLocking => "phase_locking",
            Theorem::PhaseTrapping => "phase_trapping",
        }
    }
}

/// Outcome of a sufficient-condition check. `holds` is exactly `margin > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionVerdict {
    pub theorem: Theorem,
    pub holds: bool,
    /// Slack of the binding inequality in 1/s, negative when violated.
    pub margin: f64,
    pub binding_term: &'static str,
}

impl ConditionVerdict {
    fn new(theorem: Theorem, margin: f64, binding_term: &'static str) -> Self {
        ConditionVerdict {
            theorem,
            holds: margin > 0.0,
            margin,
            binding_term,
        }
    }
}

pub(crate) fn lambda_max_laplacian(params: &ModelParams) -> Result<f64> {
    Ok(symmetric_eigen_extremes(params.laplacian())?.1)
}

fn check_epsilon(what: &'static str, epsilon: f64, hi: f64) -> Result<()> {
    if (0.0..hi).contains(&epsilon) {
        Ok(())
    } else {
        Err(Error::EpsilonOutOfRegime {
            what,
            epsilon,
            lo: 0.0,
            hi,
        })
    }
}

/// Connectivity plus one positive pacemaker strength; margin is `max g_i`.
fn pinned_and_connected(theorem: Theorem, params: &ModelParams) -> ConditionVerdict {
    if !params.graph().is_connected() {
        return ConditionVerdict::new(theorem, 0.0, "connectivity");
    }
    ConditionVerdict::new(theorem, params.pacemaker().g_max(), "pacemaker")
}

/// Larger of two threshold terms, labelled.
fn binding(a: (f64, &'static str), b: (f64, &'static str)) -> (f64, &'static str) {
    if a.0 >= b.0 {
        a
    } else {
        b
    }
}

/// Synchronization with identical natural frequencies from `[−ε, ε]^n`.
pub fn check_sync_condition(params: &ModelParams, epsilon: f64) -> Result<ConditionVerdict> {
    check_epsilon("check_sync_condition", epsilon, PI)?;
    let theorem = Theorem::Synchronization;
    if !params.is_identical() {
        let spread = params.omega().iter().fold(0.0_f64, |m, o| m.max(o.abs()));
        return Ok(ConditionVerdict::new(theorem, -spread, "non_identical_frequencies"));
    }
    if epsilon < FRAC_PI_2 {
        return Ok(pinned_and_connected(theorem, params));
    }
    let lambda_max = lambda_max_laplacian(params)?;
    let spectral = epsilon0().sinc_2eps0 * lambda_max / -sinc(epsilon);
    let degree = params.graph().max_degree() / epsilon.sin();
    let (threshold, term) = binding((spectral, "spectral"), (degree, "degree"));
    Ok(ConditionVerdict::new(theorem, params.pacemaker().g_min() - threshold, term))
}

/// Phase locking (frequency agreement) from `[−ε, ε]^n`, `ε < π/2`.
pub fn check_locking_condition(params: &ModelParams, epsilon: f64) -> Result<ConditionVerdict> {
    check_epsilon("check_locking_condition", epsilon, FRAC_PI_2)?;
    let theorem = Theorem::PhaseLocking;
    if epsilon < FRAC_PI_4 {
        return Ok(pinned_and_connected(theorem, params));
    }
    let lambda_max = lambda_max_laplacian(params)?;
    // cos 2ε ≤ 0 on this range; clamp the rounding residue at ε = π/4.
    let factor = (-(2.0 * epsilon).cos() / epsilon.cos()).max(0.0);
    let spectral = factor * lambda_max;
    let degree = factor * params.graph().max_degree();
    let (threshold, term) = binding((spectral, "spectral"), (degree, "degree"));
    Ok(ConditionVerdict::new(theorem, params.pacemaker().g_min() - threshold, term))
}

/// Trapping of all relative phases in `[−δ, δ]`.
pub fn check_trapping_condition(params: &ModelParams, epsilon: f64, delta: f64) -> Result<ConditionVerdict> {
    if !(delta > 0.0 && delta < PI) {
        return Err(Error::InvalidDelta(delta));
    }
    check_epsilon("check_trapping_condition", epsilon, PI)?;
    let theorem = Theorem::PhaseTrapping;
    let sinc_eps = sinc(epsilon);
    let drift = params.omega_norm() / (delta * sinc_eps);
    let (threshold, term) = if epsilon < FRAC_PI_2 {
        (drift, "frequency_spread")
    } else {
        let lambda_max = lambda_max_laplacian(params)?;
        (
            drift - epsilon0().sinc_2eps0 * lambda_max / sinc_eps,
            "frequency_spread_and_coupling",
        )
    };
    Ok(ConditionVerdict::new(theorem, params.pacemaker().g_min() - threshold, term))
}
