use std::ops::ControlFlow;

use rayon::prelude::*;

use super::config::{ExperimentKind, ExperimentSpec, SweepTarget};
use super::sweep::{scaled_params, shared_inputs};
use crate::dynamics::{integrate_observed, wrap_phase};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrappingRecord {
    pub multiplier: f64,
    /// Worst case over runs of `max_i |ξ_i(t_max)|`, phases taken modulo 2π.
    /// `None` when every run diverged.
    pub max_final_relative_phase: Option<f64>,
    pub aborted_count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrappingResult {
    pub records: Vec<TrappingRecord>,
    /// `raw[m][k]`: final error of run `k`, `None` if it diverged.
    pub raw: Vec<Vec<Option<f64>>>,
}

/// Largest relative phase magnitude, each phase mapped into `[−π, π)`.
pub fn final_relative_phase(xi: &[f64]) -> f64 {
    xi.iter().fold(0.0_f64, |m, x| m.max(wrap_phase(*x).abs()))
}

/// Final synchronization error against pacemaker strength. Every multiplier
/// scales the pacemaker and reuses the same initial phases and frequencies.
pub fn run_trapping(spec: &ExperimentSpec) -> Result<TrappingResult> {
    spec.validate()?;
    if spec.kind != ExperimentKind::Trapping {
        return Err(Error::config("kind", "run_trapping needs kind = trapping"));
    }
    if spec.base_g.iter().any(|g| *g <= 0.0) {
        return Err(Error::config("g", "trapping needs every pacemaker strength positive"));
    }
    let mut spec = spec.clone();
    spec.sweep_target = SweepTarget::Pacemaker;
    let (graph, inputs) = shared_inputs(&spec)?;
    let runs = spec.runs;
    let flat: Vec<Option<f64>> = (0..spec.multipliers.len() * runs)
        .into_par_iter()
        .map(|idx| {
            let (mi, k) = (idx / runs, idx % runs);
            let params = scaled_params(&spec, &graph, &inputs[k], spec.multipliers[mi])?;
            match integrate_observed(&params, &inputs[k].xi0, &spec.integrator, |_| ControlFlow::Continue(())) {
                Ok(xi) => Ok(Some(final_relative_phase(&xi))),
                Err(Error::Blowup { .. }) => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_>>()?;

    let raw: Vec<Vec<Option<f64>>> = flat.chunks(runs).map(<[Option<f64>]>::to_vec).collect();
    let records = spec
        .multipliers
        .iter()
        .zip(&raw)
        .map(|(m, finals)| TrappingRecord {
            multiplier: *m,
            max_final_relative_phase: finals.iter().flatten().copied().reduce(f64::max),
            aborted_count: finals.iter().filter(|f| f.is_none()).count(),
        })
        .collect();
    Ok(TrappingResult { records, raw })
}
