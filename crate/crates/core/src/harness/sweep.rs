use std::ops::ControlFlow;

use rayon::prelude::*;

use super::config::{ExperimentKind, ExperimentSpec, RunInputs, SweepTarget};
use super::detect::{EventDetector, LockDetector, SyncDetector};
use crate::dynamics::{integrate_observed, ModelParams};
use crate::error::{Error, Result};
use crate::network::CouplingGraph;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RunOutcome {
    Reached(f64),
    Timeout,
    /// The integrator diverged at this step.
    Aborted { step: usize },
}

impl RunOutcome {
    pub fn time(&self) -> Option<f64> {
        match self {
            RunOutcome::Reached(t) => Some(*t),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiplierRecord {
    pub multiplier: f64,
    /// Mean over runs that reached the event; `None` when none did.
    pub mean_time: Option<f64>,
    /// Sample standard deviation over the same runs.
    pub std_time: Option<f64>,
    /// Runs that never reached the event, aborted runs included.
    pub timeout_count: usize,
    pub aborted_count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub records: Vec<MultiplierRecord>,
    /// `raw[m][k]`: outcome of run `k` at multiplier index `m`.
    pub raw: Vec<Vec<RunOutcome>>,
}

/// Model for one multiplier: pacemaker or every coupling scaled by `m`.
pub(crate) fn scaled_params(spec: &ExperimentSpec, graph: &CouplingGraph, inputs: &RunInputs, m: f64) -> Result<ModelParams> {
    let base = spec.params(graph.clone(), inputs.w.clone())?;
    match spec.sweep_target {
        SweepTarget::Pacemaker => base.with_pacemaker(base.pacemaker().scaled(m)?),
        SweepTarget::Coupling => base.with_graph(graph.scaled(m)?),
    }
}

pub(crate) fn shared_inputs(spec: &ExperimentSpec) -> Result<(CouplingGraph, Vec<RunInputs>)> {
    let graph = spec.resolve_graph()?;
    let inputs = (0..spec.runs).map(|k| spec.run_inputs(k)).collect::<Result<Vec<_>>>()?;
    Ok((graph, inputs))
}

fn run_until_event(params: &ModelParams, xi0: &[f64], spec: &ExperimentSpec, detector: &dyn EventDetector) -> Result<RunOutcome> {
    let mut hit = None;
    let res = integrate_observed(params, xi0, &spec.integrator, |s| {
        if detector.reached(s) {
            hit = Some(s.t);
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    match res {
        Ok(_) => Ok(hit.map_or(RunOutcome::Timeout, RunOutcome::Reached)),
        Err(Error::Blowup { step, .. }) => Ok(RunOutcome::Aborted { step }),
        Err(e) => Err(e),
    }
}

fn aggregate(multiplier: f64, outcomes: &[RunOutcome]) -> MultiplierRecord {
    let times: Vec<f64> = outcomes.iter().filter_map(RunOutcome::time).collect();
    let count = times.len();
    let mean = (count > 0).then(|| times.iter().sum::<f64>() / count as f64);
    let std = mean.map(|mu| {
        if count < 2 {
            0.0
        } else {
            (times.iter().map(|t| (t - mu).powi(2)).sum::<f64>() / (count - 1) as f64).sqrt()
        }
    });
    MultiplierRecord {
        multiplier,
        mean_time: mean,
        std_time: std,
        timeout_count: outcomes.len() - count,
        aborted_count: outcomes.iter().filter(|o| matches!(o, RunOutcome::Aborted { .. })).count(),
    }
}

/// Time-to-sync or time-to-lock sweep over the multipliers. Run `k` uses the
/// same initial phases and natural frequencies at every multiplier. Runs are
/// executed in parallel and merged in index order.
pub fn run_sweep(spec: &ExperimentSpec) -> Result<SweepResult> {
    spec.validate()?;
    let detector: Box<dyn EventDetector> = match spec.kind {
        ExperimentKind::SyncSweep => Box::new(SyncDetector {
            threshold: spec.sync_threshold,
        }),
        ExperimentKind::LockingSweep => Box::new(LockDetector { tol: spec.lock_tol }),
        ExperimentKind::Trapping => {
            return Err(Error::config("kind", "run_sweep needs sync_sweep or locking_sweep"));
        }
    };
    let (graph, inputs) = shared_inputs(spec)?;
    let runs = spec.runs;
    let flat: Vec<RunOutcome> = (0..spec.multipliers.len() * runs)
        .into_par_iter()
        .map(|idx| {
            let (mi, k) = (idx / runs, idx % runs);
            let params = scaled_params(spec, &graph, &inputs[k], spec.multipliers[mi])?;
            run_until_event(&params, &inputs[k].xi0, spec, detector.as_ref())
        })
        .collect::<Result<_>>()?;

    let raw: Vec<Vec<RunOutcome>> = flat.chunks(runs).map(<[RunOutcome]>::to_vec).collect();
    let records = spec
        .multipliers
        .iter()
        .zip(&raw)
        .map(|(m, outcomes)| aggregate(*m, outcomes))
        .collect();
    Ok(SweepResult { records, raw })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aggregate_excludes_timeouts() {
        let rec = aggregate(
            2.0,
            &[
                RunOutcome::Reached(1.0),
                RunOutcome::Timeout,
                RunOutcome::Reached(3.0),
                RunOutcome::Aborted { step: 4 },
            ],
        );
        assert_eq!(rec.mean_time, Some(2.0));
        assert!((rec.std_time.unwrap() - 2.0_f64.sqrt()).abs() < 1e-15);
        assert_eq!(rec.timeout_count, 2);
        assert_eq!(rec.aborted_count, 1);
    }

    #[test]
    fn all_timeouts_have_no_mean() {
        let rec = aggregate(1.0, &[RunOutcome::Timeout; 3]);
        assert_eq!(rec.mean_time, None);
        assert_eq!(rec.std_time, None);
        assert_eq!(rec.timeout_count, 3);
    }

    #[test]
    fn single_run_is_deterministic() {
        let spec = ExperimentSpec::from_json_str(
            r#"{"n": 4, "multipliers": [1], "runs": 1, "seed": 9, "t_max": 100, "g": [1, 0, 0, 0]}"#,
        )
        .unwrap();
        let a = run_sweep(&spec).unwrap();
        let b = run_sweep(&spec).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.raw.len(), 1);
        assert_eq!(a.raw[0].len(), 1);
    }

    #[test]
    fn trapping_kind_is_rejected() {
        let spec = ExperimentSpec::from_json_str(r#"{"kind": "trapping", "runs": 1}"#).unwrap();
        assert!(run_sweep(&spec).is_err());
    }
}
