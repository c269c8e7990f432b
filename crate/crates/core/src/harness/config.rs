//! Experiment definitions and their JSON form.
//!
//! ```json
//! {
//!   "kind": "sync_sweep",
//!   "n": 9,
//!   "coupling": {"random_uniform": [0.0, 0.1]},
//!   "g": [1, 0, 0, 0, 0, 0, 0, 0, 0],
//!   "w0": 1.0,
//!   "w": "identical",
//!   "xi0": {"uniform": [-1.5707963, 1.5707963]},
//!   "dt": 0.01, "t_max": 500, "record_every": 1,
//!   "sweep_target": "pacemaker",
//!   "multipliers": [1, 2, 3],
//!   "runs": 100,
//!   "seed": 1
//! }
//! ```
//!
//! Fields are validated one by one so errors name the offending field.

use std::f64::consts::{FRAC_PI_2, PI};
use std::path::Path;
use std::str::FromStr;

use serde_json::{Map, Value};

use super::rng::{graph_rng, random_connected_coupling, run_rng, sample_initial_phases, sample_uniform};
use crate::dynamics::{wrap_phase, IntegratorConfig, ModelParams};
use crate::error::{Error, Result};
use crate::network::{CouplingGraph, PacemakerCoupling};

const KNOWN_FIELDS: &[&str] = &[
    "kind",
    "n",
    "coupling",
    "g",
    "w0",
    "w",
    "phi0",
    "xi0",
    "dt",
    "t_max",
    "record_every",
    "sweep_target",
    "multipliers",
    "runs",
    "seed",
    "delta",
    "epsilon_override",
    "sync_threshold",
    "lock_tol",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    SyncSweep,
    LockingSweep,
    Trapping,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::SyncSweep => "sync_sweep",
            ExperimentKind::LockingSweep => "locking_sweep",
            ExperimentKind::Trapping => "trapping",
        }
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sync_sweep" => Ok(ExperimentKind::SyncSweep),
            "locking_sweep" => Ok(ExperimentKind::LockingSweep),
            "trapping" => Ok(ExperimentKind::Trapping),
            other => Err(Error::config(
                "kind",
                format!("expected sync_sweep, locking_sweep or trapping, got `{other}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepTarget {
    Pacemaker,
    Coupling,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CouplingSource {
    Explicit(CouplingGraph),
    /// Every pair drawn uniformly from `[lo, hi]`, redrawn until connected.
    RandomUniform { lo: f64, hi: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum InitialPhases {
    Explicit(Vec<f64>),
    Uniform { lo: f64, hi: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum NaturalFrequencies {
    Identical,
    Explicit(Vec<f64>),
    Uniform { lo: f64, hi: f64 },
}

/// Per-run draws shared by every multiplier of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct RunInputs {
    pub xi0: Vec<f64>,
    pub w: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub kind: ExperimentKind,
    pub n: usize,
    pub coupling: CouplingSource,
    pub base_g: Vec<f64>,
    pub multipliers: Vec<f64>,
    pub sweep_target: SweepTarget,
    pub runs: usize,
    pub init: InitialPhases,
    pub natural_freq: NaturalFrequencies,
    pub w0: f64,
    pub phi0: f64,
    pub seed: u64,
    pub integrator: IntegratorConfig,
    pub delta: Option<f64>,
    pub epsilon_override: Option<f64>,
    pub sync_threshold: f64,
    pub lock_tol: f64,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        let n = 9;
        ExperimentSpec {
            kind: ExperimentKind::SyncSweep,
            n,
            coupling: CouplingSource::RandomUniform { lo: 0.0, hi: 0.1 },
            base_g: vec![1.0; n],
            multipliers: (1..=10).map(f64::from).collect(),
            sweep_target: SweepTarget::Pacemaker,
            runs: 100,
            init: InitialPhases::Uniform {
                lo: -FRAC_PI_2,
                hi: FRAC_PI_2,
            },
            natural_freq: NaturalFrequencies::Identical,
            w0: 1.0,
            phi0: 0.0,
            seed: 0,
            integrator: IntegratorConfig::default(),
            delta: None,
            epsilon_override: None,
            sync_threshold: 0.99,
            lock_tol: 1e-3,
        }
    }
}

fn as_f64(field: &str, v: &Value) -> Result<f64> {
    v.as_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::config(field, format!("expected a finite number, got {v}")))
}

fn as_vec(field: &str, v: &Value) -> Result<Vec<f64>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::config(field, format!("expected an array of numbers, got {v}")))?;
    arr.iter().map(|x| as_f64(field, x)).collect()
}

fn as_pair(field: &str, v: &Value) -> Result<(f64, f64)> {
    match as_vec(field, v)?.as_slice() {
        [lo, hi] if lo <= hi => Ok((*lo, *hi)),
        _ => Err(Error::config(field, format!("expected [lo, hi] with lo <= hi, got {v}"))),
    }
}

fn as_usize(field: &str, v: &Value) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::config(field, format!("expected a nonnegative integer, got {v}")))
}

/// `{"<key>": [lo, hi]}`.
fn tagged_pair(field: &str, key: &str, v: &Value) -> Option<Result<(f64, f64)>> {
    let obj = v.as_object()?;
    if obj.len() != 1 {
        return None;
    }
    obj.get(key).map(|p| as_pair(field, p))
}

fn parse_coupling(v: &Value) -> Result<CouplingSource> {
    if let Some(pair) = tagged_pair("coupling", "random_uniform", v) {
        let (lo, hi) = pair?;
        if lo < 0.0 {
            return Err(Error::config("coupling", "random_uniform bounds must be nonnegative"));
        }
        return Ok(CouplingSource::RandomUniform { lo, hi });
    }
    let rows = v
        .as_array()
        .ok_or_else(|| Error::config("coupling", "expected an n x n matrix or {\"random_uniform\": [lo, hi]}"))?;
    let rows: Vec<Vec<f64>> = rows.iter().map(|r| as_vec("coupling", r)).collect::<Result<_>>()?;
    let graph = CouplingGraph::from_rows(&rows).map_err(|e| Error::config("coupling", e.to_string()))?;
    Ok(CouplingSource::Explicit(graph))
}

fn parse_xi0(v: &Value) -> Result<InitialPhases> {
    if let Some(pair) = tagged_pair("xi0", "uniform", v) {
        let (lo, hi) = pair?;
        return Ok(InitialPhases::Uniform { lo, hi });
    }
    if v.is_array() {
        return Ok(InitialPhases::Explicit(as_vec("xi0", v)?));
    }
    Err(Error::config("xi0", "expected a vector or {\"uniform\": [lo, hi]}"))
}

fn parse_w(v: &Value) -> Result<NaturalFrequencies> {
    if v.as_str() == Some("identical") {
        return Ok(NaturalFrequencies::Identical);
    }
    if let Some(pair) = tagged_pair("w", "uniform", v) {
        let (lo, hi) = pair?;
        return Ok(NaturalFrequencies::Uniform { lo, hi });
    }
    if v.is_array() {
        return Ok(NaturalFrequencies::Explicit(as_vec("w", v)?));
    }
    Err(Error::config("w", "expected a vector, \"identical\" or {\"uniform\": [lo, hi]}"))
}

fn parse_target(v: &Value) -> Result<SweepTarget> {
    match v.as_str() {
        Some("pacemaker") => Ok(SweepTarget::Pacemaker),
        Some("coupling") => Ok(SweepTarget::Coupling),
        _ => Err(Error::config("sweep_target", format!("expected \"pacemaker\" or \"coupling\", got {v}"))),
    }
}

impl ExperimentSpec {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::config("<root>", e.to_string()))?;
        let map = value
            .as_object()
            .ok_or_else(|| Error::config("<root>", "config must be a JSON object"))?;
        Self::from_map(map)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config("<file>", format!("cannot read {}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    fn from_map(map: &Map<String, Value>) -> Result<Self> {
        if let Some(unknown) = map.keys().find(|k| !KNOWN_FIELDS.contains(&k.as_str())) {
            return Err(Error::config(unknown.as_str(), "unknown field"));
        }
        let mut spec = ExperimentSpec::default();
        let get = |k: &str| map.get(k);

        if let Some(v) = get("kind") {
            let s = v.as_str().ok_or_else(|| Error::config("kind", "expected a string"))?;
            spec.kind = s.parse()?;
        }
        if let Some(v) = get("coupling") {
            spec.coupling = parse_coupling(v)?;
        }
        let g = get("g").map(|v| as_vec("g", v)).transpose()?;
        spec.n = match get("n") {
            Some(v) => as_usize("n", v)?,
            None => match (&spec.coupling, &g) {
                (CouplingSource::Explicit(graph), _) => graph.n(),
                (_, Some(g)) => g.len(),
                _ => spec.n,
            },
        };
        spec.base_g = g.unwrap_or_else(|| vec![1.0; spec.n]);
        if let Some(v) = get("w0") {
            spec.w0 = as_f64("w0", v)?;
        }
        if let Some(v) = get("w") {
            spec.natural_freq = parse_w(v)?;
        }
        if let Some(v) = get("phi0") {
            spec.phi0 = as_f64("phi0", v)?;
        }
        if let Some(v) = get("xi0") {
            spec.init = parse_xi0(v)?;
        }
        if spec.kind == ExperimentKind::Trapping {
            spec.integrator.t_max = 1000.0;
        }
        if let Some(v) = get("dt") {
            spec.integrator.dt = as_f64("dt", v)?;
        }
        if let Some(v) = get("t_max") {
            spec.integrator.t_max = as_f64("t_max", v)?;
        }
        if let Some(v) = get("record_every") {
            spec.integrator.record_every = as_usize("record_every", v)?;
        }
        if let Some(v) = get("sweep_target") {
            spec.sweep_target = parse_target(v)?;
        }
        if let Some(v) = get("multipliers") {
            spec.multipliers = as_vec("multipliers", v)?;
        }
        if let Some(v) = get("runs") {
            spec.runs = as_usize("runs", v)?;
        }
        if let Some(v) = get("seed") {
            spec.seed = v
                .as_u64()
                .ok_or_else(|| Error::config("seed", format!("expected an unsigned 64-bit integer, got {v}")))?;
        }
        if let Some(v) = get("delta") {
            spec.delta = Some(as_f64("delta", v)?);
        }
        if let Some(v) = get("epsilon_override") {
            spec.epsilon_override = Some(as_f64("epsilon_override", v)?);
        }
        if let Some(v) = get("sync_threshold") {
            spec.sync_threshold = as_f64("sync_threshold", v)?;
        }
        if let Some(v) = get("lock_tol") {
            spec.lock_tol = as_f64("lock_tol", v)?;
        }
        spec.validate()?;
        Ok(spec)
    }

    /// Checks every field invariant; errors name the field.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        if n == 0 {
            return Err(Error::config("n", "must be at least 1"));
        }
        if let CouplingSource::Explicit(graph) = &self.coupling {
            if graph.n() != n {
                return Err(Error::config("coupling", format!("matrix is {0}x{0} but n = {n}", graph.n())));
            }
        }
        if self.base_g.len() != n {
            return Err(Error::config("g", format!("has {} entries, expected {n}", self.base_g.len())));
        }
        PacemakerCoupling::new(self.base_g.clone()).map_err(|e| Error::config("g", e.to_string()))?;
        match &self.init {
            InitialPhases::Explicit(v) if v.len() != n => {
                return Err(Error::config("xi0", format!("has {} entries, expected {n}", v.len())));
            }
            InitialPhases::Uniform { lo, hi } if *lo < -PI - 1e-12 || *hi > PI + 1e-12 => {
                return Err(Error::config("xi0", "uniform interval must lie within [-pi, pi]"));
            }
            _ => {}
        }
        if let NaturalFrequencies::Explicit(v) = &self.natural_freq {
            if v.len() != n {
                return Err(Error::config("w", format!("has {} entries, expected {n}", v.len())));
            }
        }
        self.integrator.validate().map_err(|e| Error::config("dt/t_max/record_every", e.to_string()))?;
        if self.multipliers.is_empty() || self.multipliers.iter().any(|m| m.is_nan() || *m <= 0.0) {
            return Err(Error::config("multipliers", "must be a nonempty list of positive numbers"));
        }
        if self.runs == 0 {
            return Err(Error::config("runs", "must be at least 1"));
        }
        if let Some(d) = self.delta {
            if !(d > 0.0 && d < PI) {
                return Err(Error::config("delta", "must lie in (0, pi)"));
            }
        }
        if let Some(e) = self.epsilon_override {
            if !(0.0..PI).contains(&e) {
                return Err(Error::config("epsilon_override", "must lie in [0, pi)"));
            }
        }
        if !(self.sync_threshold > 0.0 && self.sync_threshold <= 1.0) {
            return Err(Error::config("sync_threshold", "must lie in (0, 1]"));
        }
        if self.lock_tol.is_nan() || self.lock_tol <= 0.0 {
            return Err(Error::config("lock_tol", "must be positive"));
        }
        Ok(())
    }

    /// The coupling graph; random sources draw from the graph stream of `seed`.
    pub fn resolve_graph(&self) -> Result<CouplingGraph> {
        match &self.coupling {
            CouplingSource::Explicit(g) => Ok(g.clone()),
            CouplingSource::RandomUniform { lo, hi } => {
                random_connected_coupling(self.n, *lo, *hi, &mut graph_rng(self.seed))
            }
        }
    }

    /// Initial phases (wrapped into `[−π, π)`) and natural frequencies of run `run`.
    pub fn run_inputs(&self, run: usize) -> Result<RunInputs> {
        let mut rng = run_rng(self.seed, run as u64);
        let xi0 = match &self.init {
            InitialPhases::Explicit(v) => v.clone(),
            InitialPhases::Uniform { lo, hi } => {
                sample_initial_phases(self.n, (lo.max(-PI), hi.min(PI)), &mut rng)?
            }
        };
        let xi0 = xi0.into_iter().map(wrap_phase).collect();
        let w = match &self.natural_freq {
            NaturalFrequencies::Identical => vec![self.w0; self.n],
            NaturalFrequencies::Explicit(v) => v.clone(),
            NaturalFrequencies::Uniform { lo, hi } => sample_uniform(self.n, (*lo, *hi), &mut rng)?,
        };
        Ok(RunInputs { xi0, w })
    }

    /// Model for `graph` with the base pacemaker and the given frequencies.
    pub fn params(&self, graph: CouplingGraph, w: Vec<f64>) -> Result<ModelParams> {
        let pm = PacemakerCoupling::new(self.base_g.clone())?;
        Ok(ModelParams::new(graph, pm, self.w0, w)?.with_phi0(self.phi0))
    }

    /// ε used for bounds and conditions: the override or `max |ξ_i(0)|`.
    pub fn epsilon_for(&self, xi0: &[f64]) -> f64 {
        self.epsilon_override
            .unwrap_or_else(|| xi0.iter().fold(0.0_f64, |m, x| m.max(x.abs())))
    }
}
