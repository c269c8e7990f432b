//! Vector fields and fixed-step integration.
//!
//! The relative phase `ξ_i = φ_i − φ_0` of node `i` with respect to the
//! pacemaker evolves as
//!
//! ```text
//! ξ̇_i = (w_i − w_0) + Σ_{j≠i} a_ij sin(ξ_j − ξ_i) − g_i sin(ξ_i)
//!     = [Ω − G sin ξ − B W sin(Bᵀ ξ)]_i
//! ```
//!
//! Integration uses classical RK4 with a fixed step. Phases are never
//! re-wrapped during a run; only initial conditions go through [`wrap_phase`].

use std::f64::consts::PI;
use std::ops::ControlFlow;

use ndarray::{Array1, Array2, ArrayView1};

use crate::analysis::order_parameter;
use crate::error::{Error, Result};
use crate::network::{CouplingGraph, IncidenceRepresentation, PacemakerCoupling};

/// |ξ_i| above this is treated as a diverged integration.
pub const BLOWUP_THRESHOLD: f64 = 1e6;

/// Everything the vector field needs. Incidence form and Laplacian are
/// derived once at construction.
#[derive(Debug, Clone)]
pub struct ModelParams {
    graph: CouplingGraph,
    pacemaker: PacemakerCoupling,
    incidence: IncidenceRepresentation,
    laplacian: Array2<f64>,
    w0: f64,
    w: Vec<f64>,
    omega: Vec<f64>,
    phi0_init: f64,
}

impl ModelParams {
    pub fn new(graph: CouplingGraph, pacemaker: PacemakerCoupling, w0: f64, w: Vec<f64>) -> Result<Self> {
        let n = graph.n();
        if pacemaker.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: pacemaker.len(),
            });
        }
        if w.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: w.len(),
            });
        }
        if !w0.is_finite() || w.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams("natural frequencies must be finite".into()));
        }
        let incidence = graph.incidence();
        let laplacian = incidence.laplacian();
        let omega = w.iter().map(|wi| wi - w0).collect();
        Ok(ModelParams {
            graph,
            pacemaker,
            incidence,
            laplacian,
            w0,
            w,
            omega,
            phi0_init: 0.0,
        })
    }

    /// All nodes share the pacemaker frequency `w0`.
    pub fn identical(graph: CouplingGraph, pacemaker: PacemakerCoupling, w0: f64) -> Result<Self> {
        let n = graph.n();
        Self::new(graph, pacemaker, w0, vec![w0; n])
    }

    pub fn with_phi0(mut self, phi0: f64) -> Self {
        self.phi0_init = phi0;
        self
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn graph(&self) -> &CouplingGraph {
        &self.graph
    }

    pub fn pacemaker(&self) -> &PacemakerCoupling {
        &self.pacemaker
    }

    pub fn incidence(&self) -> &IncidenceRepresentation {
        &self.incidence
    }

    pub fn laplacian(&self) -> &Array2<f64> {
        &self.laplacian
    }

    pub fn w0(&self) -> f64 {
        self.w0
    }

    pub fn w(&self) -> &[f64] {
        &self.w
    }

    /// `Ω = w − w0·1`.
    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    pub fn omega_norm(&self) -> f64 {
        self.omega.iter().map(|o| o * o).sum::<f64>().sqrt()
    }

    pub fn phi0_init(&self) -> f64 {
        self.phi0_init
    }

    pub fn is_identical(&self) -> bool {
        self.omega.iter().all(|o| *o == 0.0)
    }

    /// Pacemaker phase `φ_0(t) = w0·t + φ_0(0)`.
    pub fn pacemaker_phase(&self, t: f64) -> f64 {
        self.w0 * t + self.phi0_init
    }

    pub fn with_pacemaker(&self, pacemaker: PacemakerCoupling) -> Result<Self> {
        Ok(Self::new(self.graph.clone(), pacemaker, self.w0, self.w.clone())?.with_phi0(self.phi0_init))
    }

    pub fn with_graph(&self, graph: CouplingGraph) -> Result<Self> {
        Ok(Self::new(graph, self.pacemaker.clone(), self.w0, self.w.clone())?.with_phi0(self.phi0_init))
    }

    pub fn with_frequencies(&self, w: Vec<f64>) -> Result<Self> {
        Ok(Self::new(self.graph.clone(), self.pacemaker.clone(), self.w0, w)?.with_phi0(self.phi0_init))
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len == self.n() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n(),
                found: len,
            })
        }
    }

    /// Edge-list evaluation of the relative-phase field without allocation.
    fn field_into(&self, xi: &[f64], out: &mut [f64]) {
        let g = self.pacemaker.strengths();
        for i in 0..xi.len() {
            out[i] = self.omega[i] - g[i] * xi[i].sin();
        }
        for (&(i, j), &w) in self.incidence.edges().iter().zip(self.incidence.weights()) {
            let s = w * (xi[j] - xi[i]).sin();
            out[i] += s;
            out[j] -= s;
        }
    }
}

/// Relative-phase field, component by component over the coupling matrix.
pub fn relative_phase_rhs(xi: &[f64], params: &ModelParams) -> Result<Vec<f64>> {
    params.check_dim(xi.len())?;
    let a = params.graph.weights();
    let g = params.pacemaker.strengths();
    Ok((0..xi.len())
        .map(|i| {
            let coupling: f64 = (0..xi.len())
                .filter(|&j| j != i)
                .map(|j| a[[i, j]] * (xi[j] - xi[i]).sin())
                .sum();
            params.omega[i] + coupling - g[i] * xi[i].sin()
        })
        .collect())
}

/// Relative-phase field in matrix form `Ω − G sin ξ − B W sin(Bᵀ ξ)`.
pub fn relative_phase_rhs_matrix(xi: &[f64], params: &ModelParams) -> Result<Vec<f64>> {
    params.check_dim(xi.len())?;
    let xi = ArrayView1::from(xi);
    let inc = &params.incidence;
    let sin_edges = inc.b().t().dot(&xi).mapv(f64::sin) * &Array1::from(inc.weights().to_vec());
    let g_sin = Array1::from(params.pacemaker.strengths().to_vec()) * xi.mapv(f64::sin);
    let out = Array1::from(params.omega.clone()) - g_sin - inc.b().dot(&sin_edges);
    Ok(out.to_vec())
}

/// Full-phase field. Returns `(φ̇_0, φ̇)`.
pub fn full_phase_rhs(phi0: f64, phi: &[f64], params: &ModelParams) -> Result<(f64, Vec<f64>)> {
    params.check_dim(phi.len())?;
    let a = params.graph.weights();
    let g = params.pacemaker.strengths();
    let dphi = (0..phi.len())
        .map(|i| {
            let coupling: f64 = (0..phi.len())
                .filter(|&j| j != i)
                .map(|j| a[[i, j]] * (phi[j] - phi[i]).sin())
                .sum();
            params.w[i] + coupling + g[i] * (phi0 - phi[i]).sin()
        })
        .collect();
    Ok((params.w0, dphi))
}

/// Map `x` into `[−π, π)`.
pub fn wrap_phase(x: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let r = x - two_pi * ((x + PI) / two_pi).floor();
    if r >= PI {
        r - two_pi
    } else {
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub dt: f64,
    pub t_max: f64,
    pub record_every: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            dt: 0.01,
            t_max: 500.0,
            record_every: 1,
        }
    }
}

impl IntegratorConfig {
    pub fn new(dt: f64, t_max: f64, record_every: usize) -> Result<Self> {
        let cfg = IntegratorConfig { dt, t_max, record_every };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidParams(format!("dt = {} must be positive", self.dt)));
        }
        if !(self.t_max >= self.dt && self.t_max.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "t_max = {} must be at least dt = {}",
                self.t_max, self.dt
            )));
        }
        if self.record_every == 0 {
            return Err(Error::InvalidParams("record_every must be at least 1".into()));
        }
        Ok(())
    }

    /// Number of steps needed to reach `t_max`.
    pub fn steps(&self) -> usize {
        ((self.t_max / self.dt) - 1e-9).ceil().max(1.0) as usize
    }
}

/// Classical fourth-order Runge–Kutta with reusable stage buffers.
#[derive(Debug, Clone)]
pub struct Rk4 {
    k1: Vec<f64>,
    k2: Vec<f64>,
    k3: Vec<f64>,
    k4: Vec<f64>,
    tmp: Vec<f64>,
}

impl Rk4 {
    pub fn new(dim: usize) -> Self {
        Rk4 {
            k1: vec![0.0; dim],
            k2: vec![0.0; dim],
            k3: vec![0.0; dim],
            k4: vec![0.0; dim],
            tmp: vec![0.0; dim],
        }
    }

    /// Advance `y` from `t` to `t + dt` in place.
    pub fn step<F>(&mut self, f: &mut F, t: f64, y: &mut [f64], dt: f64)
    where
        F: FnMut(f64, &[f64], &mut [f64]),
    {
        let half = 0.5 * dt;
        f(t, y, &mut self.k1);
        for ((tmp, y), k) in self.tmp.iter_mut().zip(y.iter()).zip(&self.k1) {
            *tmp = y + half * k;
        }
        f(t + half, &self.tmp, &mut self.k2);
        for ((tmp, y), k) in self.tmp.iter_mut().zip(y.iter()).zip(&self.k2) {
            *tmp = y + half * k;
        }
        f(t + half, &self.tmp, &mut self.k3);
        for ((tmp, y), k) in self.tmp.iter_mut().zip(y.iter()).zip(&self.k3) {
            *tmp = y + dt * k;
        }
        f(t + dt, &self.tmp, &mut self.k4);
        for (i, y) in y.iter_mut().enumerate() {
            *y += dt / 6.0 * (self.k1[i] + 2.0 * self.k2[i] + 2.0 * self.k3[i] + self.k4[i]);
        }
    }
}

/// One recorded sample, borrowed from the integrator.
#[derive(Debug, Clone, Copy)]
pub struct SampleView<'a> {
    pub step: usize,
    pub t: f64,
    pub xi: &'a [f64],
    pub zeta: &'a [f64],
    pub r: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub xi_samples: Vec<Vec<f64>>,
    pub zeta_samples: Vec<Vec<f64>>,
    pub r_samples: Vec<f64>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_xi(&self) -> Option<&[f64]> {
        self.xi_samples.last().map(Vec::as_slice)
    }

    pub fn push(&mut self, s: &SampleView<'_>) {
        self.times.push(s.t);
        self.xi_samples.push(s.xi.to_vec());
        self.zeta_samples.push(s.zeta.to_vec());
        self.r_samples.push(s.r);
    }
}

/// Order parameter of the pacemaker plus all nodes, with the phases rebuilt
/// from the relative ones at time `t`.
fn order_parameter_at(params: &ModelParams, t: f64, xi: &[f64], scratch: &mut Vec<f64>) -> f64 {
    let phi0 = params.pacemaker_phase(t);
    scratch.clear();
    scratch.extend(xi.iter().map(|x| phi0 + x));
    order_parameter(phi0, scratch)
}

/// Integrate the relative-phase dynamics, handing every recorded sample to
/// `visit`. Stops early when `visit` breaks. Returns the state at the last
/// step taken.
pub fn integrate_observed<F>(params: &ModelParams, xi0: &[f64], cfg: &IntegratorConfig, mut visit: F) -> Result<Vec<f64>>
where
    F: FnMut(&SampleView<'_>) -> ControlFlow<()>,
{
    params.check_dim(xi0.len())?;
    cfg.validate()?;
    if xi0.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParams("initial phases must be finite".into()));
    }
    let n = params.n();
    let steps = cfg.steps();
    let mut xi = xi0.to_vec();
    let mut zeta = vec![0.0; n];
    let mut phases = Vec::with_capacity(n);
    let mut rk = Rk4::new(n);
    let mut field = |_t: f64, y: &[f64], out: &mut [f64]| params.field_into(y, out);

    for step in 0..=steps {
        let t = step as f64 * cfg.dt;
        if step > 0 {
            rk.step(&mut field, (step - 1) as f64 * cfg.dt, &mut xi, cfg.dt);
            if xi.iter().any(|x| !x.is_finite() || x.abs() > BLOWUP_THRESHOLD) {
                return Err(Error::Blowup { step, time: t });
            }
        }
        if step % cfg.record_every == 0 || step == steps {
            params.field_into(&xi, &mut zeta);
            let r = order_parameter_at(params, t, &xi, &mut phases);
            let sample = SampleView {
                step,
                t,
                xi: &xi,
                zeta: &zeta,
                r,
            };
            if visit(&sample).is_break() {
                break;
            }
        }
    }
    Ok(xi)
}

pub fn integrate(params: &ModelParams, xi0: &[f64], cfg: &IntegratorConfig) -> Result<Trajectory> {
    let mut traj = Trajectory::default();
    integrate_observed(params, xi0, cfg, |s| {
        traj.push(s);
        ControlFlow::Continue(())
    })?;
    Ok(traj)
}

/// Samples of the original (full-phase) model.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FullPhaseTrajectory {
    pub times: Vec<f64>,
    pub phi0: Vec<f64>,
    pub phi: Vec<Vec<f64>>,
}

/// Integrate the pacemaker together with all node phases. The state vector is
/// `[φ_0, φ_1, …, φ_n]`.
pub fn integrate_full_phase(
    params: &ModelParams,
    phi0: f64,
    phi: &[f64],
    cfg: &IntegratorConfig,
) -> Result<FullPhaseTrajectory> {
    params.check_dim(phi.len())?;
    cfg.validate()?;
    let n = params.n();
    let a = params.graph.weights();
    let g = params.pacemaker.strengths();
    let mut field = |_t: f64, y: &[f64], out: &mut [f64]| {
        out[0] = params.w0;
        for i in 0..n {
            let mut acc = params.w[i] + g[i] * (y[0] - y[i + 1]).sin();
            for j in 0..n {
                if j != i {
                    acc += a[[i, j]] * (y[j + 1] - y[i + 1]).sin();
                }
            }
            out[i + 1] = acc;
        }
    };
    let mut y = Vec::with_capacity(n + 1);
    y.push(phi0);
    y.extend_from_slice(phi);
    let mut rk = Rk4::new(n + 1);
    let mut out = FullPhaseTrajectory::default();
    let steps = cfg.steps();
    for step in 0..=steps {
        let t = step as f64 * cfg.dt;
        if step > 0 {
            rk.step(&mut field, (step - 1) as f64 * cfg.dt, &mut y, cfg.dt);
            if y.iter().any(|x| !x.is_finite()) {
                return Err(Error::Blowup { step, time: t });
            }
        }
        if step % cfg.record_every == 0 || step == steps {
            out.times.push(t);
            out.phi0.push(y[0]);
            out.phi.push(y[1..].to_vec());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_node(kappa: f64) -> ModelParams {
        let graph = CouplingGraph::from_rows(&[vec![0.0, kappa], vec![kappa, 0.0]]).unwrap();
        let pm = PacemakerCoupling::new(vec![kappa, 0.0]).unwrap();
        ModelParams::identical(graph, pm, 1.0).unwrap()
    }

    fn single(g: f64) -> ModelParams {
        let graph = CouplingGraph::empty(1).unwrap();
        ModelParams::identical(graph, PacemakerCoupling::new(vec![g]).unwrap(), 1.0).unwrap()
    }

    #[test]
    fn fixed_point_has_zero_field() {
        let p = two_node(3.0);
        assert_eq!(relative_phase_rhs(&[0.0, 0.0], &p).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn single_node_field() {
        let d = relative_phase_rhs(&[PI / 2.0], &single(1.0)).unwrap();
        assert!((d[0] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn two_node_counterexample_field() {
        // κ(sin 1.2π − sin(−0.6π)) and κ sin(−1.2π), evaluated by hand.
        for kappa in [1.0, 10.0] {
            let d = relative_phase_rhs(&[-0.6 * PI, 0.6 * PI], &two_node(kappa)).unwrap();
            assert!((d[0] - 0.363_271_264_002_680_4 * kappa).abs() < 1e-12 * kappa);
            assert!((d[1] - 0.587_785_252_292_473_1 * kappa).abs() < 1e-12 * kappa);
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        assert!(matches!(
            relative_phase_rhs(&[0.0], &two_node(1.0)),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        ));
        assert!(full_phase_rhs(0.0, &[0.0; 3], &two_node(1.0)).is_err());
    }

    #[test]
    fn full_phase_examples() {
        let p = two_node(2.0);
        let (d0, d) = full_phase_rhs(0.7, &[0.7, 0.7], &p).unwrap();
        assert_eq!(d0, 1.0);
        assert_eq!(d, vec![1.0, 1.0]);

        let (_, d) = full_phase_rhs(PI, &[PI / 2.0], &single(1.0)).unwrap();
        assert!((d[0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn wrap_examples() {
        assert!(wrap_phase(2.0 * PI).abs() < 1e-15);
        assert!((wrap_phase(-1.5 * PI) - PI / 2.0).abs() < 1e-15);
        assert_eq!(wrap_phase(0.5), 0.5);
        assert_eq!(wrap_phase(PI), -PI);
        assert_eq!(wrap_phase(-PI), -PI);
    }

    #[test]
    fn integrator_config_validation() {
        assert!(IntegratorConfig::new(0.0, 1.0, 1).is_err());
        assert!(IntegratorConfig::new(0.1, 0.05, 1).is_err());
        assert!(IntegratorConfig::new(0.1, 1.0, 0).is_err());
        assert_eq!(IntegratorConfig::new(0.1, 1.0, 1).unwrap().steps(), 10);
        assert_eq!(IntegratorConfig::new(0.1, 1.05, 1).unwrap().steps(), 11);
    }

    #[test]
    fn equilibrium_stays_put() {
        let cfg = IntegratorConfig::new(0.01, 5.0, 10).unwrap();
        let traj = integrate(&two_node(1.0), &[0.0, 0.0], &cfg).unwrap();
        assert!(traj.xi_samples.iter().flatten().all(|x| *x == 0.0));
        assert!(traj.r_samples.iter().all(|r| (r - 1.0).abs() < 1e-15));
    }

    #[test]
    fn samples_include_start_and_end() {
        let cfg = IntegratorConfig::new(0.1, 1.05, 4).unwrap();
        let traj = integrate(&single(1.0), &[0.3], &cfg).unwrap();
        let expected = [0.0, 0.4, 0.8, 1.1];
        assert_eq!(traj.len(), expected.len());
        for (t, e) in traj.times.iter().zip(expected) {
            assert!((t - e).abs() < 1e-12);
        }
        assert!(traj.times.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(traj.zeta_samples.len(), traj.len());
    }

    #[test]
    fn blowup_reports_step() {
        // a single stage of −1e7·sin ξ with dt = 1 already exceeds the threshold
        let cfg = IntegratorConfig::new(1.0, 100.0, 1).unwrap();
        let err = integrate(&single(1e7), &[0.1], &cfg).unwrap_err();
        match err {
            Error::Blowup { step, .. } => assert!(step >= 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn observer_can_stop_early() {
        let cfg = IntegratorConfig::new(0.01, 100.0, 1).unwrap();
        let mut seen = 0;
        integrate_observed(&single(1.0), &[0.1], &cfg, |s| {
            seen += 1;
            if s.step == 5 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })
        .unwrap();
        assert_eq!(seen, 6);
    }
}
