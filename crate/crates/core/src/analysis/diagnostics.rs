use crate::dynamics::{relative_phase_rhs, ModelParams, Trajectory};
use crate::error::{Error, Result};
use crate::network::IncidenceRepresentation;

use super::scalar::sinc;

/// Norm below which a relative-phase vector is treated as converged and
/// excluded from decay fits.
const FIT_FLOOR: f64 = 1e-12;

/// Modulus of the mean unit phasor over the pacemaker and all nodes,
/// normalised by `n + 1` so that it lies in `[0, 1]`.
pub fn order_parameter(phi0: f64, phi: &[f64]) -> f64 {
    let (re, im) = phi
        .iter()
        .fold((phi0.cos(), phi0.sin()), |(re, im), p| (re + p.cos(), im + p.sin()));
    let count = (phi.len() + 1) as f64;
    (re * re + im * im).sqrt() / count
}

/// `(V, V̇)` for `V = ½ ξᵀξ` along the relative-phase field.
pub fn lyapunov_diagnostics(xi: &[f64], params: &ModelParams) -> Result<(f64, f64)> {
    let rhs = relative_phase_rhs(xi, params)?;
    let v = 0.5 * xi.iter().map(|x| x * x).sum::<f64>();
    let v_dot = xi.iter().zip(&rhs).map(|(x, d)| x * d).sum();
    Ok((v, v_dot))
}

/// Diagonals of the state-dependent scaling matrices: sinc and cos of the
/// node phases (`s1`, `s3`) and of the edge differences `Bᵀξ` (`s2`, `s4`).
#[derive(Debug, Clone, PartialEq)]
pub struct SMatrices {
    pub s1: Vec<f64>,
    pub s2: Vec<f64>,
    pub s3: Vec<f64>,
    pub s4: Vec<f64>,
}

pub fn s_matrices(xi: &[f64], inc: &IncidenceRepresentation) -> SMatrices {
    let diffs = inc.bt_dot(xi);
    SMatrices {
        s1: xi.iter().map(|&x| sinc(x)).collect(),
        s2: diffs.iter().map(|&x| sinc(x)).collect(),
        s3: xi.iter().map(|x| x.cos()).collect(),
        s4: diffs.iter().map(|x| x.cos()).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFit {
    /// Empirical exponential rate, `−slope` of `ln‖ξ‖` against time.
    pub rate: f64,
    /// Fitted `ln‖ξ‖` at `t = 0`; absorbs the overshoot constant.
    pub intercept: f64,
    pub samples: usize,
}

/// Least-squares line through `(t, ln‖ξ(t)‖)` for samples in `[t_start, t_end]`.
/// The fit stops at the first sample whose norm falls below `1e-12`.
pub fn fit_decay_rate(traj: &Trajectory, window: (f64, f64)) -> Result<DecayFit> {
    let (t_start, t_end) = window;
    let mut points = Vec::new();
    for (t, xi) in traj.times.iter().zip(&traj.xi_samples) {
        if *t < t_start {
            continue;
        }
        if *t > t_end {
            break;
        }
        let norm = xi.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm <= FIT_FLOOR {
            break;
        }
        points.push((*t, norm.ln()));
    }
    if points.len() < 3 {
        return Err(Error::InsufficientSamples { found: points.len() });
    }
    let count = points.len() as f64;
    let mean_t = points.iter().map(|p| p.0).sum::<f64>() / count;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / count;
    let (sxy, sxx) = points.iter().fold((0.0, 0.0), |(sxy, sxx), (t, y)| {
        let dt = t - mean_t;
        (sxy + dt * (y - mean_y), sxx + dt * dt)
    });
    let slope = sxy / sxx;
    Ok(DecayFit {
        rate: -slope,
        intercept: mean_y - slope * mean_t,
        samples: points.len(),
    })
}
