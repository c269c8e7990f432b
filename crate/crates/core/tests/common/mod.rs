//! Independent reference computations shared by the integration tests.

#![allow(dead_code)]

use std::f64::consts::PI;

use kuramoto_pacemaker::harness::rng::{random_connected_coupling, run_rng};
use kuramoto_pacemaker::network::{CouplingGraph, PacemakerCoupling};
use kuramoto_pacemaker::dynamics::ModelParams;
use ndarray::Array2;
use rand::Rng;

/// Eigenvalues of `[[a, b], [b, c]]`, ascending.
pub fn eig2(a: f64, b: f64, c: f64) -> (f64, f64) {
    let mid = 0.5 * (a + c);
    let rad = (0.25 * (a - c) * (a - c) + b * b).sqrt();
    (mid - rad, mid + rad)
}

/// Eigenvalues of a symmetric 3×3 matrix as roots of its characteristic
/// cubic, by the trigonometric formula. Ascending.
pub fn eig3(m: &Array2<f64>) -> [f64; 3] {
    let p1 = m[[0, 1]].powi(2) + m[[0, 2]].powi(2) + m[[1, 2]].powi(2);
    let q = (m[[0, 0]] + m[[1, 1]] + m[[2, 2]]) / 3.0;
    let p2 = (m[[0, 0]] - q).powi(2) + (m[[1, 1]] - q).powi(2) + (m[[2, 2]] - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    if p == 0.0 {
        return [q; 3];
    }
    let mut b = m.clone();
    for i in 0..3 {
        b[[i, i]] -= q;
    }
    b /= p;
    let det = b[[0, 0]] * (b[[1, 1]] * b[[2, 2]] - b[[1, 2]] * b[[2, 1]])
        - b[[0, 1]] * (b[[1, 0]] * b[[2, 2]] - b[[1, 2]] * b[[2, 0]])
        + b[[0, 2]] * (b[[1, 0]] * b[[2, 1]] - b[[1, 1]] * b[[2, 0]]);
    let phi = (0.5 * det).clamp(-1.0, 1.0).acos() / 3.0;
    let hi = q + 2.0 * p * phi.cos();
    let lo = q + 2.0 * p * (phi + 2.0 * PI / 3.0).cos();
    [lo, 3.0 * q - hi - lo, hi]
}

pub fn random_symmetric<R: Rng>(n: usize, scale: f64, rng: &mut R) -> Array2<f64> {
    let mut m = Array2::zeros((n, n));
    for i in 0..n {
        for j in i..n {
            let v = scale * (2.0 * rng.gen::<f64>() - 1.0);
            m[[i, j]] = v;
            m[[j, i]] = v;
        }
    }
    m
}

/// Component-wise relative-phase field straight from its definition, with no
/// incidence matrix involved.
pub fn naive_rhs(xi: &[f64], a: &Array2<f64>, g: &[f64], omega: &[f64]) -> Vec<f64> {
    let n = xi.len();
    (0..n)
        .map(|i| {
            let coupling: f64 = (0..n).map(|j| a[[i, j]] * (xi[j] - xi[i]).sin()).sum();
            omega[i] - g[i] * xi[i].sin() + coupling
        })
        .collect()
}

/// A random model instance: size in `2..=max_n`, connected couplings in
/// `[0, a_hi]`, pacemaker strengths in `[0, g_hi]`, frequencies in `[0, 1]`.
pub fn random_instance(seed: u64, k: u64, max_n: usize, a_hi: f64, g_hi: f64, identical: bool) -> ModelParams {
    let mut rng = run_rng(seed, k);
    let n = rng.gen_range(2..=max_n);
    let graph = random_connected_coupling(n, 0.0, a_hi, &mut rng).unwrap();
    let g = (0..n).map(|_| g_hi * rng.gen::<f64>()).collect();
    let w0 = rng.gen::<f64>();
    let w = if identical { vec![w0; n] } else { (0..n).map(|_| rng.gen::<f64>()).collect() };
    ModelParams::new(graph, PacemakerCoupling::new(g).unwrap(), w0, w).unwrap()
}

pub fn two_nodes(kappa: f64) -> CouplingGraph {
    CouplingGraph::from_rows(&[vec![0.0, kappa], vec![kappa, 0.0]]).unwrap()
}

pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}
