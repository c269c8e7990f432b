//! Seeded random streams. Every run draws from its own ChaCha8 stream keyed by
//! `(seed, run index)`, so adding runs never reshuffles earlier ones.

use std::f64::consts::PI;

use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::network::CouplingGraph;

/// Stream reserved for the random coupling graph.
pub const GRAPH_STREAM: u64 = u64::MAX;

const MAX_GRAPH_ATTEMPTS: usize = 10_000;

pub fn run_rng(seed: u64, run: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(run);
    rng
}

pub fn graph_rng(seed: u64) -> ChaCha8Rng {
    run_rng(seed, GRAPH_STREAM)
}

/// `n` i.i.d. draws from the interval; a degenerate interval yields constants.
pub fn sample_uniform<R: Rng + ?Sized>(n: usize, interval: (f64, f64), rng: &mut R) -> Result<Vec<f64>> {
    let (lo, hi) = interval;
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(Error::InvalidInterval { lo, hi });
    }
    Ok((0..n).map(|_| lo + (hi - lo) * rng.gen::<f64>()).collect())
}

/// Initial relative phases, uniform on a sub-interval of `[−π, π]`.
pub fn sample_initial_phases<R: Rng + ?Sized>(n: usize, interval: (f64, f64), rng: &mut R) -> Result<Vec<f64>> {
    let (lo, hi) = interval;
    if lo < -PI || hi > PI {
        return Err(Error::InvalidInterval { lo, hi });
    }
    sample_uniform(n, interval, rng)
}

/// Couplings uniform on `[lo, hi]` for every pair, redrawn until the graph is
/// connected.
pub fn random_connected_coupling<R: Rng + ?Sized>(n: usize, lo: f64, hi: f64, rng: &mut R) -> Result<CouplingGraph> {
    if !(lo >= 0.0 && lo <= hi && hi.is_finite()) {
        return Err(Error::InvalidInterval { lo, hi });
    }
    for _ in 0..MAX_GRAPH_ATTEMPTS {
        let mut a = Array2::zeros((n, n));
        for i in 0..n {
            for j in (i + 1)..n {
                let v = lo + (hi - lo) * rng.gen::<f64>();
                a[[i, j]] = v;
                a[[j, i]] = v;
            }
        }
        let graph = CouplingGraph::new(a)?;
        if graph.is_connected() {
            return Ok(graph);
        }
    }
    Err(Error::InvalidGraph(format!(
        "no connected graph after {MAX_GRAPH_ATTEMPTS} draws from [{lo}, {hi}]"
    )))
}
