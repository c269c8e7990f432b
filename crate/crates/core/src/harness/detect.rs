//! Time-to-event detection on recorded samples. `None` marks a timeout.

use crate::dynamics::{SampleView, Trajectory};

pub trait EventDetector: Send + Sync {
    fn name(&self) -> &'static str;

    fn reached(&self, sample: &SampleView<'_>) -> bool;
}

/// Order parameter at or above `threshold`.
#[derive(Debug, Clone, Copy)]
pub struct SyncDetector {
    pub threshold: f64,
}

impl Default for SyncDetector {
    fn default() -> Self {
        SyncDetector { threshold: 0.99 }
    }
}

impl EventDetector for SyncDetector {
    fn name(&self) -> &'static str {
        "sync"
    }

    fn reached(&self, sample: &SampleView<'_>) -> bool {
        sample.r >= self.threshold
    }
}

/// Every relative frequency below `tol` in magnitude.
#[derive(Debug, Clone, Copy)]
pub struct LockDetector {
    pub tol: f64,
}

impl Default for LockDetector {
    fn default() -> Self {
        LockDetector { tol: 1e-3 }
    }
}

impl EventDetector for LockDetector {
    fn name(&self) -> &'static str {
        "lock"
    }

    fn reached(&self, sample: &SampleView<'_>) -> bool {
        sample.zeta.iter().all(|z| z.abs() < self.tol)
    }
}

/// Time of the first sample satisfying `detector`.
pub fn first_event(traj: &Trajectory, detector: &dyn EventDetector) -> Option<f64> {
    (0..traj.len()).find_map(|k| {
        let sample = SampleView {
            step: k,
            t: traj.times[k],
            xi: traj.xi_samples.get(k).map_or(&[], Vec::as_slice),
            zeta: traj.zeta_samples.get(k).map_or(&[], Vec::as_slice),
            r: traj.r_samples.get(k).copied().unwrap_or(f64::NAN),
        };
        detector.reached(&sample).then_some(sample.t)
    })
}

pub fn time_to_sync(traj: &Trajectory, threshold: f64) -> Option<f64> {
    first_event(traj, &SyncDetector { threshold })
}

pub fn time_to_lock(traj: &Trajectory, tol: f64) -> Option<f64> {
    first_event(traj, &LockDetector { tol })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(r: &[f64], zeta: &[f64]) -> Trajectory {
        Trajectory {
            times: (0..r.len()).map(|k| 0.5 * k as f64).collect(),
            xi_samples: vec![vec![0.0]; r.len()],
            zeta_samples: zeta.iter().map(|z| vec![*z, -*z]).collect(),
            r_samples: r.to_vec(),
        }
    }

    #[test]
    fn already_synchronized() {
        let traj = synthetic(&[0.995, 0.999, 1.0], &[0.0; 3]);
        assert_eq!(time_to_sync(&traj, 0.99), Some(0.0));
        assert_eq!(time_to_lock(&traj, 1e-3), Some(0.0));
    }

    #[test]
    fn first_crossing() {
        let traj = synthetic(&[0.5, 0.9, 0.989, 0.991, 0.999], &[1.0, 0.1, 0.01, 5e-4, 1e-5]);
        assert_eq!(time_to_sync(&traj, 0.99), Some(1.5));
        assert_eq!(time_to_lock(&traj, 1e-3), Some(1.5));
    }

    #[test]
    fn timeout() {
        let traj = synthetic(&[0.2, 0.3], &[0.4, 0.4]);
        assert_eq!(time_to_sync(&traj, 0.99), None);
        assert_eq!(time_to_lock(&traj, 1e-3), None);
    }
}
