//! Lower bounds on the exponential synchronization and phase-locking rates.
//!
//! Each bound is a [`RateBoundStrategy`] with its own ε-regime and gating
//! condition. [`BoundRegistry::builtin`] registers all four under their names
//! (`alpha1` .. `alpha4`) so callers can pick one at runtime.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

use ndarray::Array2;

use super::conditions::{check_locking_condition, check_sync_condition, lambda_max_laplacian, ConditionVerdict};
use super::eigen::symmetric_eigen_extremes;
use super::scalar::{epsilon0, sinc};
use crate::dynamics::ModelParams;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    Alpha1,
    Alpha2,
    Alpha3,
    Alpha4,
}

impl BoundKind {
    pub const ALL: [BoundKind; 4] = [BoundKind::Alpha1, BoundKind::Alpha2, BoundKind::Alpha3, BoundKind::Alpha4];

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Alpha1 => "alpha1",
            BoundKind::Alpha2 => "alpha2",
            BoundKind::Alpha3 => "alpha3",
            BoundKind::Alpha4 => "alpha4",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownStrategy {
                registry: "rate bound",
                name: s.to_string(),
            })
    }
}

/// Half-open range `[lo, hi)` of ε a bound applies to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsilonRegime {
    pub lo: f64,
    pub hi: f64,
}

impl EpsilonRegime {
    pub fn contains(&self, epsilon: f64) -> bool {
        epsilon >= self.lo && epsilon < self.hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateBound {
    pub kind: BoundKind,
    /// Guaranteed exponential rate in 1/s.
    pub value: f64,
    pub epsilon: f64,
    /// The gating condition holds and the bound is positive.
    pub valid: bool,
    pub verdict: ConditionVerdict,
}

pub trait RateBoundStrategy: Send + Sync {
    fn kind(&self) -> BoundKind;

    fn regime(&self) -> EpsilonRegime;

    /// Closed-form value; callers are responsible for the regime.
    fn formula(&self, params: &ModelParams, epsilon: f64) -> Result<f64>;

    /// The sufficient condition under which the bound is guaranteed.
    fn gate(&self, params: &ModelParams, epsilon: f64) -> Result<ConditionVerdict>;

    fn name(&self) -> &'static str {
        self.kind().name()
    }

    fn evaluate(&self, params: &ModelParams, epsilon: f64) -> Result<RateBound> {
        let regime = self.regime();
        if !regime.contains(epsilon) {
            return Err(Error::EpsilonOutOfRegime {
                what: self.name(),
                epsilon,
                lo: regime.lo,
                hi: regime.hi,
            });
        }
        let value = self.formula(params, epsilon)?;
        let verdict = self.gate(params, epsilon)?;
        Ok(RateBound {
            kind: self.kind(),
            value,
            epsilon,
            valid: verdict.holds && value > 0.0,
            verdict,
        })
    }
}

/// `λ_min(c_g·G + c_l·L)`.
fn lambda_min_weighted(params: &ModelParams, c_g: f64, c_l: f64) -> Result<f64> {
    let g = params.pacemaker().diag();
    let m: Array2<f64> = g * c_g + params.laplacian() * c_l;
    Ok(symmetric_eigen_extremes(&m)?.0)
}

/// `λ_min(sinc(ε)·G + sinc(2ε)·L)`, half-circle synchronization.
#[derive(Debug, Clone, Copy, Default)]
pub struct Alpha1;

/// `g_min·sinc(ε) + sinc(2ε0)·λ_max(L)`, synchronization beyond the half circle.
#[derive(Debug, Clone, Copy, Default)]
pub struct Alpha2;

/// `λ_min(cos(ε)·G + cos(2ε)·L)`, phase locking for `ε < π/4`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Alpha3;

/// `g_min·cos(ε) + cos(2ε)·λ_max(L)`, phase locking for `π/4 ≤ ε < π/2`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Alpha4;

impl RateBoundStrategy for Alpha1 {
    fn kind(&self) -> BoundKind {
        BoundKind::Alpha1
    }

    fn regime(&self) -> EpsilonRegime {
        EpsilonRegime { lo: 0.0, hi: FRAC_PI_2 }
    }

    fn formula(&self, params: &ModelParams, epsilon: f64) -> Result<f64> {
        lambda_min_weighted(params, sinc(epsilon), sinc(2.0 * epsilon))
    }

    fn gate(&self, params: &ModelParams, epsilon: f64) -> Result<ConditionVerdict> {
        check_sync_condition(params, epsilon)
    }
}

impl RateBoundStrategy for Alpha2 {
    fn kind(&self) -> BoundKind {
        BoundKind::Alpha2
    }

    fn regime(&self) -> EpsilonRegime {
        EpsilonRegime { lo: FRAC_PI_2, hi: PI }
    }

    fn formula(&self, params: &ModelParams, epsilon: f64) -> Result<f64> {
        Ok(params.pacemaker().g_min() * sinc(epsilon) + epsilon0().sinc_2eps0 * lambda_max_laplacian(params)?)
    }

    fn gate(&self, params: &ModelParams, epsilon: f64) -> Result<ConditionVerdict> {
        check_sync_condition(params, epsilon)
    }
}

impl RateBoundStrategy for Alpha3 {
    fn kind(&self) -> BoundKind {
        BoundKind::Alpha3
    }

    fn regime(&self) -> EpsilonRegime {
        EpsilonRegime { lo: 0.0, hi: FRAC_PI_4 }
    }

    fn formula(&self, params: &ModelParams, epsilon: f64) -> Result<f64> {
        lambda_min_weighted(params, epsilon.cos(), (2.0 * epsilon).cos())
    }

    fn gate(&self, params: &ModelParams, epsilon: f64) -> Result<ConditionVerdict> {
        check_locking_condition(params, epsilon)
    }
}

impl RateBoundStrategy for Alpha4 {
    fn kind(&self) -> BoundKind {
        BoundKind::Alpha4
    }

    fn regime(&self) -> EpsilonRegime {
        EpsilonRegime {
            lo: FRAC_PI_4,
            hi: FRAC_PI_2,
        }
    }

    fn formula(&self, params: &ModelParams, epsilon: f64) -> Result<f64> {
        Ok(params.pacemaker().g_min() * epsilon.cos() + (2.0 * epsilon).cos() * lambda_max_laplacian(params)?)
    }

    fn gate(&self, params: &ModelParams, epsilon: f64) -> Result<ConditionVerdict> {
        check_locking_condition(params, epsilon)
    }
}

pub fn alpha1(params: &ModelParams, epsilon: f64) -> Result<RateBound> {
    Alpha1.evaluate(params, epsilon)
}

pub fn alpha2(params: &ModelParams, epsilon: f64) -> Result<RateBound> {
    Alpha2.evaluate(params, epsilon)
}

pub fn alpha3(params: &ModelParams, epsilon: f64) -> Result<RateBound> {
    Alpha3.evaluate(params, epsilon)
}

pub fn alpha4(params: &ModelParams, epsilon: f64) -> Result<RateBound> {
    Alpha4.evaluate(params, epsilon)
}

/// Named collection of rate-bound strategies.
pub struct BoundRegistry {
    strategies: Vec<Box<dyn RateBoundStrategy>>,
}

impl Default for BoundRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

impl BoundRegistry {
    pub fn empty() -> Self {
        BoundRegistry { strategies: Vec::new() }
    }

    pub fn builtin() -> Self {
        let mut reg = Self::empty();
        reg.register(Box::new(Alpha1));
        reg.register(Box::new(Alpha2));
        reg.register(Box::new(Alpha3));
        reg.register(Box::new(Alpha4));
        reg
    }

    /// Adds a strategy, replacing any existing one with the same name.
    pub fn register(&mut self, strategy: Box<dyn RateBoundStrategy>) {
        self.strategies.retain(|s| s.name() != strategy.name());
        self.strategies.push(strategy);
    }

    pub fn get(&self, name: &str) -> Result<&dyn RateBoundStrategy> {
        self.strategies
            .iter()
            .find(|s| s.name() == name)
            .map(Box::as_ref)
            .ok_or_else(|| Error::UnknownStrategy {
                registry: "rate bound",
                name: name.to_string(),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.strategies.iter().map(|s| s.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn RateBoundStrategy> {
        self.strategies.iter().map(Box::as_ref)
    }

    /// Every registered bound; `None` for those whose regime excludes `epsilon`.
    pub fn assess(&self, params: &ModelParams, epsilon: f64) -> Result<Vec<(BoundKind, Option<RateBound>)>> {
        self.iter()
            .map(|s| {
                if s.regime().contains(epsilon) {
                    Ok((s.kind(), Some(s.evaluate(params, epsilon)?)))
                } else {
                    Ok((s.kind(), None))
                }
            })
            .collect()
    }
}
