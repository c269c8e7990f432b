//! Rate bounds, sufficient conditions and trajectory diagnostics.

mod bounds;
mod conditions;
mod diagnostics;
mod eigen;
mod scalar;

pub use bounds::{
    alpha1, alpha2, alpha3, alpha4, Alpha1, Alpha2, Alpha3, Alpha4, BoundKind, BoundRegistry, EpsilonRegime,
    RateBound, RateBoundStrategy,
};
pub use conditions::{
    check_locking_condition, check_sync_condition, check_trapping_condition, ConditionVerdict, Theorem,
};
pub use diagnostics::{fit_decay_rate, lyapunov_diagnostics, order_parameter, s_matrices, DecayFit, SMatrices};
pub use eigen::{jacobi_eigenvalues, symmetric_eigen_extremes};
pub use scalar::{epsilon0, sigma_pair_sync, sinc, solve_epsilon0, SincConstants};
