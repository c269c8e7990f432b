use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// `sin(x)/x`, continuous at 0.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// Root `ε0 ∈ (π/2, π)` of `2ε cos 2ε = sin 2ε`, where `sinc` attains its
/// minimum on `[0, 2π]` at `2ε0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SincConstants {
    pub epsilon0: f64,
    pub sinc_2eps0: f64,
}

fn root_fn(eps: f64) -> f64 {
    2.0 * eps * (2.0 * eps).cos() - (2.0 * eps).sin()
}

/// Bisection over `(π/2, π)`.
pub fn solve_epsilon0() -> SincConstants {
    let (mut lo, mut hi) = (FRAC_PI_2 + 1e-6, PI - 1e-6);
    let f_lo = root_fn(lo);
    assert!(f_lo * root_fn(hi) < 0.0, "bracket does not straddle the root");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let f = root_fn(mid);
        if f == 0.0 || (hi - lo) < 1e-15 {
            lo = mid;
            hi = mid;
            break;
        }
        if (f < 0.0) == (f_lo < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let epsilon0 = 0.5 * (lo + hi);
    debug_assert!(root_fn(epsilon0).abs() < 1e-12);
    SincConstants {
        epsilon0,
        sinc_2eps0: sinc(2.0 * epsilon0),
    }
}

/// Cached [`solve_epsilon0`].
pub fn epsilon0() -> SincConstants {
    static CONSTANTS: OnceLock<SincConstants> = OnceLock::new();
    *CONSTANTS.get_or_init(solve_epsilon0)
}

/// `(sinc ε, sinc 2ε)`, the lower bounds of the sinc diagonals when every
/// relative phase lies in `[−ε, ε]` with `ε < π/2`.
pub fn sigma_pair_sync(epsilon: f64) -> Result<(f64, f64)> {
    if !(0.0..FRAC_PI_2).contains(&epsilon) {
        return Err(Error::EpsilonOutOfRegime {
            what: "sigma_pair_sync",
            epsilon,
            lo: 0.0,
            hi: FRAC_PI_2,
        });
    }
    Ok((sinc(epsilon), sinc(2.0 * epsilon)))
}
