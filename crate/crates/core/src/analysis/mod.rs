//! Reduction of the Toader/centroidal gap to a single-variable function,
//! its derivative chain and sign structure, and the engines that recover
//! the sharp convex-combination constants numerically.
//!
//! With `a > b`, `t = b/a`, `r = (1 − t)/(1 + t)` and weight `p ∈ [1/2, 1]`:
//!
//! ```text
//! T(a,b) − C̄(pa + (1−p)b, pb + (1−p)a) = a/(1 + r) · f(r)
//! f(r)  = (2/π)[2E − (1 − r²)K] − (1/3)(1 − 2p)² r² − 1
//! f₁(r) = r f′(r)  = (2/π)[E − (1 − r²)K] − (2/3)(1 − 2p)² r²
//! f₂(r) = f₁′(r)/r = (2/π)K − (4/3)(1 − 2p)²
//! ```

mod bisect;
mod chain;
mod sharpness;
mod verify;

pub use bisect::{bisect_increasing, Bisection};
pub use chain::{f_chain, find_f1_root, find_f2_root, plot_grid, reduction_residual, FChain};
pub use sharpness::{
    scan_sharpness, sharpness_grid, solve_sharpness, solve_sharpness_pair, solve_sharpness_with,
    SharpnessRecord, SharpnessScan,
};
pub use verify::{
    find_counterexample, find_counterexample_with, sample_ratios, verify_inequality,
    verify_inequality_with, InequalityId, Side, VerificationReport,
};

use std::f64::consts::PI;

use serde::Serialize;

/// Bisection stops once the bracket is at most this wide.
pub const BISECTION_XTOL: f64 = 1e-14;
/// Bisection iteration cap.
pub const BISECTION_MAX_ITER: usize = 200;
/// Relative width of the band inside which a strict inequality is
/// reported inconclusive instead of violated.
pub const STRICTNESS_BAND: f64 = 1e-13;

/// The sharp constants for the centroidal (`lambda`, `mu`) and
/// contraharmonic (`chu_alpha`, `chu_beta`) double inequalities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SharpConstants {
    /// `(1 + √3/2)/2`
    pub lambda: f64,
    /// `1/2 + √(12/π − 3)/2`
    pub mu: f64,
    /// `3/4`
    pub chu_alpha: f64,
    /// `1/2 + √(4π − π²)/(2π)`
    pub chu_beta: f64,
}

impl SharpConstants {
    pub fn get() -> Self {
        SharpConstants {
            lambda: 0.5 * (1.0 + 3f64.sqrt() / 2.0),
            mu: 0.5 + 0.5 * (12.0 / PI - 3.0).sqrt(),
            chu_alpha: 0.75,
            chu_beta: 0.5 + (4.0 * PI - PI * PI).sqrt() / (2.0 * PI),
        }
    }

    /// Exponent of the best power-mean upper bound for the Toader mean,
    /// `ln 2 / ln(π/2)`.
    pub fn alzer_qiu_exponent() -> f64 {
        2f64.ln() / (PI / 2.0).ln()
    }
}
