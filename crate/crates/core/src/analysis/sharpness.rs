use serde::Serialize;

use super::bisect::bisect_increasing;
use super::{BISECTION_MAX_ITER, BISECTION_XTOL};
use crate::error::{Error, Result};
use crate::means::{j_mean_excess, toader_excess, PositivePair};

/// Solution of `J(x*) = T` for the pair `(1, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SharpnessRecord {
    pub t: f64,
    pub x_star: f64,
    pub iterations: usize,
    /// `|J(x*) − T|`.
    pub residual: f64,
    /// Set when `T` fell outside `[J(1/2), J(1)]` and `x*` was pinned to an
    /// end of the interval. Never expected; signals a numerical problem.
    pub clamped: bool,
}

pub fn solve_sharpness(t: f64) -> Result<SharpnessRecord> {
    solve_sharpness_with(t, BISECTION_XTOL)
}

/// [`solve_sharpness`] with a custom abscissa tolerance.
pub fn solve_sharpness_with(t: f64, xtol: f64) -> Result<SharpnessRecord> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::Domain {
            name: "t",
            value: t,
            domain: "(0, 1)",
        });
    }
    solve_on_pair(PositivePair::new(1.0, t)?, xtol)
}

/// Inverts `J` for an arbitrary non-diagonal pair. The reported `t` is
/// `min/max`.
pub fn solve_sharpness_pair(pair: PositivePair) -> Result<SharpnessRecord> {
    if pair.is_diagonal() {
        return Err(Error::Degenerate("sharpness is undefined for a = b"));
    }
    solve_on_pair(pair, BISECTION_XTOL)
}

fn solve_on_pair(pair: PositivePair, xtol: f64) -> Result<SharpnessRecord> {
    // J(x) − T as (J − A) − (T − A): both excesses are O((a − b)²) and are
    // evaluated without subtracting nearly equal means, so x* stays accurate
    // as t → 1 where J and T agree to many digits.
    let target = toader_excess(pair);
    let gap = |x: f64| j_mean_excess(pair, x).map(|j| j - target);
    let clamp = |x_star: f64| -> Result<SharpnessRecord> {
        Ok(SharpnessRecord {
            t: pair.ratio(),
            x_star,
            iterations: 0,
            residual: gap(x_star)?.abs(),
            clamped: true,
        })
    };
    if gap(0.5)? >= 0.0 {
        return clamp(0.5);
    }
    if gap(1.0)? <= 0.0 {
        return clamp(1.0);
    }
    let b = bisect_increasing(gap, 0.5, 1.0, xtol, BISECTION_MAX_ITER)?;
    Ok(SharpnessRecord {
        t: pair.ratio(),
        x_star: b.x,
        iterations: b.iterations,
        residual: b.value.abs(),
        clamped: false,
    })
}

/// Log-symmetric grid on `[1e-6, 1 − 1e-4]`: the first `⌈n/2⌉` points are
/// log-spaced in `t` from `1e-6` towards `1/2`, the rest log-spaced in
/// `1 − t` from `1/2` down to `1e-4`. Strictly increasing, both ends
/// included for `n ≥ 2`.
pub fn sharpness_grid(n: usize) -> Vec<f64> {
    const LOW: f64 = 1e-6;
    const HIGH_GAP: f64 = 1e-4;
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![LOW];
    }
    let mid = 0.5f64.log10();
    let n_lo = n.div_ceil(2);
    let n_hi = n - n_lo;
    let lo = (0..n_lo).map(|i| {
        let s = i as f64 / n_lo as f64;
        10f64.powf(LOW.log10() + (mid - LOW.log10()) * s)
    });
    let hi = (1..=n_hi).map(|j| {
        let s = j as f64 / n_hi as f64;
        1.0 - 10f64.powf(mid + (HIGH_GAP.log10() - mid) * s)
    });
    lo.chain(hi).collect()
}

/// Records over [`sharpness_grid`] plus the extreme `x*` values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpnessScan {
    pub records: Vec<SharpnessRecord>,
    pub min_x_star: f64,
    pub max_x_star: f64,
    pub clamped: usize,
}

pub fn scan_sharpness(grid_points: usize, xtol: f64) -> Result<SharpnessScan> {
    if grid_points < 2 {
        return Err(Error::Precondition(format!(
            "grid_points must be at least 2, got {grid_points}"
        )));
    }
    let records = sharpness_grid(grid_points)
        .into_iter()
        .map(|t| solve_sharpness_with(t, xtol))
        .collect::<Result<Vec<_>>>()?;
    let min_x_star = records
        .iter()
        .map(|r| r.x_star)
        .fold(f64::INFINITY, f64::min);
    let max_x_star = records
        .iter()
        .map(|r| r.x_star)
        .fold(f64::NEG_INFINITY, f64::max);
    let clamped = records.iter().filter(|r| r.clamped).count();
    Ok(SharpnessScan {
        records,
        min_x_star,
        max_x_star,
        clamped,
    })
}
