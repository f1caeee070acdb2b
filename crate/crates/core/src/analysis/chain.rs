use std::f64::consts::FRAC_2_PI;

use serde::Serialize;

use super::bisect::bisect_increasing;
use super::{BISECTION_MAX_ITER, BISECTION_XTOL};
use crate::elliptic::{ellip_pair, Modulus};
use crate::error::{check_closed, Error, Result};
use crate::means::{centroidal, toader, PositivePair};

/// Search bracket for the zero of f₂.
const F2_BRACKET: (f64, f64) = (1e-12, 1.0 - 1e-12);
/// Right end of the search bracket for the zero of f₁.
const F1_RIGHT: f64 = 1.0 - 1e-9;
/// Endpoint values within this distance of zero do not count as a sign.
const SIGN_FLOOR: f64 = 1e-13;

/// `f`, `f₁ = r f′` and `f₂ = f₁′/r` at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FChain {
    pub f: f64,
    pub f1: f64,
    pub f2: f64,
}

pub fn f_chain(r: f64, p: f64) -> Result<FChain> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::Domain {
            name: "r",
            value: r,
            domain: "[0, 1)",
        });
    }
    check_closed("p", p, 0.5, 1.0, "[1/2, 1]")?;
    let v = ellip_pair(Modulus::new(r)?)?;
    let (k, e) = (v.k_first, v.e_second);
    let rc2 = (1.0 - r) * (1.0 + r);
    let w = (1.0 - 2.0 * p) * (1.0 - 2.0 * p);
    let r2 = r * r;
    Ok(FChain {
        f: FRAC_2_PI * (2.0 * e - rc2 * k) - w * r2 / 3.0 - 1.0,
        f1: FRAC_2_PI * (e - rc2 * k) - 2.0 * w * r2 / 3.0,
        f2: FRAC_2_PI * k - 4.0 * w / 3.0,
    })
}

/// `|[T(a,b) − C̄(pa + (1−p)b, pb + (1−p)a)] − a/(1 + r)·f(r)|` with the pair
/// normalised so that `a > b`.
///
/// The left side goes through [`toader`] and [`centroidal`], the right side
/// through [`f_chain`]; the two share no code beyond the AGM kernel.
pub fn reduction_residual(pair: PositivePair, p: f64) -> Result<f64> {
    if pair.is_diagonal() {
        return Err(Error::Degenerate("reduction identity needs a != b"));
    }
    check_closed("p", p, 0.5, 1.0, "[1/2, 1]")?;
    let (a, b) = (pair.max(), pair.min());
    let combo = PositivePair::new(p * a + (1.0 - p) * b, p * b + (1.0 - p) * a)?;
    let lhs = toader(pair) - centroidal(combo);
    let r = pair.landen_r();
    let rhs = a / (1.0 + r) * f_chain(r, p)?.f;
    Ok((lhs - rhs).abs())
}

fn f2_at(r: f64, p: f64) -> Result<f64> {
    f_chain(r, p).map(|c| c.f2)
}

/// Zero `r₀` of the strictly increasing f₂, i.e. `K(r₀) = (2π/3)(1 − 2p)²`.
///
/// Requires `f₂ < 0` at the left end of the bracket, which holds exactly
/// when `p` exceeds the sharp lower constant.
pub fn find_f2_root(p: f64) -> Result<f64> {
    check_closed("p", p, 0.5, 1.0, "[1/2, 1]")?;
    let (lo, hi) = F2_BRACKET;
    let left = f2_at(lo, p)?;
    if left >= -SIGN_FLOOR {
        return Err(Error::NoRoot {
            function: "f2",
            reason: format!("f2({lo:e}) = {left:e} is not negative"),
        });
    }
    let right = f2_at(hi, p)?;
    if right <= SIGN_FLOOR {
        return Err(Error::NoRoot {
            function: "f2",
            reason: format!("f2(1 - 1e-12) = {right:e} is not positive"),
        });
    }
    bisect_increasing(|r| f2_at(r, p), lo, hi, BISECTION_XTOL, BISECTION_MAX_ITER).map(|b| b.x)
}

/// Zero `r₁` of f₁ to the right of `r₀`.
///
/// f₁ starts at 0, falls while f₂ < 0 and rises once f₂ > 0, so any interior
/// zero sits in `[r₀, 1)` where f₁ is increasing.
pub fn find_f1_root(p: f64) -> Result<f64> {
    let r0 = find_f2_root(p).map_err(|e| Error::NoRoot {
        function: "f1",
        reason: format!("f1 has no interior minimum: {e}"),
    })?;
    let f1_at = |r: f64| f_chain(r, p).map(|c| c.f1);
    let left = f1_at(r0)?;
    if left >= -SIGN_FLOOR {
        return Err(Error::NoRoot {
            function: "f1",
            reason: format!("f1(r0) = {left:e} is not negative"),
        });
    }
    let right = f1_at(F1_RIGHT)?;
    if right <= SIGN_FLOOR {
        return Err(Error::NoRoot {
            function: "f1",
            reason: format!("f1(1 - 1e-9) = {right:e} is not positive"),
        });
    }
    bisect_increasing(f1_at, r0, F1_RIGHT, BISECTION_XTOL, BISECTION_MAX_ITER).map(|b| b.x)
}

/// `n` equally spaced interior points of `(lo, hi)`, endpoints excluded.
pub fn plot_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n as f64 + 1.0);
    (1..=n).map(|i| lo + step * i as f64).collect()
}
