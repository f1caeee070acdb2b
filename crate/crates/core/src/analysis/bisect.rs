use crate::error::{Error, Result};

/// Outcome of [`bisect_increasing`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bisection {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

/// Bisection for the zero of an increasing function with `f(lo) < 0 < f(hi)`.
///
/// Stops when the bracket is no wider than `xtol`, when the midpoint hits an
/// exact zero, or after `max_iter` halvings. Returns whichever bracket end
/// has the smaller `|f|`.
pub fn bisect_increasing<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    xtol: f64,
    max_iter: usize,
) -> Result<Bisection>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut lo, mut hi) = (lo, hi);
    let mut f_lo = f(lo)?;
    let mut f_hi = f(hi)?;
    if !(f_lo < 0.0 && f_hi > 0.0) {
        return Err(Error::NoRoot {
            function: "bisection target",
            reason: format!("f({lo}) = {f_lo:e}, f({hi}) = {f_hi:e} do not bracket a root"),
        });
    }
    let mut iterations = 0;
    while hi - lo > xtol && iterations < max_iter {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        iterations += 1;
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(Bisection {
                x: mid,
                value: 0.0,
                iterations,
            });
        }
        if f_mid < 0.0 {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    let (x, value) = if f_lo.abs() <= f_hi.abs() {
        (lo, f_lo)
    } else {
        (hi, f_hi)
    };
    Ok(Bisection {
        x,
        value,
        iterations,
    })
}
