//! Complete elliptic integrals of the first and second kind.
//!
//! ```text
//! K(r) = ∫₀^{π/2} (1 − r² sin²θ)^{−1/2} dθ
//! E(r) = ∫₀^{π/2} (1 − r² sin²θ)^{1/2} dθ
//! ```
//!
//! Both are evaluated by the arithmetic–geometric mean with `a₀ = 1`,
//! `b₀ = r′ = √(1 − r²)`:
//!
//! ```text
//! K = π / (2·AGM(1, r′))
//! E = K · (1 − Σₙ 2ⁿ⁻¹ cₙ²),   c₀ = r,  cₙ = (aₙ₋₁ − bₙ₋₁)/2
//! ```
//!
//! An adaptive quadrature of the defining integrals ([`ellip_oracle`]) is
//! provided as an independent cross-check, together with residual checks of
//! the classical derivative formulas and the Landen-type transformation of E.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{self, DEFAULT_MAX_INTERVALS};

const AGM_MAX_ITER: usize = 64;

/// Elliptic modulus `r ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Modulus(f64);

impl Modulus {
    pub fn new(r: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&r) {
            Ok(Modulus(r))
        } else {
            Err(Error::InvalidModulus(r))
        }
    }

    #[inline]
    pub fn r(self) -> f64 {
        self.0
    }

    /// Complementary modulus `r′ = √(1 − r²)`, evaluated as `√((1−r)(1+r))`
    /// so that it stays accurate as `r → 1`.
    #[inline]
    pub fn complement(self) -> f64 {
        ((1.0 - self.0) * (1.0 + self.0)).sqrt()
    }

    /// The modulus `r′` itself, for evaluating `K′ = K(r′)` and `E′ = E(r′)`.
    pub fn complementary(self) -> Modulus {
        Modulus(self.complement())
    }
}

impl TryFrom<f64> for Modulus {
    type Error = Error;

    fn try_from(r: f64) -> Result<Self> {
        Modulus::new(r)
    }
}

/// `K(r)` and `E(r)` from one AGM pass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipticValues {
    pub k_first: f64,
    pub e_second: f64,
    pub modulus: Modulus,
}

fn agm(m: Modulus) -> Result<EllipticValues> {
    if m.r() == 1.0 {
        return Err(Error::Divergent);
    }
    let mut a = 1.0_f64;
    let mut b = m.complement();
    // 1 − c₀²/2 written as (a₀² + b₀²)/2 to avoid cancelling near r = 1.
    let mut ratio = 0.5 * (1.0 + b * b);
    let mut weight = 1.0;
    for _ in 0..AGM_MAX_ITER {
        if (a - b).abs() <= 4.0 * f64::EPSILON * a {
            let k_first = PI / (a + b);
            return Ok(EllipticValues {
                k_first,
                e_second: k_first * ratio,
                modulus: m,
            });
        }
        let c = 0.5 * (a - b);
        let next_a = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next_a;
        ratio -= weight * c * c;
        weight *= 2.0;
    }
    Err(Error::AgmNotConverged(m.r()))
}

/// Complete elliptic integral of the first kind. Fails at `r = 1`, where
/// the integral diverges.
pub fn ellipk(m: Modulus) -> Result<f64> {
    agm(m).map(|v| v.k_first)
}

/// Complete elliptic integral of the second kind, with `E(1) = 1` exactly.
pub fn ellipe(m: Modulus) -> Result<f64> {
    if m.r() == 1.0 {
        return Ok(1.0);
    }
    agm(m).map(|v| v.e_second)
}

/// Both integrals from a single AGM pass; identical to [`ellipk`] and
/// [`ellipe`] bit for bit.
pub fn ellip_pair(m: Modulus) -> Result<EllipticValues> {
    agm(m)
}

/// Smallest and largest tolerance accepted by [`ellip_oracle`].
pub const ORACLE_TOL_RANGE: (f64, f64) = (1e-15, 1e-6);

/// Direct adaptive quadrature of both defining integrals.
///
/// Each integral is computed to an estimated absolute error of at most `tol`.
pub fn ellip_oracle(m: Modulus, tol: f64) -> Result<EllipticValues> {
    let (lo, hi) = ORACLE_TOL_RANGE;
    if !(lo..=hi).contains(&tol) {
        return Err(Error::Domain {
            name: "tol",
            value: tol,
            domain: "[1e-15, 1e-6]",
        });
    }
    if m.r() == 1.0 {
        return Err(Error::Divergent);
    }
    let r2 = m.r() * m.r();
    let first = quadrature::integrate(
        |theta: f64| {
            let s = theta.sin();
            1.0 / (1.0 - r2 * s * s).sqrt()
        },
        0.0,
        FRAC_PI_2,
        tol,
        DEFAULT_MAX_INTERVALS,
    )?;
    let second = quadrature::integrate(
        |theta: f64| {
            let s = theta.sin();
            (1.0 - r2 * s * s).sqrt()
        },
        0.0,
        FRAC_PI_2,
        tol,
        DEFAULT_MAX_INTERVALS,
    )?;
    Ok(EllipticValues {
        k_first: first.value,
        e_second: second.value,
        modulus: m,
    })
}

/// A finite-difference derivative next to its closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residual {
    pub numeric: f64,
    pub closed_form: f64,
}

impl Residual {
    pub fn absolute(&self) -> f64 {
        (self.numeric - self.closed_form).abs()
    }

    pub fn relative(&self) -> f64 {
        self.absolute() / self.closed_form.abs()
    }
}

/// Central-difference checks of
///
/// ```text
/// dK/dr          = (E − r′²K) / (r r′²)
/// dE/dr          = (E − K) / r
/// d(E − r′²K)/dr = r K
/// d(K − E)/dr    = r E / r′²
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivativeResiduals {
    pub dk: Residual,
    pub de: Residual,
    pub d_e_minus_r2k: Residual,
    pub d_k_minus_e: Residual,
}

impl DerivativeResiduals {
    pub fn as_array(&self) -> [Residual; 4] {
        [self.dk, self.de, self.d_e_minus_r2k, self.d_k_minus_e]
    }

    pub fn absolute(&self) -> [f64; 4] {
        self.as_array().map(|r| r.absolute())
    }

    pub fn max_relative(&self) -> f64 {
        self.as_array()
            .iter()
            .map(Residual::relative)
            .fold(0.0, f64::max)
    }
}

pub fn derivative_residuals(m: Modulus, h: f64) -> Result<DerivativeResiduals> {
    let r = m.r();
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain {
            name: "r",
            value: r,
            domain: "(0, 1)",
        });
    }
    if !(h > 0.0 && r - h > 0.0 && r + h < 1.0) {
        return Err(Error::Domain {
            name: "h",
            value: h,
            domain: "(0, min(r, 1 - r))",
        });
    }
    let at = ellip_pair(m)?;
    let plus = ellip_pair(Modulus::new(r + h)?)?;
    let minus = ellip_pair(Modulus::new(r - h)?)?;
    let (k, e) = (at.k_first, at.e_second);
    let rc2 = (1.0 - r) * (1.0 + r);
    let span = 2.0 * h;
    let central = |g: &dyn Fn(&EllipticValues) -> f64| (g(&plus) - g(&minus)) / span;
    let e_minus_r2k = |v: &EllipticValues| {
        let x = v.modulus.r();
        v.e_second - (1.0 - x) * (1.0 + x) * v.k_first
    };

    Ok(DerivativeResiduals {
        dk: Residual {
            numeric: central(&|v| v.k_first),
            closed_form: (e - rc2 * k) / (r * rc2),
        },
        de: Residual {
            numeric: central(&|v| v.e_second),
            closed_form: (e - k) / r,
        },
        d_e_minus_r2k: Residual {
            numeric: central(&e_minus_r2k),
            closed_form: r * k,
        },
        d_k_minus_e: Residual {
            numeric: central(&|v| v.k_first - v.e_second),
            closed_form: r * e / rc2,
        },
    })
}

/// `|E(2√r/(1+r)) − (2E(r) − r′²K(r))/(1+r)|`.
pub fn landen_e_residual(m: Modulus) -> Result<f64> {
    let r = m.r();
    let v = ellip_pair(m)?;
    let rc2 = (1.0 - r) * (1.0 + r);
    let rhs = (2.0 * v.e_second - rc2 * v.k_first) / (1.0 + r);
    let image = (2.0 * r.sqrt() / (1.0 + r)).min(1.0);
    let lhs = ellipe(Modulus::new(image)?)?;
    Ok((lhs - rhs).abs())
}
