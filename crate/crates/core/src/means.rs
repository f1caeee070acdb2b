//! Bivariate means: Toader, centroidal, contraharmonic, power, and the
//! centroidal mean of convex combinations
//! `J(x) = C̄(xa + (1−x)b, xb + (1−x)a)` for `x ∈ [1/2, 1]`.
//!
//! Every mean here is symmetric, homogeneous of degree one and returns `a`
//! exactly on the diagonal `a = b`.

use std::f64::consts::FRAC_2_PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::elliptic::{ellipe, Modulus};
use crate::error::{check_closed, Error, Result};

/// Two positive finite reals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PositivePair {
    a: f64,
    b: f64,
}

impl PositivePair {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if ok(a) && ok(b) {
            Ok(PositivePair { a, b })
        } else {
            Err(Error::InvalidPair { a, b })
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn max(&self) -> f64 {
        self.a.max(self.b)
    }

    pub fn min(&self) -> f64 {
        self.a.min(self.b)
    }

    pub fn is_diagonal(&self) -> bool {
        self.a == self.b
    }

    /// `t = min/max ∈ (0, 1]`.
    pub fn ratio(&self) -> f64 {
        self.min() / self.max()
    }

    /// `r = (1 − t)/(1 + t) ∈ [0, 1)`, evaluated as `(max − min)/(max + min)`.
    pub fn landen_r(&self) -> f64 {
        let (hi, lo) = (self.max(), self.min());
        (hi - lo) / (hi + lo)
    }

    pub fn swapped(&self) -> Self {
        PositivePair {
            a: self.b,
            b: self.a,
        }
    }

    pub fn scaled(&self, k: f64) -> Result<Self> {
        PositivePair::new(k * self.a, k * self.b)
    }
}

/// `T(a,b) = (2/π) ∫₀^{π/2} √(a² cos²θ + b² sin²θ) dθ`, evaluated as
/// `(2·max/π)·E(√(1 − (min/max)²))`.
pub fn toader(pair: PositivePair) -> f64 {
    if pair.is_diagonal() {
        return pair.a;
    }
    let hi = pair.max();
    let t = pair.ratio();
    let k = ((1.0 - t) * (1.0 + t)).sqrt().min(1.0);
    let e = ellipe(Modulus::new(k).expect("k lies in [0, 1]")).expect("E is finite on [0, 1]");
    hi * (FRAC_2_PI * e)
}

/// `C̄(a,b) = 2(a² + ab + b²) / (3(a + b))`.
pub fn centroidal(pair: PositivePair) -> f64 {
    if pair.is_diagonal() {
        return pair.a;
    }
    let (hi, lo) = (pair.max(), pair.min());
    2.0 * (hi * hi + hi * lo + lo * lo) / (3.0 * (hi + lo))
}

/// `C(a,b) = (a² + b²) / (a + b)`.
pub fn contraharmonic(pair: PositivePair) -> f64 {
    if pair.is_diagonal() {
        return pair.a;
    }
    (pair.a * pair.a + pair.b * pair.b) / (pair.a + pair.b)
}

/// `M_p(a,b) = ((aᵖ + bᵖ)/2)^{1/p}`, and `√(ab)` at `p = 0`.
///
/// Factored through the argument with `qᵖ ≤ 1` so large `|p|` cannot
/// overflow, and through `expm1`/`ln_1p` so the limit `p → 0` is smooth.
pub fn power_mean(pair: PositivePair, p: f64) -> Result<f64> {
    if !p.is_finite() {
        return Err(Error::Domain {
            name: "p",
            value: p,
            domain: "finite reals",
        });
    }
    if pair.is_diagonal() {
        return Ok(pair.a);
    }
    if p == 0.0 {
        return Ok(pair.a.sqrt() * pair.b.sqrt());
    }
    let (hi, lo) = (pair.max(), pair.min());
    let (base, other) = if p > 0.0 { (hi, lo) } else { (lo, hi) };
    let log_q = (other / base).ln();
    let half_excess = 0.5 * (p * log_q).exp_m1();
    Ok(base * (half_excess.ln_1p() / p).exp())
}

/// `J(x) = C̄(xa + (1−x)b, xb + (1−x)a)` on `x ∈ [1/2, 1]`.
pub fn j_mean(pair: PositivePair, x: f64) -> Result<f64> {
    check_closed("x", x, 0.5, 1.0, "[1/2, 1]")?;
    if pair.is_diagonal() {
        return Ok(pair.a);
    }
    let (a, b) = (pair.a, pair.b);
    let u = x * a + (1.0 - x) * b;
    let v = x * b + (1.0 - x) * a;
    Ok(centroidal(PositivePair::new(u, v)?))
}

/// `J(x) − (a + b)/2`, which equals `(2x − 1)²(a − b)²/(6(a + b))`.
///
/// Free of the cancellation that subtracting two nearly equal means would
/// suffer when `a ≈ b`.
pub fn j_mean_excess(pair: PositivePair, x: f64) -> Result<f64> {
    check_closed("x", x, 0.5, 1.0, "[1/2, 1]")?;
    let (a, b) = (pair.a, pair.b);
    let w = 2.0 * x - 1.0;
    let d = a - b;
    Ok(w * w * (d * d) / (6.0 * (a + b)))
}

/// Below this `h = ((a − b)/(a + b))²` the excess is summed as a series.
const KUMMER_SERIES_MAX_H: f64 = 0.25;

/// `T(a,b) − (a + b)/2`.
///
/// For nearly equal arguments the Gauss–Kummer expansion
/// `T = A·Σₙ binom(1/2, n)² hⁿ` is summed from `n = 1`; elsewhere the
/// difference is taken directly, where it loses at most a few ulps.
pub fn toader_excess(pair: PositivePair) -> f64 {
    let mean = 0.5 * (pair.a + pair.b);
    let r = pair.landen_r();
    let h = r * r;
    if h >= KUMMER_SERIES_MAX_H {
        return toader(pair) - mean;
    }
    let mut binom = 1.0_f64;
    let mut power = 1.0_f64;
    let mut sum = 0.0_f64;
    for n in 1..200 {
        binom *= (1.5 - n as f64) / n as f64;
        power *= h;
        let term = binom * binom * power;
        sum += term;
        if term <= f64::EPSILON * 0.25 * sum {
            break;
        }
    }
    mean * sum
}

/// Contraharmonic mean of the same convex combinations as [`j_mean`],
/// `C(xa + (1−x)b, xb + (1−x)a)`.
pub fn contraharmonic_convex(pair: PositivePair, x: f64) -> Result<f64> {
    check_closed("x", x, 0.5, 1.0, "[1/2, 1]")?;
    if pair.is_diagonal() {
        return Ok(pair.a);
    }
    let (a, b) = (pair.a, pair.b);
    let u = x * a + (1.0 - x) * b;
    let v = x * b + (1.0 - x) * a;
    Ok(contraharmonic(PositivePair::new(u, v)?))
}

/// Dispatch tag for the mean families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeanKind {
    Toader,
    Centroidal,
    Contraharmonic,
    Power(f64),
    ConvexCentroidal(f64),
}

impl MeanKind {
    pub fn evaluate(&self, pair: PositivePair) -> Result<f64> {
        match *self {
            MeanKind::Toader => Ok(toader(pair)),
            MeanKind::Centroidal => Ok(centroidal(pair)),
            MeanKind::Contraharmonic => Ok(contraharmonic(pair)),
            MeanKind::Power(p) => power_mean(pair, p),
            MeanKind::ConvexCentroidal(x) => j_mean(pair, x),
        }
    }
}

impl fmt::Display for MeanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeanKind::Toader => f.write_str("toader"),
            MeanKind::Centroidal => f.write_str("centroidal"),
            MeanKind::Contraharmonic => f.write_str("contraharmonic"),
            MeanKind::Power(p) => write!(f, "power:{p}"),
            MeanKind::ConvexCentroidal(x) => write!(f, "convex_centroidal:{x}"),
        }
    }
}

/// Parses `toader`, `centroidal`, `contraharmonic`, `power:P` and
/// `convex_centroidal:X` (alias `j:X`).
impl FromStr for MeanKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownMean(s.to_string());
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let number = |a: Option<&str>| -> Result<f64> {
            a.ok_or_else(bad)?
                .trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(bad)
        };
        match (name.trim(), arg) {
            ("toader", None) => Ok(MeanKind::Toader),
            ("centroidal", None) => Ok(MeanKind::Centroidal),
            ("contraharmonic", None) => Ok(MeanKind::Contraharmonic),
            ("power", a) => Ok(MeanKind::Power(number(a)?)),
            ("convex_centroidal" | "j", a) => {
                let x = number(a)?;
                check_closed("x", x, 0.5, 1.0, "[1/2, 1]")?;
                Ok(MeanKind::ConvexCentroidal(x))
            }
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn pair(a: f64, b: f64) -> PositivePair {
        PositivePair::new(a, b).unwrap()
    }

    #[test]
    fn pair_validation() {
        for (a, b) in [
            (0.0, 1.0),
            (1.0, -2.0),
            (f64::NAN, 1.0),
            (1.0, f64::INFINITY),
        ] {
            assert!(PositivePair::new(a, b).is_err());
        }
        let p = pair(1.0, 3.0);
        assert_eq!(p.ratio(), 1.0 / 3.0);
        assert_eq!(p.landen_r(), 0.5);
    }

    #[test]
    fn toader_cases() {
        assert_eq!(toader(pair(2.5, 2.5)), 2.5);
        assert_eq!(toader(pair(1.0, 3.0)), toader(pair(3.0, 1.0)));
        let k = (3.0f64).sqrt() / 2.0;
        let expected = 4.0 / PI * ellipe(Modulus::new(k).unwrap()).unwrap();
        assert!((toader(pair(2.0, 1.0)) - expected).abs() < 1e-15);
    }

    #[test]
    fn toader_extreme_ratio() {
        // b/a below 1e-8 squares away entirely: T → 2a/π.
        let v = toader(pair(1.0, 1e-200));
        assert!((v - 2.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn centroidal_values() {
        assert_eq!(centroidal(pair(1.0, 1.0)), 1.0);
        assert_eq!(centroidal(pair(2.0, 1.0)), 14.0 / 9.0);
    }

    #[test]
    fn contraharmonic_values() {
        assert_eq!(contraharmonic(pair(1.0, 1.0)), 1.0);
        assert_eq!(contraharmonic(pair(2.0, 1.0)), 5.0 / 3.0);
        assert_eq!(contraharmonic(pair(3.0, 1.0)), 2.5);
    }

    #[test]
    fn power_mean_values() {
        assert_eq!(power_mean(pair(4.0, 1.0), 0.0).unwrap(), 2.0);
        assert_eq!(power_mean(pair(7.0, 7.0), -3.5).unwrap(), 7.0);
        assert!((power_mean(pair(4.0, 1.0), 1.0).unwrap() - 2.5).abs() < 1e-15);
        assert!((power_mean(pair(4.0, 1.0), -1.0).unwrap() - 1.6).abs() < 1e-15);
        assert!((power_mean(pair(4.0, 1.0), 2.0).unwrap() - 8.5f64.sqrt()).abs() < 1e-15);
        assert!(power_mean(pair(4.0, 1.0), f64::NAN).is_err());
    }

    #[test]
    fn power_mean_large_exponents() {
        let p = pair(3.0, 1e-3);
        let hi = power_mean(p, 2000.0).unwrap();
        let lo = power_mean(p, -2000.0).unwrap();
        assert!((hi - 3.0 * 0.5f64.powf(1.0 / 2000.0)).abs() < 1e-12);
        assert!((lo - 1e-3 * 0.5f64.powf(-1.0 / 2000.0)).abs() < 1e-15);
    }

    #[test]
    fn power_mean_continuous_at_zero() {
        for (a, b) in [(4.0, 1.0), (1e-3, 7.0), (2.0, 1.9)] {
            let g = power_mean(pair(a, b), 0.0).unwrap();
            for p in [1e-6, -1e-6] {
                let v = power_mean(pair(a, b), p).unwrap();
                // Limit is approached at rate O(p·ln²(a/b)).
                let slack = 1e-6 * (a / b).ln().powi(2);
                assert!((v - g).abs() <= 1e-10 * g + slack * g, "{a},{b},{p}");
            }
        }
    }

    #[test]
    fn vuorinen_at_two_one() {
        let p = pair(2.0, 1.0);
        assert!(power_mean(p, 1.5).unwrap() < toader(p));
    }

    #[test]
    fn j_mean_endpoints() {
        let p = pair(2.0, 1.0);
        assert_eq!(j_mean(p, 0.5).unwrap(), 1.5);
        assert_eq!(j_mean(p, 1.0).unwrap(), centroidal(p));
        assert_eq!(j_mean(p, 0.75).unwrap(), centroidal(pair(1.75, 1.25)));
        assert!(j_mean(p, 0.49).is_err());
        assert!(j_mean(p, 1.01).is_err());
        assert_eq!(j_mean(pair(3.3, 3.3), 0.7).unwrap(), 3.3);
    }

    #[test]
    fn excesses_match_direct_differences() {
        for (a, b) in [(2.0, 1.0), (1.0, 0.9), (1.0, 0.6), (5.0, 0.01), (1.0, 0.99)] {
            let p = pair(a, b);
            let mean = 0.5 * (a + b);
            let t = toader_excess(p);
            assert!(
                (t - (toader(p) - mean)).abs() < 1e-15 * a.max(b) * 8.0,
                "({a}, {b})"
            );
            for x in [0.5, 0.7, 0.93, 1.0] {
                let j = j_mean_excess(p, x).unwrap();
                assert!((j - (j_mean(p, x).unwrap() - mean)).abs() < 1e-15 * a.max(b) * 8.0);
            }
        }
    }

    #[test]
    fn toader_excess_series_leading_terms() {
        // T/A − 1 = h/4 + h²/64 + h³/256 + …
        let eps = 2f64.powi(-10);
        let p = pair(1.0 + eps, 1.0 - eps);
        let h = eps * eps;
        let expected = 1.0 * (h / 4.0 + h * h / 64.0 + h * h * h / 256.0);
        assert!((toader_excess(p) - expected).abs() < 1e-14 * expected);
        assert_eq!(toader_excess(pair(2.0, 2.0)), 0.0);
    }

    #[test]
    fn parse_kinds() {
        assert_eq!("toader".parse::<MeanKind>().unwrap(), MeanKind::Toader);
        assert_eq!("power:0".parse::<MeanKind>().unwrap(), MeanKind::Power(0.0));
        assert_eq!(
            "power:-1.5".parse::<MeanKind>().unwrap(),
            MeanKind::Power(-1.5)
        );
        assert_eq!(
            "j:0.75".parse::<MeanKind>().unwrap(),
            MeanKind::ConvexCentroidal(0.75)
        );
        for bad in [
            "power",
            "power:x",
            "power:inf",
            "toader:1",
            "j:0.2",
            "median",
        ] {
            assert!(bad.parse::<MeanKind>().is_err(), "{bad}");
        }
        let k = MeanKind::Power(1.5);
        assert_eq!(k.to_string().parse::<MeanKind>().unwrap(), k);
    }
}
