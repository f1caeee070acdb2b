use std::fmt;
use std::str::FromStr;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::Serialize;

use super::{SharpConstants, STRICTNESS_BAND};
use crate::error::{check_closed, Error, Result};
use crate::means::{contraharmonic_convex, j_mean, power_mean, toader, PositivePair};

/// Inequalities checked by [`verify_inequality`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InequalityId {
    /// `M_{3/2} < T`
    VuorinenLower,
    /// `T < M_{ln 2/ln(π/2)}`
    AlzerQiuUpper,
    /// `C(3/4) < T`, contraharmonic of the convex combination.
    ChuLower,
    /// `T < C(β)`, `β = 1/2 + √(4π − π²)/(2π)`.
    ChuUpper,
    /// `J(λ) < T`
    MainLower,
    /// `T < J(μ)`
    MainUpper,
}

impl InequalityId {
    pub const ALL: [InequalityId; 6] = [
        InequalityId::VuorinenLower,
        InequalityId::AlzerQiuUpper,
        InequalityId::ChuLower,
        InequalityId::ChuUpper,
        InequalityId::MainLower,
        InequalityId::MainUpper,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InequalityId::VuorinenLower => "vuorinen_lower",
            InequalityId::AlzerQiuUpper => "alzer_qiu_upper",
            InequalityId::ChuLower => "chu_lower",
            InequalityId::ChuUpper => "chu_upper",
            InequalityId::MainLower => "main_lower",
            InequalityId::MainUpper => "main_upper",
        }
    }

    /// Which side of `T` the bound sits on.
    pub fn side(self) -> Side {
        match self {
            InequalityId::VuorinenLower | InequalityId::ChuLower | InequalityId::MainLower => {
                Side::Lower
            }
            _ => Side::Upper,
        }
    }

    fn bound(self, pair: PositivePair, c: &SharpConstants) -> Result<f64> {
        match self {
            InequalityId::VuorinenLower => power_mean(pair, 1.5),
            InequalityId::AlzerQiuUpper => power_mean(pair, SharpConstants::alzer_qiu_exponent()),
            InequalityId::ChuLower => contraharmonic_convex(pair, c.chu_alpha),
            InequalityId::ChuUpper => contraharmonic_convex(pair, c.chu_beta),
            InequalityId::MainLower => j_mean(pair, c.lambda),
            InequalityId::MainUpper => j_mean(pair, c.mu),
        }
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InequalityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InequalityId::ALL
            .into_iter()
            .find(|id| id.as_str() == s.trim())
            .ok_or_else(|| Error::UnknownInequality(s.to_string()))
    }
}

/// Whether a bound lies below (`bound < T`) or above (`T < bound`) the
/// Toader mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Lower,
    Upper,
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "lower" => Ok(Side::Lower),
            "upper" => Ok(Side::Upper),
            other => Err(Error::Precondition(format!(
                "side must be `lower` or `upper`, got `{other}`"
            ))),
        }
    }
}

/// Signed gap by which `T` satisfies the bound: positive when the strict
/// inequality holds.
fn margin(side: Side, toader_value: f64, bound: f64) -> f64 {
    match side {
        Side::Lower => toader_value - bound,
        Side::Upper => bound - toader_value,
    }
}

/// Outcome of an inequality sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub inequality_id: InequalityId,
    pub samples: usize,
    /// Samples failing by more than the strictness band.
    pub violations: usize,
    /// Samples whose margin lies inside the band either way.
    pub inconclusive: usize,
    /// Smallest signed margin over all samples.
    pub min_margin: f64,
    pub worst_pair: PositivePair,
    /// Relative strictness band the report was computed with.
    pub band: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

const RATIO_MIN: f64 = 1e-8;

/// Deterministic ratios `t ∈ [1e-8, 1 − 1e-8]` from SplitMix64 seeded with
/// `seed`.
///
/// Each sample takes two draws: the top bit of the first picks the side of
/// 1/2, and the second, mapped to `u ∈ [0, 1)` by `(x >> 11)·2⁻⁵³`, gives a
/// log-uniform distance `d ∈ [1e-8, 1/2)` from the nearer end. The ratio is
/// `t = d` or `t = 1 − d`, so both `t → 0` and `t → 1` are covered densely.
pub fn sample_ratios(samples: usize, seed: u64) -> Vec<f64> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let (log_lo, log_hi) = (RATIO_MIN.ln(), 0.5f64.ln());
    (0..samples)
        .map(|_| {
            let near_one = rng.next_u64() >> 63 == 1;
            let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            let d = (log_lo + (log_hi - log_lo) * u).exp();
            if near_one {
                1.0 - d
            } else {
                d
            }
        })
        .collect()
}

pub fn verify_inequality(
    id: InequalityId,
    samples: usize,
    seed: u64,
) -> Result<VerificationReport> {
    verify_inequality_with(id, samples, seed, STRICTNESS_BAND)
}

/// [`verify_inequality`] with a custom relative strictness band.
///
/// Samples are evaluated in parallel; the reduction runs over the results
/// in sample order, so the report does not depend on the thread count.
pub fn verify_inequality_with(
    id: InequalityId,
    samples: usize,
    seed: u64,
    band: f64,
) -> Result<VerificationReport> {
    if samples == 0 {
        return Err(Error::Precondition("samples must be at least 1".into()));
    }
    if !(band >= 0.0 && band.is_finite()) {
        return Err(Error::Domain {
            name: "band",
            value: band,
            domain: "[0, inf)",
        });
    }
    let constants = SharpConstants::get();
    let side = id.side();
    let ratios = sample_ratios(samples, seed);
    let evaluated = ratios
        .par_iter()
        .map(|&t| {
            let pair = PositivePair::new(1.0, t)?;
            let value = toader(pair);
            let gap = margin(side, value, id.bound(pair, &constants)?);
            Ok((pair, gap, band * value))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut violations = 0;
    let mut inconclusive = 0;
    let (mut worst_pair, mut min_margin, _) = evaluated[0];
    for &(pair, gap, tol) in &evaluated {
        if gap < -tol {
            violations += 1;
        } else if gap <= tol {
            inconclusive += 1;
        }
        if gap < min_margin {
            min_margin = gap;
            worst_pair = pair;
        }
    }
    Ok(VerificationReport {
        inequality_id: id,
        samples,
        violations,
        inconclusive,
        min_margin,
        worst_pair,
        band,
    })
}

/// Number of geometric steps towards the degenerate end of the ratio range.
const SWEEP_STEPS: i32 = 40;

pub fn find_counterexample(p: f64, side: Side) -> Result<Option<PositivePair>> {
    find_counterexample_with(p, side, STRICTNESS_BAND)
}

/// Looks for a pair on which `J(p)` fails to be a bound on the given side.
///
/// The lower side walks `t = 1 − 2⁻ᵏ` (the regime where a weight above λ
/// breaks `J(p) < T`), the upper side walks `t = 2⁻ᵏ` (where a weight below μ
/// breaks `T < J(p)`), for `k = 1..=40`. The first pair whose margin is below
/// `−band·T` is returned.
pub fn find_counterexample_with(p: f64, side: Side, band: f64) -> Result<Option<PositivePair>> {
    check_closed("p", p, 0.5, 1.0, "[1/2, 1]")?;
    let c = SharpConstants::get();
    match side {
        Side::Lower if p < c.lambda => {
            return Err(Error::Precondition(format!(
                "lower-side search needs p >= lambda = {}, got {p}",
                c.lambda
            )))
        }
        Side::Upper if p > c.mu => {
            return Err(Error::Precondition(format!(
                "upper-side search needs p <= mu = {}, got {p}",
                c.mu
            )))
        }
        _ => {}
    }
    for k in 1..=SWEEP_STEPS {
        let step = 2f64.powi(-k);
        let t = match side {
            Side::Lower => 1.0 - step,
            Side::Upper => step,
        };
        let pair = PositivePair::new(1.0, t)?;
        let value = toader(pair);
        if margin(side, value, j_mean(pair, p)?) < -band * value {
            return Ok(Some(pair));
        }
    }
    Ok(None)
}
