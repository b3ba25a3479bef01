//! The Gaussian deterministic relay channel of Cover and Kim with a secrecy
//! constraint: `Y_D = X + Z`, `Y_r = α·X − Z` (the same unit-variance noise
//! with opposite sign), plus a noiseless relay-to-destination link of rate
//! `R₀` bits per channel use.
//!
//! Achievable secrecy rate: `[R₀ + C(P) − C(α²P)]⁺`. Upper bound:
//! `R₀ + [C(P) − C(α²P)]⁺`. The two coincide for `α ≤ 1`, settling the
//! secrecy capacity there; for `α > 1` the gap is open and both bounds are
//! reported. Thanks to the anticorrelated noises the capacity can exceed
//! the direct-link capacity `C(P)` whenever `R₀ > C(P)`.

use crate::rate::{awgn_capacity, Rate};
use crate::{clamp_plus, Error, Result};

/// Gain, source power, and noiseless relay-link rate of the channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverKimParams {
    alpha: f64,
    p_max: f64,
    r0: f64,
}

impl CoverKimParams {
    pub fn new(alpha: f64, p_max: f64, r0: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("p_max", p_max), ("r0", r0)] {
            if !v.is_finite() {
                return Err(Error::Domain(format!("{name} must be finite, got {v}")));
            }
        }
        if alpha < 0.0 {
            return Err(Error::Domain(format!(
                "alpha must be nonnegative, got {alpha}"
            )));
        }
        if p_max <= 0.0 {
            return Err(Error::Domain(format!(
                "p_max must be positive, got {p_max}"
            )));
        }
        if r0 < 0.0 {
            return Err(Error::Domain(format!("r0 must be nonnegative, got {r0}")));
        }
        Ok(CoverKimParams { alpha, p_max, r0 })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn p_max(&self) -> f64 {
        self.p_max
    }
    pub fn r0(&self) -> f64 {
        self.r0
    }
}

fn capacity_gap(params: &CoverKimParams) -> f64 {
    let c_direct = awgn_capacity(params.p_max).expect("p_max positive").bits();
    let c_relay = awgn_capacity(params.alpha * params.alpha * params.p_max)
        .expect("snr nonnegative")
        .bits();
    c_direct - c_relay
}

/// Achievable secrecy rate `[R₀ + C(P) − C(α²P)]⁺`.
pub fn ck_achievable(params: &CoverKimParams) -> Rate {
    Rate::new(clamp_plus(params.r0 + capacity_gap(params)).expect("finite"))
        .expect("clamped nonnegative")
}

/// Secrecy-rate upper bound `R₀ + [C(P) − C(α²P)]⁺`.
pub fn ck_upper(params: &CoverKimParams) -> Rate {
    Rate::new(params.r0 + clamp_plus(capacity_gap(params)).expect("finite")).expect("nonnegative")
}

/// The secrecy capacity where it is settled: for `α ≤ 1` the achievable
/// rate meets the upper bound and the capacity is
/// `R₀ + C(P) − C(α²P)`; for `α > 1` the bounds differ in general and
/// `None` is returned.
pub fn ck_capacity(params: &CoverKimParams) -> Option<Rate> {
    if params.alpha <= 1.0 {
        Some(ck_achievable(params))
    } else {
        None
    }
}

/// One row of a gain sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CkCurveRow {
    pub alpha: f64,
    pub achievable: Rate,
    pub upper: Rate,
}

/// Achievable rate and upper bound for each gain in `alpha_values`.
pub fn ck_curve(p_max: f64, r0: f64, alpha_values: &[f64]) -> Result<Vec<CkCurveRow>> {
    alpha_values
        .iter()
        .map(|&alpha| {
            let params = CoverKimParams::new(alpha, p_max, r0)?;
            Ok(CkCurveRow {
                alpha,
                achievable: ck_achievable(&params),
                upper: ck_upper(&params),
            })
        })
        .collect()
}
