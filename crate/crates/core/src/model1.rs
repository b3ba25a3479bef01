//! Gaussian relay network with an orthogonal source-to-relay link.
//!
//! The source splits its power between a component `X_D` aimed at the
//! destination (fraction `v`) and a component `X_R` aimed at the relay;
//! the relay transmit signal may be correlated with `X_D` (coefficient
//! `rho`). The equivocation region evaluates to
//!
//! ```text
//! r1 = min{ C((v + b²γ + 2bρ√(vγ))·P/N),  C(a²(1−v)·P/N) + C(v(1−ρ²)·P/N) }
//! re = min{ C(v(1−ρ²)·P/N),  r1 }
//! ```
//!
//! over `0 ≤ v, ρ ≤ 1`. The striking consequence, exposed by
//! [`model1_secrecy_capacity`], is that the maximum secret rate equals the plain
//! direct-link capacity `C(P/N)` no matter how strong the relay links are:
//! for this topology the untrusted relay buys nothing.

use crate::rate::{awgn_capacity, GridSpec, Rate, RatePoint, RateRegion};
use crate::{pareto_reduce, Error, Result};

/// Channel gains and power budgets of the Gaussian model:
/// `Y_r = a·X_R + Z₁`, `Y = b·X_r + X_D + Z`, source power `P`,
/// relay power `γ·P`, noise variance `N` on both links.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianModel1Params {
    a: f64,
    b: f64,
    gamma: f64,
    p_total: f64,
    noise: f64,
}

impl GaussianModel1Params {
    pub fn new(a: f64, b: f64, gamma: f64, p_total: f64, noise: f64) -> Result<Self> {
        for (name, v) in [
            ("a", a),
            ("b", b),
            ("gamma", gamma),
            ("p_total", p_total),
            ("noise", noise),
        ] {
            if !v.is_finite() {
                return Err(Error::Domain(format!("{name} must be finite, got {v}")));
            }
        }
        if gamma < 0.0 {
            return Err(Error::Domain(format!(
                "gamma must be nonnegative, got {gamma}"
            )));
        }
        if p_total <= 0.0 {
            return Err(Error::Domain(format!(
                "p_total must be positive, got {p_total}"
            )));
        }
        if noise <= 0.0 {
            return Err(Error::Domain(format!(
                "noise must be positive, got {noise}"
            )));
        }
        Ok(GaussianModel1Params {
            a,
            b,
            gamma,
            p_total,
            noise,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
    pub fn p_total(&self) -> f64 {
        self.p_total
    }
    pub fn noise(&self) -> f64 {
        self.noise
    }
}

/// A point of the power-split search space: `v` is the fraction of source
/// power on the destination-bound component, `rho` the correlation between
/// the relay signal and that component. Both lie in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Model1Split {
    v: f64,
    rho: f64,
}

impl Model1Split {
    pub fn new(v: f64, rho: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&v) || !v.is_finite() {
            return Err(Error::Domain(format!("v must lie in [0, 1], got {v}")));
        }
        if !(0.0..=1.0).contains(&rho) || !rho.is_finite() {
            return Err(Error::Domain(format!("rho must lie in [0, 1], got {rho}")));
        }
        Ok(Model1Split { v, rho })
    }

    pub fn v(&self) -> f64 {
        self.v
    }
    pub fn rho(&self) -> f64 {
        self.rho
    }
}

/// Evaluates the equivocation-region corner for one power split.
pub fn model1_point(params: &GaussianModel1Params, split: Model1Split) -> RatePoint {
    let (v, rho) = (split.v, split.rho);
    let p_over_n = params.p_total / params.noise;

    // Var(X_D + b·X_r)/P = v + b²γ + 2bρ√(vγ) = (√v + b√γ)² ≥ 0 at ρ = 1;
    // nonnegative for all ρ in [0, 1], so only float cancellation is clamped.
    let sum_snr = ((v
        + params.b * params.b * params.gamma
        + 2.0 * params.b * rho * (v * params.gamma).sqrt())
        * p_over_n)
        .max(0.0);
    let relay_snr = params.a * params.a * (1.0 - v) * p_over_n;
    let direct_snr = v * (1.0 - rho * rho) * p_over_n;

    let c_sum = awgn_capacity(sum_snr).expect("snr nonnegative by construction");
    let c_relay = awgn_capacity(relay_snr).expect("snr nonnegative by construction");
    let c_direct = awgn_capacity(direct_snr).expect("snr nonnegative by construction");

    let r1 = c_sum.bits().min(c_relay.bits() + c_direct.bits());
    let re = c_direct.bits().min(r1);
    RatePoint::new(Rate::new(r1).unwrap(), Rate::new(re).unwrap())
}

/// Sweeps the (v, rho) grid and Pareto-reduces the resulting points.
pub fn model1_region(params: &GaussianModel1Params, grid: GridSpec) -> RateRegion<Model1Split> {
    let res = grid.resolution();
    let mut points = Vec::with_capacity(((res + 1) * (res + 1)) as usize);
    for iv in 0..=res {
        for irho in 0..=res {
            let split = Model1Split::new(grid.fraction(iv), grid.fraction(irho))
                .expect("grid fractions lie in [0, 1]");
            points.push((model1_point(params, split), split));
        }
    }
    pareto_reduce(points)
}

/// The largest equivocation rate on the grid together with the split that
/// attains it (first such split in row-major (v, rho) order).
///
/// Grid accuracy is O(1/resolution); for this channel the maximum is in
/// fact attained exactly at the grid corner v = 1, rho = 0 and equals the
/// direct-link capacity C(P/N).
pub fn model1_secrecy_capacity_with_split(
    params: &GaussianModel1Params,
    grid: GridSpec,
) -> (Rate, Model1Split) {
    let res = grid.resolution();
    let mut best = f64::NEG_INFINITY;
    let mut best_split = Model1Split { v: 0.0, rho: 0.0 };
    for iv in 0..=res {
        for irho in 0..=res {
            let split = Model1Split::new(grid.fraction(iv), grid.fraction(irho))
                .expect("grid fractions lie in [0, 1]");
            let re = model1_point(params, split).re().bits();
            if re > best {
                best = re;
                best_split = split;
            }
        }
    }
    (Rate::new(best).unwrap(), best_split)
}

/// The largest equivocation rate achievable on the (v, rho) grid.
pub fn model1_secrecy_capacity(params: &GaussianModel1Params, grid: GridSpec) -> Rate {
    model1_secrecy_capacity_with_split(params, grid).0
}
