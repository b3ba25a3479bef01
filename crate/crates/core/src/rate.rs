//! Scalar rate primitives and the rate-region types shared by every
//! evaluator: the Gaussian capacity function `C(x) = ½·log₂(1 + x)`, the
//! `[x]⁺` clamp, and Pareto reduction of (R₁, Rₑ) point sets.

use crate::{Error, Result};

/// Absolute tolerance for dominance comparisons between rate points.
pub const DOMINANCE_TOL: f64 = 1e-12;

/// A nonnegative, finite rate in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Rate(f64);

impl Rate {
    /// Wraps a value in bits, rejecting negative or non-finite input.
    pub fn new(bits: f64) -> Result<Self> {
        if !bits.is_finite() {
            return Err(Error::Domain(format!("rate must be finite, got {bits}")));
        }
        if bits < 0.0 {
            return Err(Error::Domain(format!(
                "rate must be nonnegative, got {bits}"
            )));
        }
        Ok(Rate(bits))
    }

    pub const fn zero() -> Self {
        Rate(0.0)
    }

    /// The rate in bits per channel use.
    pub fn bits(self) -> f64 {
        self.0
    }
}

/// A pair of a reliable-message rate `r1` and an equivocation rate `re`.
///
/// Emitted points always satisfy `re <= r1`: the constructor clamps the
/// equivocation to the message rate, since no more than the whole message
/// can stay secret.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePoint {
    r1: Rate,
    re: Rate,
}

impl RatePoint {
    /// Builds a point, clamping `re` down to `r1` if it exceeds it.
    pub fn new(r1: Rate, re: Rate) -> Self {
        let re = if re.bits() > r1.bits() { r1 } else { re };
        RatePoint { r1, re }
    }

    pub fn r1(&self) -> Rate {
        self.r1
    }

    pub fn re(&self) -> Rate {
        self.re
    }
}

/// A rate point together with the parameter values that generated it.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionPoint<P> {
    pub point: RatePoint,
    pub provenance: P,
}

/// A Pareto-nondominated set of rate points, sorted ascending in `r1`
/// (ties broken toward smaller `re`), each carrying its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct RateRegion<P> {
    points: Vec<RegionPoint<P>>,
}

impl<P> RateRegion<P> {
    pub fn points(&self) -> &[RegionPoint<P>] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// True if every point of `self` is matched or beaten (in both
    /// coordinates, within `DOMINANCE_TOL`) by some point of `other`.
    pub fn dominated_by<Q>(&self, other: &RateRegion<Q>) -> bool {
        self.points.iter().all(|p| {
            other.points.iter().any(|q| {
                q.point.r1.bits() >= p.point.r1.bits() - DOMINANCE_TOL
                    && q.point.re.bits() >= p.point.re.bits() - DOMINANCE_TOL
            })
        })
    }
}

/// A uniform grid density: the number of subdivisions per unit interval
/// or per simplex edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    resolution: u32,
}

impl GridSpec {
    pub fn new(resolution: u32) -> Result<Self> {
        if resolution < 2 {
            return Err(Error::Domain(format!(
                "grid resolution must be at least 2, got {resolution}"
            )));
        }
        Ok(GridSpec { resolution })
    }

    pub fn resolution(self) -> u32 {
        self.resolution
    }

    /// The grid fraction `i / resolution` in [0, 1].
    pub fn fraction(self, i: u32) -> f64 {
        f64::from(i) / f64::from(self.resolution)
    }
}

/// The Gaussian capacity function `C(x) = ½·log₂(1 + x)` in bits per
/// channel use.
pub fn awgn_capacity(snr: f64) -> Result<Rate> {
    if !snr.is_finite() {
        return Err(Error::Domain(format!("snr must be finite, got {snr}")));
    }
    if snr < 0.0 {
        return Err(Error::Domain(format!("snr must be nonnegative, got {snr}")));
    }
    Ok(Rate(0.5 * (1.0 + snr).log2()))
}

/// `[x]⁺ = max(x, 0)`.
pub fn clamp_plus(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!(
            "clamp argument must be finite, got {x}"
        )));
    }
    Ok(x.max(0.0))
}

/// Removes dominated points and returns the region in its canonical order.
///
/// A point is dominated when another point matches or exceeds it in both
/// coordinates (within `DOMINANCE_TOL`). Exact ties keep the
/// earlier-generated point. Idempotent.
pub fn pareto_reduce<P>(points: Vec<(RatePoint, P)>) -> RateRegion<P> {
    // Sort by r1 descending, then re descending, then input order; a single
    // sweep then keeps each point that strictly improves the best re seen.
    let mut indexed: Vec<(usize, RatePoint, P)> = points
        .into_iter()
        .enumerate()
        .map(|(i, (pt, prov))| (i, pt, prov))
        .collect();
    indexed.sort_by(|a, b| {
        b.1.r1
            .bits()
            .partial_cmp(&a.1.r1.bits())
            .unwrap()
            .then(b.1.re.bits().partial_cmp(&a.1.re.bits()).unwrap())
            .then(a.0.cmp(&b.0))
    });

    let mut kept: Vec<RegionPoint<P>> = Vec::new();
    let mut best_re = f64::NEG_INFINITY;
    for (_, pt, prov) in indexed {
        if pt.re.bits() > best_re + DOMINANCE_TOL {
            best_re = pt.re.bits();
            kept.push(RegionPoint {
                point: pt,
                provenance: prov,
            });
        }
    }

    kept.sort_by(|a, b| {
        a.point
            .r1
            .bits()
            .partial_cmp(&b.point.r1.bits())
            .unwrap()
            .then(a.point.re.bits().partial_cmp(&b.point.re.bits()).unwrap())
    });
    RateRegion { points: kept }
}
