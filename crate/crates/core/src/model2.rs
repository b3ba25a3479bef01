//! Gaussian relay network with an orthogonal relay-to-destination link:
//! `Y_D = X + Z_D`, `Y_r = a·X + Z_r`, `Y_R = b·X_r + Z_R`, unit noise
//! variances, source power budget `P`, relay power `P_r`.
//!
//! Two relaying strategies are evaluated against an upper bound:
//!
//! - Compress-and-forward ([`cf_rate`]): the relay Wyner-Ziv quantizes its
//!   observation with noise variance
//!   `σ_Q² = ((a²+1)p + 1) / (b²·P_r·(p+1))` and the secrecy rate is
//!   `[C(p + a²p/(1+σ_Q²)) − C(a²p)]⁺`.
//! - Amplify-and-forward ([`af_rate`]): the relay scales by
//!   `β = √(P_r/(a²p+1))`, the relay path contributes effective SNR factor
//!   `ξ = a²β²b²/(1+β²b²)`, and the rate is `[C((1+ξ)p) − C(a²p)]⁺`.
//!
//! The upper bound ([`upper_bound`]) is
//! `min{ C(b²P_r) + [C(P) − C(a²P)]⁺, C(P/(1+a²P)) }`.
//!
//! CF strictly beats AF before clamping whenever `a, b, p > 0`, and under a
//! secrecy constraint the optimal source power can be interior — unlike the
//! unconstrained problem, where full power is always optimal.

use crate::rate::{awgn_capacity, GridSpec, Rate};
use crate::{clamp_plus, Error, Result};

/// Channel gains and power budgets: source-to-relay gain `a`,
/// relay-to-destination gain `b`, source budget `P`, relay power `P_r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianModel2Params {
    a: f64,
    b: f64,
    p_max: f64,
    p_relay: f64,
}

impl GaussianModel2Params {
    pub fn new(a: f64, b: f64, p_max: f64, p_relay: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b), ("p_max", p_max), ("p_relay", p_relay)] {
            if !v.is_finite() {
                return Err(Error::Domain(format!("{name} must be finite, got {v}")));
            }
        }
        if p_max <= 0.0 {
            return Err(Error::Domain(format!(
                "p_max must be positive, got {p_max}"
            )));
        }
        if p_relay <= 0.0 {
            return Err(Error::Domain(format!(
                "p_relay must be positive, got {p_relay}"
            )));
        }
        Ok(GaussianModel2Params {
            a,
            b,
            p_max,
            p_relay,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn p_max(&self) -> f64 {
        self.p_max
    }
    pub fn p_relay(&self) -> f64 {
        self.p_relay
    }
}

/// Compress-and-forward evaluation at one source power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CfEvaluation {
    pub p: f64,
    pub sigma_q2: f64,
    pub r1_bound: Rate,
    pub re_bound: Rate,
}

/// Amplify-and-forward evaluation at one source power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AfEvaluation {
    pub p: f64,
    pub beta: f64,
    pub xi: f64,
    pub re_bound: Rate,
}

fn check_power(p: f64, p_max: f64) -> Result<()> {
    if !p.is_finite() || p < 0.0 || p > p_max {
        return Err(Error::Domain(format!(
            "p must lie in [0, {p_max}], got {p}"
        )));
    }
    Ok(())
}

/// Wyner-Ziv quantization noise variance for source power `p`.
pub fn sigma_q2(params: &GaussianModel2Params, p: f64) -> Result<f64> {
    if params.b == 0.0 {
        return Err(Error::Domain(
            "relay link absent: b = 0 leaves the quantization noise undefined".into(),
        ));
    }
    let (a, b) = (params.a, params.b);
    Ok(((a * a + 1.0) * p + 1.0) / (b * b * params.p_relay * (p + 1.0)))
}

/// Compress-and-forward secrecy rate at source power `p`.
pub fn cf_rate(params: &GaussianModel2Params, p: f64) -> Result<CfEvaluation> {
    check_power(p, params.p_max)?;
    let sq = sigma_q2(params, p)?;
    let a2p = params.a * params.a * p;
    let r1 = awgn_capacity(p + a2p / (1.0 + sq))?;
    let re = clamp_plus(r1.bits() - awgn_capacity(a2p)?.bits())?;
    Ok(CfEvaluation {
        p,
        sigma_q2: sq,
        r1_bound: r1,
        re_bound: Rate::new(re)?,
    })
}

/// Amplify-and-forward secrecy rate at source power `p`.
pub fn af_rate(params: &GaussianModel2Params, p: f64) -> Result<AfEvaluation> {
    check_power(p, params.p_max)?;
    let a2p = params.a * params.a * p;
    let beta = params.p_relay.sqrt() / (a2p + 1.0).sqrt();
    let bb2 = beta * beta * params.b * params.b;
    let xi = params.a * params.a * bb2 / (1.0 + bb2);
    let re = clamp_plus(awgn_capacity((1.0 + xi) * p)?.bits() - awgn_capacity(a2p)?.bits())?;
    Ok(AfEvaluation {
        p,
        beta,
        xi,
        re_bound: Rate::new(re)?,
    })
}

fn optimize_on_grid<F>(p_max: f64, grid: GridSpec, mut rate_at: F) -> Result<(f64, Rate)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let res = grid.resolution();
    let mut best_p = 0.0;
    let mut best = f64::NEG_INFINITY;
    for i in 0..=res {
        let p = p_max * grid.fraction(i);
        let re = rate_at(p)?;
        // strict improvement only: ties resolve toward the smaller p
        if re > best {
            best = re;
            best_p = p;
        }
    }
    Ok((best_p, Rate::new(best)?))
}

/// Maximizes the compress-and-forward rate over the source-power grid
/// `{0, P/res, …, P}`. Ties break toward smaller `p`.
pub fn cf_optimize(params: &GaussianModel2Params, grid: GridSpec) -> Result<(f64, Rate)> {
    optimize_on_grid(params.p_max, grid, |p| {
        Ok(cf_rate(params, p)?.re_bound.bits())
    })
}

/// Maximizes the amplify-and-forward rate over the source-power grid.
pub fn af_optimize(params: &GaussianModel2Params, grid: GridSpec) -> Result<(f64, Rate)> {
    optimize_on_grid(params.p_max, grid, |p| {
        Ok(af_rate(params, p)?.re_bound.bits())
    })
}

/// Upper bound on the secrecy rate:
/// `min{ C(b²P_r) + [C(P) − C(a²P)]⁺, C(P/(1+a²P)) }`.
///
/// The first term charges the relay-to-destination link at the relay's own
/// power budget; with `P_r = P` the two budgets coincide.
pub fn upper_bound(params: &GaussianModel2Params) -> Rate {
    let (a, b, p) = (params.a, params.b, params.p_max);
    let first = awgn_capacity(b * b * params.p_relay)
        .expect("snr nonnegative")
        .bits()
        + clamp_plus(
            awgn_capacity(p).expect("snr nonnegative").bits()
                - awgn_capacity(a * a * p).expect("snr nonnegative").bits(),
        )
        .expect("finite");
    let second = awgn_capacity(p / (1.0 + a * a * p))
        .expect("snr nonnegative")
        .bits();
    Rate::new(first.min(second)).expect("bound nonnegative")
}

/// One row of a source-power sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSweepRow {
    pub p: f64,
    pub cf_re: Rate,
    pub af_re: Rate,
}

/// CF and AF rates at every grid power, for rate-versus-power curves.
pub fn power_sweep(params: &GaussianModel2Params, grid: GridSpec) -> Result<Vec<PowerSweepRow>> {
    let res = grid.resolution();
    let mut rows = Vec::with_capacity(res as usize + 1);
    for i in 0..=res {
        let p = params.p_max * grid.fraction(i);
        rows.push(PowerSweepRow {
            p,
            cf_re: cf_rate(params, p)?.re_bound,
            af_re: af_rate(params, p)?.re_bound,
        });
    }
    Ok(rows)
}

/// One row of a relay-gain sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BSweepRow {
    pub b: f64,
    pub cf_re_star: Rate,
    pub af_re_star: Rate,
    pub upper_bound: Rate,
}

/// Optimized CF/AF rates and the upper bound for each relay gain in
/// `b_values`, for bound-tightness curves.
pub fn b_sweep(
    a: f64,
    p_max: f64,
    p_relay: f64,
    b_values: &[f64],
    grid: GridSpec,
) -> Result<Vec<BSweepRow>> {
    let mut rows = Vec::with_capacity(b_values.len());
    for &b in b_values {
        if !(b.is_finite() && b > 0.0) {
            return Err(Error::Domain(format!("b values must be positive, got {b}")));
        }
        let params = GaussianModel2Params::new(a, b, p_max, p_relay)?;
        let (_, cf) = cf_optimize(&params, grid)?;
        let (_, af) = af_optimize(&params, grid)?;
        rows.push(BSweepRow {
            b,
            cf_re_star: cf,
            af_re_star: af,
            upper_bound: upper_bound(&params),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn c(x: f64) -> f64 {
        0.5 * (1.0 + x).log2()
    }

    fn params(a: f64, b: f64, p: f64, pr: f64) -> GaussianModel2Params {
        GaussianModel2Params::new(a, b, p, pr).unwrap()
    }

    fn grid(res: u32) -> GridSpec {
        GridSpec::new(res).unwrap()
    }

    #[test]
    fn cf_rate_unit_example() {
        let ev = cf_rate(&params(1.0, 1.0, 1.0, 1.0), 1.0).unwrap();
        assert!((ev.sigma_q2 - 1.5).abs() < 1e-15);
        assert!((ev.re_bound.bits() - 0.13151720291689684).abs() < 1e-13);
    }

    #[test]
    fn cf_rate_deaf_eavesdropper_gets_direct_capacity() {
        let ev = cf_rate(&params(0.0, 1.0, 2.0, 1.0), 1.7).unwrap();
        assert!((ev.re_bound.bits() - c(1.7)).abs() < 1e-13);
    }

    #[test]
    fn cf_rate_zero_power_is_zero() {
        let ev = cf_rate(&params(1.0, 1.0, 1.0, 1.0), 0.0).unwrap();
        assert_eq!(ev.r1_bound.bits(), 0.0);
        assert_eq!(ev.re_bound.bits(), 0.0);
    }

    #[test]
    fn cf_rate_domain_errors() {
        assert!(cf_rate(&params(1.0, 1.0, 1.0, 1.0), 1.5).is_err());
        assert!(cf_rate(&params(1.0, 1.0, 1.0, 1.0), -0.1).is_err());
        assert!(cf_rate(&params(1.0, 0.0, 1.0, 1.0), 0.5).is_err());
    }

    #[test]
    fn af_rate_unit_example() {
        let ev = af_rate(&params(1.0, 1.0, 1.0, 1.0), 1.0).unwrap();
        assert!((ev.beta * ev.beta - 0.5).abs() < 1e-15);
        assert!((ev.xi - 1.0 / 3.0).abs() < 1e-15);
        assert!((ev.re_bound.bits() - 0.11119621066822383).abs() < 1e-13);
    }

    #[test]
    fn af_rate_severed_relay_link() {
        let ev = af_rate(&params(0.8, 0.0, 1.0, 1.0), 0.9).unwrap();
        assert_eq!(ev.xi, 0.0);
        let expect = (c(0.9) - c(0.64 * 0.9)).max(0.0);
        assert!((ev.re_bound.bits() - expect).abs() < 1e-13);
    }

    #[test]
    fn af_rate_zero_power_is_zero() {
        let ev = af_rate(&params(1.0, 1.0, 1.0, 1.0), 0.0).unwrap();
        assert_eq!(ev.re_bound.bits(), 0.0);
    }

    #[test]
    fn cf_optimize_strong_relay_link_uses_full_power() {
        let (p_star, _) = cf_optimize(&params(1.2, 10.0, 1.0, 1.0), grid(1024)).unwrap();
        assert_eq!(p_star, 1.0);
    }

    #[test]
    fn cf_optimize_weak_relay_link_gets_nothing() {
        let (p_star, re_star) = cf_optimize(&params(2.0, 0.01, 1.0, 1.0), grid(1024)).unwrap();
        assert_eq!(re_star.bits(), 0.0);
        // all-zero objective resolves to the smallest power
        assert_eq!(p_star, 0.0);
    }

    #[test]
    fn af_optimize_weak_eavesdropper_uses_full_power() {
        let (p_star, re_star) = af_optimize(&params(0.5, 1.0, 1.0, 1.0), grid(1024)).unwrap();
        assert_eq!(p_star, 1.0);
        assert!(re_star.bits() > 0.3);
    }

    #[test]
    fn af_optimize_vanishing_budget() {
        let (_, re_star) = af_optimize(&params(1.0, 1.0, 1e-9, 1.0), grid(64)).unwrap();
        assert!(re_star.bits() < 1e-9);
    }

    #[test]
    fn power_control_helps_both_schemes_when_b_small() {
        let p = params(1.2, 0.8, 1.0, 1.0);
        let g = grid(1024);
        let (cf_p, cf_re) = cf_optimize(&p, g).unwrap();
        let (af_p, af_re) = af_optimize(&p, g).unwrap();
        assert!(cf_p < 1.0 && cf_re.bits() > 0.0);
        assert!(af_p < 1.0 && af_re.bits() > 0.0);
        assert_eq!(cf_rate(&p, 1.0).unwrap().re_bound.bits(), 0.0);
        assert_eq!(af_rate(&p, 1.0).unwrap().re_bound.bits(), 0.0);
    }

    #[test]
    fn upper_bound_values() {
        assert!(
            (upper_bound(&params(1.0, 1.0, 1.0, 1.0)).bits() - 0.2924812503605781).abs() < 1e-15
        );
        assert!((upper_bound(&params(0.0, 3.0, 1.0, 1.0)).bits() - 0.5).abs() < 1e-15);
        assert_eq!(upper_bound(&params(2.0, 0.0, 1.0, 1.0)).bits(), 0.0);
    }

    #[test]
    fn power_sweep_starts_at_zero_and_cf_dominates() {
        let rows = power_sweep(&params(1.2, 3.0, 1.0, 1.0), grid(64)).unwrap();
        assert_eq!(rows[0].p, 0.0);
        assert_eq!(rows[0].cf_re.bits(), 0.0);
        assert_eq!(rows[0].af_re.bits(), 0.0);
        for row in &rows {
            assert!(row.cf_re.bits() >= row.af_re.bits() - 1e-12);
        }
        // with a strong relay link the CF rate grows with power
        for w in rows.windows(2) {
            assert!(w[1].cf_re.bits() >= w[0].cf_re.bits() - 1e-12);
        }
    }

    #[test]
    fn b_sweep_tightens_against_upper_bound() {
        let bs = [0.01, 0.1, 1.0, 10.0, 100.0];
        let rows = b_sweep(1.0, 1.0, 1.0, &bs, grid(1024)).unwrap();
        assert!(rows[0].cf_re_star.bits() < 1e-4);
        let last = rows.last().unwrap();
        assert!((last.cf_re_star.bits() - last.upper_bound.bits()).abs() < 0.01);
        for w in rows.windows(2) {
            assert!(w[0].b < w[1].b);
            assert!(w[1].upper_bound.bits() >= w[0].upper_bound.bits() - 1e-12);
        }
    }

    #[test]
    fn b_sweep_rejects_nonpositive_b() {
        assert!(b_sweep(1.0, 1.0, 1.0, &[0.5, 0.0], grid(8)).is_err());
    }

    #[test]
    fn relay_helps_when_direct_secrecy_is_zero() {
        // a = 1.2 > 1: without the relay the wiretap secrecy rate is zero,
        // yet some b in the sweep achieves a clearly positive rate.
        let bs = [0.01, 0.1, 1.0, 10.0, 100.0];
        let rows = b_sweep(1.2, 1.0, 1.0, &bs, grid(256)).unwrap();
        assert!(rows.iter().any(|r| r.cf_re_star.bits() > 0.01));
    }

    #[test]
    fn cf_beats_af_before_clamping_on_random_parameters() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for _ in 0..500 {
            let a = rng.gen_range(1e-3..5.0);
            let b = rng.gen_range(1e-3..5.0);
            let pr = rng.gen_range(1e-3..5.0);
            let p_max = rng.gen_range(1e-3..5.0);
            let p = rng.gen_range(f64::MIN_POSITIVE..=1.0) * p_max;
            let params = GaussianModel2Params::new(a, b, p_max, pr).unwrap();
            let cf = cf_rate(&params, p).unwrap();
            let af = af_rate(&params, p).unwrap();
            let cf_pre = cf.r1_bound.bits() - c(a * a * p);
            let af_pre = c((1.0 + af.xi) * p) - c(a * a * p);
            assert!(
                cf_pre > af_pre,
                "AF matched CF at a={a} b={b} pr={pr} p={p}"
            );
        }
    }

    #[test]
    fn achievable_rates_never_exceed_upper_bound() {
        let mut rng = ChaCha12Rng::seed_from_u64(12);
        let g = grid(128);
        for _ in 0..200 {
            let a = rng.gen_range(1e-3..5.0);
            let b = rng.gen_range(1e-3..5.0);
            let pr = rng.gen_range(1e-3..5.0);
            let p_max = rng.gen_range(1e-3..5.0);
            let params = GaussianModel2Params::new(a, b, p_max, pr).unwrap();
            let ub = upper_bound(&params).bits();
            let (_, cf) = cf_optimize(&params, g).unwrap();
            let (_, af) = af_optimize(&params, g).unwrap();
            assert!(cf.bits() <= ub + 1e-9);
            assert!(af.bits() <= ub + 1e-9);
            assert!(ub <= c(p_max) + 1e-12);
        }
    }

    #[test]
    fn cf_receive_snr_is_increasing_and_matches_closed_form() {
        // p + a²p/(1+σ_Q²) rewritten over a common denominator:
        // p·((1+a²)(b²P_r+1)(p+1) − a²) / ((b²P_r+a²+1)(p+1) − a²)
        let mut rng = ChaCha12Rng::seed_from_u64(13);
        for _ in 0..100 {
            let a = rng.gen_range(1e-3..5.0);
            let b = rng.gen_range(1e-3..5.0);
            let pr = rng.gen_range(1e-3..5.0);
            let params = GaussianModel2Params::new(a, b, 10.0, pr).unwrap();
            let mut prev = 0.0;
            for i in 1..=1000 {
                let p = 10.0 * i as f64 / 1000.0;
                let sq = sigma_q2(&params, p).unwrap();
                let snr = p + a * a * p / (1.0 + sq);
                let num = (1.0 + a * a) * (b * b * pr + 1.0) * (p + 1.0) - a * a;
                let den = (b * b * pr + a * a + 1.0) * (p + 1.0) - a * a;
                assert!((snr - p * num / den).abs() < 1e-9 * snr.max(1.0));
                assert!(snr > prev, "receive SNR not increasing at p={p}");
                prev = snr;
            }
            // consequence: the r1 bound is maximized at full power
            let full = cf_rate(&params, 10.0).unwrap().r1_bound.bits();
            let half = cf_rate(&params, 5.0).unwrap().r1_bound.bits();
            assert!(full > half);
        }
    }
}
