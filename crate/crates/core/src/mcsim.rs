//! Seeded Monte-Carlo validation of the amplify-and-forward equivalent
//! wiretap channel: sample the four-signal system, estimate the effective
//! relay-path SNR factor ξ and the secrecy rate from sample covariances,
//! and check the relay power constraint.
//!
//! Determinism contract: the generator is ChaCha12 (rand_chacha), split
//! into fixed 65536-sample partitions via `set_stream(partition_index)`;
//! partial moment sums are combined in partition-index order. Reports are
//! therefore bit-identical across runs and across any future worker
//! layout.

use crate::model2::GaussianModel2Params;
use crate::rate::Rate;
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

/// Samples per generator partition.
const PARTITION: u64 = 65536;

/// One simulation request: channel parameters, source power, sample count,
/// seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    params: GaussianModel2Params,
    p: f64,
    n_samples: u64,
    seed: u64,
}

impl SimConfig {
    pub fn new(params: GaussianModel2Params, p: f64, n_samples: u64, seed: u64) -> Result<Self> {
        if n_samples == 0 {
            return Err(Error::Domain("n_samples must be at least 1".into()));
        }
        if !(p.is_finite() && p > 0.0 && p <= params.p_max()) {
            return Err(Error::Domain(format!(
                "p must lie in (0, {}], got {p}",
                params.p_max()
            )));
        }
        Ok(SimConfig {
            params,
            p,
            n_samples,
            seed,
        })
    }

    pub fn params(&self) -> &GaussianModel2Params {
        &self.params
    }
    pub fn p(&self) -> f64 {
        self.p
    }
    pub fn n_samples(&self) -> u64 {
        self.n_samples
    }
    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Estimates produced by one simulation run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimReport {
    /// Estimated relay-path SNR factor ξ.
    pub xi_hat: f64,
    /// Sample mean of the squared relay transmit signal.
    pub relay_power_hat: f64,
    /// Gaussian mutual-information estimate of the secrecy rate,
    /// clamped at zero.
    pub re_hat: Rate,
    pub n_samples: u64,
    pub seed: u64,
}

/// Raw and centered moment sums of `(X, Y_D, Y_R, Y_r)`.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: f64,
    sx: f64,
    sd: f64,
    s_rel: f64,
    sr: f64,
    sxx: f64,
    sdd: f64,
    s_rel_rel: f64,
    srr: f64,
    sxd: f64,
    sx_rel: f64,
    sxr: f64,
    sd_rel: f64,
}

impl Moments {
    fn add(&mut self, other: &Moments) {
        self.n += other.n;
        self.sx += other.sx;
        self.sd += other.sd;
        self.s_rel += other.s_rel;
        self.sr += other.sr;
        self.sxx += other.sxx;
        self.sdd += other.sdd;
        self.s_rel_rel += other.s_rel_rel;
        self.srr += other.srr;
        self.sxd += other.sxd;
        self.sx_rel += other.sx_rel;
        self.sxr += other.sxr;
        self.sd_rel += other.sd_rel;
    }
}

fn simulate_partition(config: &SimConfig, part: u64, count: u64, beta: f64) -> Moments {
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    rng.set_stream(part);
    let (a, b) = (config.params.a(), config.params.b());
    let sqrt_p = config.p.sqrt();
    let mut m = Moments {
        n: count as f64,
        ..Moments::default()
    };
    for _ in 0..count {
        let x: f64 = sqrt_p * rng.sample::<f64, _>(StandardNormal);
        let z_r: f64 = rng.sample(StandardNormal);
        let z_d: f64 = rng.sample(StandardNormal);
        let z_rel: f64 = rng.sample(StandardNormal);
        let y_r = a * x + z_r;
        let x_r = beta * y_r;
        let y_rel = b * x_r + z_rel;
        let y_d = x + z_d;

        m.sx += x;
        m.sd += y_d;
        m.s_rel += y_rel;
        m.sr += y_r;
        m.sxx += x * x;
        m.sdd += y_d * y_d;
        m.s_rel_rel += y_rel * y_rel;
        m.srr += y_r * y_r;
        m.sxd += x * y_d;
        m.sx_rel += x * y_rel;
        m.sxr += x * y_r;
        m.sd_rel += y_d * y_rel;
    }
    m
}

/// Runs the amplify-and-forward simulation.
///
/// Draws i.i.d. `X ~ N(0, p)` and unit-variance noises, forms
/// `Y_r = aX + Z_r`, `X_r = βY_r`, `Y_R = bX_r + Z_R`, `Y_D = X + Z_D`
/// (the relay's one-sample forwarding delay is dropped: the relay link is
/// orthogonal to the direct link, so the delay does not change any of the
/// covariances), and estimates:
///
/// - `xi_hat` from the sample-covariance Gaussian mutual information
///   `Î(X; Y_D, Y_R)`: the total effective SNR is `2^(2Î) − 1`, and the
///   relay-path factor is its excess over the direct path, divided by `p`;
/// - `re_hat = [Î(X; Y_D, Y_R) − Î(X; Y_r)]⁺`;
/// - `relay_power_hat`, the sample mean of `X_r²`.
pub fn af_simulate(config: &SimConfig) -> Result<SimReport> {
    let (a, p) = (config.params.a(), config.p);
    let beta = config.params.p_relay().sqrt() / (a * a * p + 1.0).sqrt();

    let mut total = Moments::default();
    let parts = config.n_samples.div_ceil(PARTITION);
    for part in 0..parts {
        let count = PARTITION.min(config.n_samples - part * PARTITION);
        total.add(&simulate_partition(config, part, count, beta));
    }

    let n = total.n;
    let cov = |suv: f64, su: f64, sv: f64| suv / n - (su / n) * (sv / n);
    let xx = cov(total.sxx, total.sx, total.sx);
    let dd = cov(total.sdd, total.sd, total.sd);
    let rel_rel = cov(total.s_rel_rel, total.s_rel, total.s_rel);
    let rr = cov(total.srr, total.sr, total.sr);
    let xd = cov(total.sxd, total.sx, total.sd);
    let x_rel = cov(total.sx_rel, total.sx, total.s_rel);
    let xr = cov(total.sxr, total.sx, total.sr);
    let d_rel = cov(total.sd_rel, total.sd, total.s_rel);

    // det of the (Y_D, Y_R) block and of the full (X, Y_D, Y_R) covariance
    let det2 = dd * rel_rel - d_rel * d_rel;
    let det3 = xx * det2 - xd * (xd * rel_rel - d_rel * x_rel) + x_rel * (xd * d_rel - dd * x_rel);
    let eve_det = xx * rr - xr * xr;
    if !(det2 > 0.0 && det3 > 0.0 && eve_det > 0.0 && xx > 0.0 && rr > 0.0) {
        return Err(Error::Estimation(format!(
            "singular sample covariance at n = {}; more samples needed",
            config.n_samples
        )));
    }

    // 2^(2·Î(X; Y_D, Y_R)) = xx·det2/det3, so the total effective SNR is
    // that ratio minus one.
    let snr_total = xx * det2 / det3 - 1.0;
    let xi_hat = (snr_total - p) / p;
    let i_full = 0.5 * (xx * det2 / det3).log2();
    let i_eve = 0.5 * (xx * rr / eve_det).log2();
    let re_hat = Rate::new((i_full - i_eve).max(0.0))?;
    let relay_power_hat = beta * beta * total.srr / n;

    Ok(SimReport {
        xi_hat,
        relay_power_hat,
        re_hat,
        n_samples: config.n_samples,
        seed: config.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(a: f64, b: f64, p: f64, pr: f64, n: u64, seed: u64) -> SimConfig {
        let params = GaussianModel2Params::new(a, b, 1.0f64.max(p), pr).unwrap();
        SimConfig::new(params, p, n, seed).unwrap()
    }

    #[test]
    fn matches_the_closed_form_at_the_reference_point() {
        let report = af_simulate(&config(1.0, 1.0, 1.0, 1.0, 1_000_000, 7)).unwrap();
        assert!((report.xi_hat - 1.0 / 3.0).abs() < 0.0067);
        assert!((report.relay_power_hat - 1.0).abs() < 0.01);
        let re_formula = 0.5 * (1.0f64 + 4.0 / 3.0).log2() - 0.5;
        assert!((report.re_hat.bits() - re_formula).abs() < 0.01);
    }

    #[test]
    fn severed_relay_link_has_no_relay_path_gain() {
        let report = af_simulate(&config(1.0, 0.0, 1.0, 1.0, 100_000, 3)).unwrap();
        assert!(report.xi_hat.abs() < 0.02);
    }

    #[test]
    fn smoke_run_with_few_samples() {
        // wide-tolerance sanity only
        let report = af_simulate(&config(1.0, 1.0, 1.0, 1.0, 10, 1)).unwrap();
        assert!(report.relay_power_hat > 0.0);
        assert_eq!(report.n_samples, 10);
    }

    #[test]
    fn reruns_are_bit_identical() {
        let cfg = config(1.3, 0.7, 0.9, 2.0, 200_000, 42);
        let a = af_simulate(&cfg).unwrap();
        let b = af_simulate(&cfg).unwrap();
        assert_eq!(a.xi_hat.to_bits(), b.xi_hat.to_bits());
        assert_eq!(a.relay_power_hat.to_bits(), b.relay_power_hat.to_bits());
        assert_eq!(a.re_hat.bits().to_bits(), b.re_hat.bits().to_bits());
    }

    #[test]
    fn relay_power_approaches_its_constraint() {
        let report = af_simulate(&config(0.8, 1.5, 1.0, 2.5, 500_000, 5)).unwrap();
        assert!((report.relay_power_hat - 2.5).abs() < 0.02);
    }

    #[test]
    fn error_shrinks_with_sample_size() {
        let mut small = Vec::new();
        let mut large = Vec::new();
        for seed in 0..20 {
            let xi = |n| {
                af_simulate(&config(1.0, 1.0, 1.0, 1.0, n, seed))
                    .unwrap()
                    .xi_hat
            };
            small.push((xi(100_000) - 1.0 / 3.0).abs());
            large.push((xi(1_000_000) - 1.0 / 3.0).abs());
        }
        let median = |v: &mut Vec<f64>| {
            v.sort_by(|a, b| a.partial_cmp(b).unwrap());
            v[v.len() / 2]
        };
        assert!(median(&mut small) > median(&mut large));
    }

    #[test]
    fn config_validation() {
        let params = GaussianModel2Params::new(1.0, 1.0, 1.0, 1.0).unwrap();
        assert!(SimConfig::new(params, 0.0, 100, 0).is_err());
        assert!(SimConfig::new(params, 1.5, 100, 0).is_err());
        assert!(SimConfig::new(params, 0.5, 0, 0).is_err());
    }
}
