//! Region evaluators for a single candidate distribution: the general
//! relay channel and the two orthogonal-component specializations.

use super::channel::{build_joint, DiscreteRelayChannel, DistributionTriple};
use super::channel::{Model1DiscreteChannel, Model2DiscreteChannel};
use super::joint::{JointPmf, Var};
use crate::rate::{Rate, RatePoint};
use crate::{clamp_plus, Error, Result};

/// Slack admitted on the compression-rate constraint, so that the
/// degenerate constant quantizer (no compression, relay unused) is
/// feasible even when `I(X_r; Y) = 0`.
pub const FEASIBILITY_TOL: f64 = 1e-9;

/// Evaluates the general achievable region at one distribution choice.
///
/// Returns `None` when the relay-to-destination link cannot carry the
/// quantization index, i.e. `I(X_r; Y) < I(Ŷ_r; Y_r | Y, X_r) −` the
/// feasibility slack; otherwise the point
/// `r1 = I(X; Y, Ŷ_r | X_r)`, `re = [r1 − I(X; Y_r | X_r)]⁺`.
pub fn thm1_point(
    channel: &DiscreteRelayChannel,
    triple: &DistributionTriple,
) -> Result<Option<RatePoint>> {
    let joint = build_joint(channel, triple)?;
    thm1_point_from_joint(&joint)
}

pub(super) fn thm1_point_from_joint(joint: &JointPmf) -> Result<Option<RatePoint>> {
    let link = joint.mutual_info(&[Var::Xr], &[Var::Y], &[])?.bits();
    let compression = joint
        .mutual_info(&[Var::Yhat], &[Var::Yr], &[Var::Y, Var::Xr])?
        .bits();
    if link < compression - FEASIBILITY_TOL {
        return Ok(None);
    }
    let r1 = joint.mutual_info(&[Var::X], &[Var::Y, Var::Yhat], &[Var::Xr])?;
    let leak = joint.mutual_info(&[Var::X], &[Var::Yr], &[Var::Xr])?;
    let re = Rate::new(clamp_plus(r1.bits() - leak.bits())?)?;
    Ok(Some(RatePoint::new(r1, re)))
}

/// Evaluates the orthogonal source-to-relay region at one input law
/// `p(X_r)·p(X_D | X_r)·p(X_R | X_r)`:
///
/// ```text
/// r1 = min{ I(X_D, X_r; Y),  I(X_R; Y_r | X_r) + I(X_D; Y | X_r) }
/// re = min{ I(X_D; Y | X_r),  r1 }
/// ```
pub fn thm2_point(
    channel: &Model1DiscreteChannel,
    p_xr: &[f64],
    p_xd_given_xr: &[f64],
    p_xrel_given_xr: &[f64],
) -> Result<RatePoint> {
    let (nxd, nxrel, nxr, ny, nyr) = channel.dims();
    if p_xr.len() != nxr {
        return Err(Error::Structure(format!(
            "p(X_r) has {} symbols, channel expects {nxr}",
            p_xr.len()
        )));
    }
    if p_xd_given_xr.len() != nxr * nxd {
        return Err(Error::Structure(format!(
            "p(X_D | X_r) has {} entries, expected {}",
            p_xd_given_xr.len(),
            nxr * nxd
        )));
    }
    if p_xrel_given_xr.len() != nxr * nxrel {
        return Err(Error::Structure(format!(
            "p(X_R | X_r) has {} entries, expected {}",
            p_xrel_given_xr.len(),
            nxr * nxrel
        )));
    }
    check_rows("p(X_r)", p_xr, p_xr.len())?;
    check_rows("p(X_D | X_r)", p_xd_given_xr, nxd)?;
    check_rows("p(X_R | X_r)", p_xrel_given_xr, nxrel)?;

    let dims = vec![nxd, nxrel, nxr, ny, nyr];
    let mut p = vec![0.0; dims.iter().product()];
    let mut flat = 0usize;
    for xd in 0..nxd {
        for xrel in 0..nxrel {
            for xr in 0..nxr {
                let law =
                    p_xr[xr] * p_xd_given_xr[xr * nxd + xd] * p_xrel_given_xr[xr * nxrel + xrel];
                for y in 0..ny {
                    let py = channel.p_y(xd, xr, y);
                    for yr in 0..nyr {
                        p[flat] = law * py * channel.p_yr(xrel, xr, yr);
                        flat += 1;
                    }
                }
            }
        }
    }
    let joint = JointPmf::new(
        vec![Var::XDir, Var::XRel, Var::Xr, Var::Y, Var::Yr],
        dims,
        p,
    )?;

    let sum_rate = joint
        .mutual_info(&[Var::XDir, Var::Xr], &[Var::Y], &[])?
        .bits();
    let relay_rate = joint
        .mutual_info(&[Var::XRel], &[Var::Yr], &[Var::Xr])?
        .bits();
    let direct_rate = joint
        .mutual_info(&[Var::XDir], &[Var::Y], &[Var::Xr])?
        .bits();

    let r1 = sum_rate.min(relay_rate + direct_rate);
    let re = direct_rate.min(r1);
    Ok(RatePoint::new(Rate::new(r1)?, Rate::new(re)?))
}

fn check_rows(name: &str, table: &[f64], row_len: usize) -> Result<()> {
    for (i, row) in table.chunks(row_len).enumerate() {
        let mut sum = 0.0;
        for &v in row {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Structure(format!(
                    "{name} row {i} has invalid entry {v}"
                )));
            }
            sum += v;
        }
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::Structure(format!(
                "{name} row {i} sums to {sum}, expected 1 within 1e-12"
            )));
        }
    }
    Ok(())
}

/// Evaluates the orthogonal relay-to-destination region at one
/// distribution choice, by delegating to the general evaluator with the
/// composite destination output `Y = (Y_D, Y_R)`.
///
/// The channel must factorize as `p(Y_D|X)·p(Y_r|X, X_r, Y_D)·p(Y_R|X_r)`
/// (checked within 1e-9), and `I(X_r; Y_D, Y_R) = I(X_r; Y_R)` is verified
/// as a self-check of the orthogonality argument.
pub fn thm3_point(
    channel: &Model2DiscreteChannel,
    triple: &DistributionTriple,
) -> Result<Option<RatePoint>> {
    let err = channel.factorization_error();
    if err > 1e-9 {
        return Err(Error::Structure(format!(
            "not a Model 2 channel: factorization residual {err:.3e} exceeds 1e-9"
        )));
    }
    let composite = channel.to_composite();
    let point = thm1_point(&composite, triple)?;

    let dest = channel.destination_joint(triple.px(), triple.pxr())?;
    let both = dest
        .mutual_info(&[Var::Xr], &[Var::YDir, Var::YRel], &[])?
        .bits();
    let relay_only = dest.mutual_info(&[Var::Xr], &[Var::YRel], &[])?.bits();
    if (both - relay_only).abs() > 1e-9 {
        return Err(Error::Structure(format!(
            "orthogonality self-check failed: I(Xr; YD, YR) = {both} but I(Xr; YR) = {relay_only}"
        )));
    }
    Ok(point)
}
