//! Finite-alphabet channel descriptions and candidate input distributions.

use super::joint::{JointPmf, Var};
use super::MAX_JOINT_CELLS;
use crate::{Error, Result};

const ROW_SUM_TOL: f64 = 1e-12;

fn check_pmf(name: &str, p: &[f64]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::Structure(format!("{name} is empty")));
    }
    let mut sum = 0.0;
    for &v in p {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::Structure(format!(
                "{name} has invalid probability {v}"
            )));
        }
        sum += v;
    }
    if (sum - 1.0).abs() > ROW_SUM_TOL {
        return Err(Error::Structure(format!(
            "{name} sums to {sum}, expected 1 within {ROW_SUM_TOL}"
        )));
    }
    Ok(())
}

/// A memoryless relay channel `p(Y, Y_r | X, X_r)` on finite alphabets,
/// stored as one pmf slice per `(x, x_r)` pair, `y` major and `y_r` minor.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteRelayChannel {
    nx: usize,
    nxr: usize,
    ny: usize,
    nyr: usize,
    w: Vec<f64>,
}

impl DiscreteRelayChannel {
    pub fn new(nx: usize, nxr: usize, ny: usize, nyr: usize, w: Vec<f64>) -> Result<Self> {
        for (name, n) in [("|X|", nx), ("|X_r|", nxr), ("|Y|", ny), ("|Y_r|", nyr)] {
            if n == 0 {
                return Err(Error::Structure(format!("{name} must be at least 1")));
            }
        }
        let cells = nx * nxr * ny * nyr;
        if w.len() != cells {
            return Err(Error::Structure(format!(
                "transition table has {} entries, alphabets require {cells}",
                w.len()
            )));
        }
        for x in 0..nx {
            for xr in 0..nxr {
                let start = (x * nxr + xr) * ny * nyr;
                check_pmf(
                    &format!("transition slice at (x={x}, x_r={xr})"),
                    &w[start..start + ny * nyr],
                )?;
            }
        }
        Ok(DiscreteRelayChannel {
            nx,
            nxr,
            ny,
            nyr,
            w,
        })
    }

    /// Builds a channel from a deterministic map `(x, x_r) -> (y, y_r)`.
    pub fn deterministic(
        nx: usize,
        nxr: usize,
        ny: usize,
        nyr: usize,
        map: impl Fn(usize, usize) -> (usize, usize),
    ) -> Result<Self> {
        let mut w = vec![0.0; nx * nxr * ny * nyr];
        for x in 0..nx {
            for xr in 0..nxr {
                let (y, yr) = map(x, xr);
                w[((x * nxr + xr) * ny + y) * nyr + yr] = 1.0;
            }
        }
        DiscreteRelayChannel::new(nx, nxr, ny, nyr, w)
    }

    pub fn nx(&self) -> usize {
        self.nx
    }
    pub fn nxr(&self) -> usize {
        self.nxr
    }
    pub fn ny(&self) -> usize {
        self.ny
    }
    pub fn nyr(&self) -> usize {
        self.nyr
    }

    /// `p(y, y_r | x, x_r)`.
    pub fn transition(&self, x: usize, xr: usize, y: usize, yr: usize) -> f64 {
        self.w[((x * self.nxr + xr) * self.ny + y) * self.nyr + yr]
    }

    /// Prefixes the source input with a variable `U` distributed over
    /// `u_size` symbols through the row-stochastic table `pxu[u][x]`,
    /// returning the composed channel
    /// `p(Y, Y_r | U, X_r) = Σ_x p(x|u)·p(Y, Y_r | x, X_r)`.
    ///
    /// Region evaluators then apply verbatim with `U` in the input slot.
    pub fn prefix(&self, pxu: &[f64], u_size: usize) -> Result<DiscreteRelayChannel> {
        if u_size == 0 {
            return Err(Error::Structure("|U| must be at least 1".into()));
        }
        if pxu.len() != u_size * self.nx {
            return Err(Error::Structure(format!(
                "prefix table has {} entries, expected {}",
                pxu.len(),
                u_size * self.nx
            )));
        }
        for u in 0..u_size {
            check_pmf(
                &format!("prefix row at u={u}"),
                &pxu[u * self.nx..(u + 1) * self.nx],
            )?;
        }
        let mut w = vec![0.0; u_size * self.nxr * self.ny * self.nyr];
        for u in 0..u_size {
            for xr in 0..self.nxr {
                for y in 0..self.ny {
                    for yr in 0..self.nyr {
                        let mut acc = 0.0;
                        for x in 0..self.nx {
                            acc += pxu[u * self.nx + x] * self.transition(x, xr, y, yr);
                        }
                        w[((u * self.nxr + xr) * self.ny + y) * self.nyr + yr] = acc;
                    }
                }
            }
        }
        DiscreteRelayChannel::new(u_size, self.nxr, self.ny, self.nyr, w)
    }
}

/// A candidate `(p(X), p(X_r), p(Ŷ_r | Y_r, X_r))` for region evaluation.
/// Quantizer rows are indexed by `(y_r, x_r)`, `y_r` major.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionTriple {
    px: Vec<f64>,
    pxr: Vec<f64>,
    quantizer: Vec<f64>,
    nyhat: usize,
}

impl DistributionTriple {
    pub fn new(px: Vec<f64>, pxr: Vec<f64>, quantizer: Vec<f64>, nyhat: usize) -> Result<Self> {
        check_pmf("p(X)", &px)?;
        check_pmf("p(X_r)", &pxr)?;
        if nyhat == 0 {
            return Err(Error::Structure("|Ŷ_r| must be at least 1".into()));
        }
        if quantizer.is_empty() || !quantizer.len().is_multiple_of(nyhat) {
            return Err(Error::Structure(format!(
                "quantizer has {} entries, not a multiple of |Ŷ_r| = {nyhat}",
                quantizer.len()
            )));
        }
        for (row, chunk) in quantizer.chunks(nyhat).enumerate() {
            check_pmf(&format!("quantizer row {row}"), chunk)?;
        }
        Ok(DistributionTriple {
            px,
            pxr,
            quantizer,
            nyhat,
        })
    }

    /// A triple whose quantizer ignores the relay observation entirely
    /// (single-symbol `Ŷ_r`), the "do not compress" choice.
    pub fn without_compression(px: Vec<f64>, pxr: Vec<f64>, nyr: usize) -> Result<Self> {
        let nxr = pxr.len();
        DistributionTriple::new(px, pxr, vec![1.0; nyr * nxr], 1)
    }

    pub fn px(&self) -> &[f64] {
        &self.px
    }
    pub fn pxr(&self) -> &[f64] {
        &self.pxr
    }
    pub fn nyhat(&self) -> usize {
        self.nyhat
    }

    /// `p(ŷ_r | y_r, x_r)`; the row count is validated against a channel
    /// only when a joint is built.
    pub fn quantizer(&self, yr: usize, xr: usize, nxr: usize, yhat: usize) -> f64 {
        self.quantizer[(yr * nxr + xr) * self.nyhat + yhat]
    }
}

/// Materializes the product
/// `p(X)·p(X_r)·p(Y, Y_r | X, X_r)·p(Ŷ_r | Y_r, X_r)` as a dense joint
/// over `(X, X_r, Y, Y_r, Ŷ_r)`.
pub fn build_joint(
    channel: &DiscreteRelayChannel,
    triple: &DistributionTriple,
) -> Result<JointPmf> {
    if triple.px.len() != channel.nx {
        return Err(Error::Structure(format!(
            "p(X) has {} symbols, channel expects {}",
            triple.px.len(),
            channel.nx
        )));
    }
    if triple.pxr.len() != channel.nxr {
        return Err(Error::Structure(format!(
            "p(X_r) has {} symbols, channel expects {}",
            triple.pxr.len(),
            channel.nxr
        )));
    }
    let rows = channel.nyr * channel.nxr;
    if triple.quantizer.len() != rows * triple.nyhat {
        return Err(Error::Structure(format!(
            "quantizer has {} rows, channel expects {rows}",
            triple.quantizer.len() / triple.nyhat
        )));
    }
    let dims = vec![
        channel.nx,
        channel.nxr,
        channel.ny,
        channel.nyr,
        triple.nyhat,
    ];
    let cells: usize = dims.iter().product();
    if cells > MAX_JOINT_CELLS {
        return Err(Error::Structure(format!(
            "joint table of {cells} cells exceeds the dense cap of {MAX_JOINT_CELLS}"
        )));
    }

    let mut p = vec![0.0; cells];
    let mut flat = 0usize;
    for x in 0..channel.nx {
        for xr in 0..channel.nxr {
            let base = triple.px[x] * triple.pxr[xr];
            for y in 0..channel.ny {
                for yr in 0..channel.nyr {
                    let mass = base * channel.transition(x, xr, y, yr);
                    for yhat in 0..triple.nyhat {
                        p[flat] = mass * triple.quantizer(yr, xr, channel.nxr, yhat);
                        flat += 1;
                    }
                }
            }
        }
    }
    JointPmf::new(vec![Var::X, Var::Xr, Var::Y, Var::Yr, Var::Yhat], dims, p)
}

/// The orthogonal source-to-relay model on finite alphabets:
/// `p(Y | X_D, X_r)` and `p(Y_r | X_R, X_r)` given as row-stochastic
/// tables (`y`-
/// and `y_r`-minor respectively).
#[derive(Debug, Clone, PartialEq)]
pub struct Model1DiscreteChannel {
    nxd: usize,
    nxrel: usize,
    nxr: usize,
    ny: usize,
    nyr: usize,
    py: Vec<f64>,
    pyr: Vec<f64>,
}

impl Model1DiscreteChannel {
    pub fn new(
        nxd: usize,
        nxrel: usize,
        nxr: usize,
        ny: usize,
        nyr: usize,
        py: Vec<f64>,
        pyr: Vec<f64>,
    ) -> Result<Self> {
        if nxd == 0 || nxrel == 0 || nxr == 0 || ny == 0 || nyr == 0 {
            return Err(Error::Structure("alphabet sizes must be at least 1".into()));
        }
        if py.len() != nxd * nxr * ny {
            return Err(Error::Structure(format!(
                "p(Y | X_D, X_r) has {} entries, expected {}",
                py.len(),
                nxd * nxr * ny
            )));
        }
        if pyr.len() != nxrel * nxr * nyr {
            return Err(Error::Structure(format!(
                "p(Y_r | X_R, X_r) has {} entries, expected {}",
                pyr.len(),
                nxrel * nxr * nyr
            )));
        }
        for xd in 0..nxd {
            for xr in 0..nxr {
                let start = (xd * nxr + xr) * ny;
                check_pmf(
                    &format!("p(Y | X_D={xd}, X_r={xr})"),
                    &py[start..start + ny],
                )?;
            }
        }
        for xrel in 0..nxrel {
            for xr in 0..nxr {
                let start = (xrel * nxr + xr) * nyr;
                check_pmf(
                    &format!("p(Y_r | X_R={xrel}, X_r={xr})"),
                    &pyr[start..start + nyr],
                )?;
            }
        }
        Ok(Model1DiscreteChannel {
            nxd,
            nxrel,
            nxr,
            ny,
            nyr,
            py,
            pyr,
        })
    }

    pub fn dims(&self) -> (usize, usize, usize, usize, usize) {
        (self.nxd, self.nxrel, self.nxr, self.ny, self.nyr)
    }

    pub fn p_y(&self, xd: usize, xr: usize, y: usize) -> f64 {
        self.py[(xd * self.nxr + xr) * self.ny + y]
    }

    pub fn p_yr(&self, xrel: usize, xr: usize, yr: usize) -> f64 {
        self.pyr[(xrel * self.nxr + xr) * self.nyr + yr]
    }
}

/// The orthogonal relay-to-destination model on finite alphabets, given as
/// the full table `p(Y_D, Y_R, Y_r | X, X_r)` (`y_D` major, then `y_R`,
/// then `y_r`). Whether the table actually factorizes as
/// `p(Y_D|X)·p(Y_r|X, X_r, Y_D)·p(Y_R|X_r)` is checked at evaluation time.
#[derive(Debug, Clone, PartialEq)]
pub struct Model2DiscreteChannel {
    nx: usize,
    nxr: usize,
    nyd: usize,
    nyrel: usize,
    nyr: usize,
    w: Vec<f64>,
}

impl Model2DiscreteChannel {
    pub fn new(
        nx: usize,
        nxr: usize,
        nyd: usize,
        nyrel: usize,
        nyr: usize,
        w: Vec<f64>,
    ) -> Result<Self> {
        if nx == 0 || nxr == 0 || nyd == 0 || nyrel == 0 || nyr == 0 {
            return Err(Error::Structure("alphabet sizes must be at least 1".into()));
        }
        let per_slice = nyd * nyrel * nyr;
        if w.len() != nx * nxr * per_slice {
            return Err(Error::Structure(format!(
                "transition table has {} entries, expected {}",
                w.len(),
                nx * nxr * per_slice
            )));
        }
        for x in 0..nx {
            for xr in 0..nxr {
                let start = (x * nxr + xr) * per_slice;
                check_pmf(
                    &format!("transition slice at (x={x}, x_r={xr})"),
                    &w[start..start + per_slice],
                )?;
            }
        }
        Ok(Model2DiscreteChannel {
            nx,
            nxr,
            nyd,
            nyrel,
            nyr,
            w,
        })
    }

    pub fn dims(&self) -> (usize, usize, usize, usize, usize) {
        (self.nx, self.nxr, self.nyd, self.nyrel, self.nyr)
    }

    /// `p(y_D, y_R, y_r | x, x_r)`.
    pub fn transition(&self, x: usize, xr: usize, yd: usize, yrel: usize, yr: usize) -> f64 {
        self.w[(((x * self.nxr + xr) * self.nyd + yd) * self.nyrel + yrel) * self.nyr + yr]
    }

    /// Verifies the factorization `p(Y_D|X)·p(Y_r|X, X_r, Y_D)·p(Y_R|X_r)`
    /// within `tol` by reconstructing the table from its marginals.
    pub fn factorization_error(&self) -> f64 {
        // p(Y_D | X): from the x_r = 0 slice
        let mut pd = vec![0.0; self.nx * self.nyd];
        for x in 0..self.nx {
            for yd in 0..self.nyd {
                let mut acc = 0.0;
                for yrel in 0..self.nyrel {
                    for yr in 0..self.nyr {
                        acc += self.transition(x, 0, yd, yrel, yr);
                    }
                }
                pd[x * self.nyd + yd] = acc;
            }
        }
        // p(Y_R | X_r): from the x = 0 slice
        let mut prel = vec![0.0; self.nxr * self.nyrel];
        for xr in 0..self.nxr {
            for yrel in 0..self.nyrel {
                let mut acc = 0.0;
                for yd in 0..self.nyd {
                    for yr in 0..self.nyr {
                        acc += self.transition(0, xr, yd, yrel, yr);
                    }
                }
                prel[xr * self.nyrel + yrel] = acc;
            }
        }
        // p(Y_r | X, X_r, Y_D) wherever p(Y_D | X) > 0, then reconstruct
        let mut worst = 0.0f64;
        for x in 0..self.nx {
            for xr in 0..self.nxr {
                for yd in 0..self.nyd {
                    let pyd = pd[x * self.nyd + yd];
                    let mut pr = vec![0.0; self.nyr];
                    if pyd > 0.0 {
                        for (yr, slot) in pr.iter_mut().enumerate() {
                            let mut acc = 0.0;
                            for yrel in 0..self.nyrel {
                                acc += self.transition(x, xr, yd, yrel, yr);
                            }
                            *slot = acc / pyd;
                        }
                    }
                    for (yr, &pr_v) in pr.iter().enumerate() {
                        for yrel in 0..self.nyrel {
                            let rebuilt = pyd * pr_v * prel[xr * self.nyrel + yrel];
                            let err = (rebuilt - self.transition(x, xr, yd, yrel, yr)).abs();
                            worst = worst.max(err);
                        }
                    }
                }
            }
        }
        worst
    }

    /// Collapses the two destination observations into one composite output
    /// `y = y_D·|Y_R| + y_R`, producing an ordinary relay channel.
    pub fn to_composite(&self) -> DiscreteRelayChannel {
        let ny = self.nyd * self.nyrel;
        let mut w = vec![0.0; self.nx * self.nxr * ny * self.nyr];
        for x in 0..self.nx {
            for xr in 0..self.nxr {
                for yd in 0..self.nyd {
                    for yrel in 0..self.nyrel {
                        let y = yd * self.nyrel + yrel;
                        for yr in 0..self.nyr {
                            w[((x * self.nxr + xr) * ny + y) * self.nyr + yr] =
                                self.transition(x, xr, yd, yrel, yr);
                        }
                    }
                }
            }
        }
        DiscreteRelayChannel::new(self.nx, self.nxr, ny, self.nyr, w)
            .expect("composite table inherits validity")
    }

    /// Joint over `(X, Xr, YDir, YRel)` under independent inputs, used for
    /// the orthogonality self-check.
    pub(super) fn destination_joint(&self, px: &[f64], pxr: &[f64]) -> Result<JointPmf> {
        let dims = vec![self.nx, self.nxr, self.nyd, self.nyrel];
        let mut p = vec![0.0; dims.iter().product()];
        let mut flat = 0usize;
        for (x, &px_v) in px.iter().enumerate() {
            for (xr, &pxr_v) in pxr.iter().enumerate() {
                for yd in 0..self.nyd {
                    for yrel in 0..self.nyrel {
                        let mut acc = 0.0;
                        for yr in 0..self.nyr {
                            acc += self.transition(x, xr, yd, yrel, yr);
                        }
                        p[flat] = px_v * pxr_v * acc;
                        flat += 1;
                    }
                }
            }
        }
        JointPmf::new(vec![Var::X, Var::Xr, Var::YDir, Var::YRel], dims, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Self-interference fixture: Y = X, Y_r = X ⊕ X_r, all binary.
    pub(crate) fn xor_channel() -> DiscreteRelayChannel {
        DiscreteRelayChannel::deterministic(2, 2, 2, 2, |x, xr| (x, x ^ xr)).unwrap()
    }

    fn uniform_triple(nyhat: usize, nyr: usize, nxr: usize) -> DistributionTriple {
        let row: Vec<f64> = vec![1.0 / nyhat as f64; nyhat];
        let q: Vec<f64> = row
            .iter()
            .copied()
            .cycle()
            .take(nyhat * nyr * nxr)
            .collect();
        DistributionTriple::new(vec![0.5, 0.5], vec![0.5, 0.5], q, nyhat).unwrap()
    }

    #[test]
    fn joint_of_identity_channel_is_diagonal() {
        let ch = DiscreteRelayChannel::deterministic(2, 1, 2, 2, |x, _| (x, x)).unwrap();
        let triple = DistributionTriple::without_compression(vec![0.5, 0.5], vec![1.0], 2).unwrap();
        let j = build_joint(&ch, &triple).unwrap();
        let m = j.marginal(&[Var::X, Var::Y]).unwrap();
        assert_eq!(m.probabilities(), &[0.5, 0.0, 0.0, 0.5]);
    }

    #[test]
    fn joint_marginal_recovers_channel_slice() {
        let ch = xor_channel();
        let triple = uniform_triple(2, 2, 2);
        let j = build_joint(&ch, &triple).unwrap();
        // p(y, yr | x, xr) = joint(x, xr, y, yr) / (px · pxr)
        let m = j.marginal(&[Var::X, Var::Xr, Var::Y, Var::Yr]).unwrap();
        for x in 0..2 {
            for xr in 0..2 {
                for y in 0..2 {
                    for yr in 0..2 {
                        let got = m.probabilities()[((x * 2 + xr) * 2 + y) * 2 + yr] / 0.25;
                        assert!((got - ch.transition(x, xr, y, yr)).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn joint_marginal_recovers_input_pmf() {
        let ch = xor_channel();
        let triple =
            DistributionTriple::new(vec![0.25, 0.75], vec![0.5, 0.5], vec![1.0; 4], 1).unwrap();
        let j = build_joint(&ch, &triple).unwrap();
        let m = j.marginal(&[Var::X]).unwrap();
        assert!((m.probabilities()[0] - 0.25).abs() < 1e-15);
        assert!((m.probabilities()[1] - 0.75).abs() < 1e-15);
    }

    #[test]
    fn xor_channel_hides_input_without_conditioning() {
        let ch = xor_channel();
        let triple = uniform_triple(1, 2, 2);
        let j = build_joint(&ch, &triple).unwrap();
        let m = j.marginal(&[Var::X, Var::Yr]).unwrap();
        assert_eq!(m.probabilities(), &[0.25, 0.25, 0.25, 0.25]);
    }

    #[test]
    fn identity_prefix_is_a_no_op() {
        let ch = xor_channel();
        let prefixed = ch.prefix(&[1.0, 0.0, 0.0, 1.0], 2).unwrap();
        assert_eq!(prefixed, ch);
    }

    #[test]
    fn prefix_validates_shape_and_rows() {
        let ch = xor_channel();
        assert!(ch.prefix(&[1.0, 0.0, 0.0], 2).is_err());
        assert!(ch.prefix(&[0.5, 0.4, 0.0, 1.0], 2).is_err());
    }

    #[test]
    fn constant_prefix_kills_all_rates() {
        let ch = xor_channel();
        let prefixed = ch.prefix(&[0.5, 0.5], 1).unwrap();
        let triple = DistributionTriple::without_compression(vec![1.0], vec![0.5, 0.5], 2).unwrap();
        let pt = crate::discrete::thm1_point(&prefixed, &triple)
            .unwrap()
            .expect("feasible");
        assert_eq!(pt.r1().bits(), 0.0);
        assert_eq!(pt.re().bits(), 0.0);
    }

    #[test]
    fn symmetric_noise_prefix_costs_its_entropy() {
        // prefixing the self-interference channel with a binary symmetric
        // map of crossover delta leaves I(U; Y | X_r) = 1 − h₂(delta)
        let delta = 0.11;
        let ch = xor_channel();
        let prefixed = ch
            .prefix(&[1.0 - delta, delta, delta, 1.0 - delta], 2)
            .unwrap();
        let triple =
            DistributionTriple::without_compression(vec![0.5, 0.5], vec![0.5, 0.5], 2).unwrap();
        let joint = build_joint(&prefixed, &triple).unwrap();
        let rate = joint
            .mutual_info(&[Var::X], &[Var::Y], &[Var::Xr])
            .unwrap()
            .bits();
        let h2 = -(delta * delta.log2() + (1.0 - delta) * (1.0 - delta).log2());
        assert!((rate - (1.0 - h2)).abs() < 1e-12);
    }

    #[test]
    fn channel_rejects_bad_slices() {
        let mut w = vec![0.0; 16];
        w[0] = 0.9; // slice (0,0) sums to 0.9
        for s in 1..4 {
            w[s * 4] = 1.0;
        }
        assert!(DiscreteRelayChannel::new(2, 2, 2, 2, w).is_err());
    }

    #[test]
    fn triple_rejects_bad_rows() {
        assert!(DistributionTriple::new(vec![0.5, 0.5], vec![1.0], vec![0.5, 0.4], 2).is_err());
        assert!(DistributionTriple::new(vec![0.6, 0.5], vec![1.0], vec![1.0], 1).is_err());
    }

    #[test]
    fn model2_factorization_detects_structure() {
        // Y_D = X, Y_R = X_r, Y_r uniform: factorizes exactly.
        let mut w = vec![0.0; 2 * 2 * 2 * 2 * 2];
        for x in 0..2usize {
            for xr in 0..2usize {
                for yr in 0..2usize {
                    w[(((x * 2 + xr) * 2 + x) * 2 + xr) * 2 + yr] = 0.5;
                }
            }
        }
        let ch = Model2DiscreteChannel::new(2, 2, 2, 2, 2, w).unwrap();
        assert!(ch.factorization_error() < 1e-15);

        // Y_R = X (depends on the source): not a valid factorization.
        let bad = Model2DiscreteChannel::new(2, 2, 2, 2, 2, {
            let mut w = vec![0.0; 32];
            for x in 0..2usize {
                for xr in 0..2usize {
                    for yr in 0..2usize {
                        w[(((x * 2 + xr) * 2 + x) * 2 + x) * 2 + yr] = 0.5;
                    }
                }
            }
            w
        })
        .unwrap();
        assert!(bad.factorization_error() > 0.1);
    }
}
