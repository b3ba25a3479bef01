//! Exhaustive enumeration of input distributions and relay quantizers on
//! rational simplex grids, with streaming Pareto reduction.

use super::channel::DiscreteRelayChannel;
use super::simplex::{composition_count, compositions};
use super::theorems::FEASIBILITY_TOL;
use super::MAX_JOINT_CELLS;
use crate::rate::{GridSpec, Rate, RatePoint, RateRegion, DOMINANCE_TOL};
use crate::{pareto_reduce, Error, Result};

/// Hard cap on the number of grid evaluations a search may request.
pub const SEARCH_EVAL_LIMIT: u128 = 100_000_000;

/// Number of grid evaluations a search would perform:
/// `|px grid| · |pxr grid| · |quantizer-row grid|^(|Y_r|·|X_r|)`.
pub fn thm1_search_count(channel: &DiscreteRelayChannel, grid: GridSpec, yhat_size: usize) -> u128 {
    let res = grid.resolution();
    let s_x = composition_count(res, channel.nx());
    let s_xr = composition_count(res, channel.nxr());
    let s_row = composition_count(res, yhat_size);
    let rows = channel.nyr() * channel.nxr();
    let mut total = s_x.saturating_mul(s_xr);
    for _ in 0..rows {
        total = total.saturating_mul(s_row);
    }
    total
}

/// Enumerates `(p(X), p(X_r), p(Ŷ_r | Y_r, X_r))` on simplex grids with
/// denominator `grid.resolution()`, evaluates the achievable region at
/// every combination, and Pareto-reduces the feasible points.
///
/// Provenance is the lexicographic enumeration index of the combination
/// (`p(X)` outermost, then `p(X_r)`, then the quantizer rows in `(y_r,
/// x_r)` order). Errors with the computed count when the grid would exceed
/// [`SEARCH_EVAL_LIMIT`].
pub fn thm1_search(
    channel: &DiscreteRelayChannel,
    grid: GridSpec,
    yhat_size: usize,
) -> Result<RateRegion<u64>> {
    if yhat_size == 0 {
        return Err(Error::Structure("|Ŷ_r| must be at least 1".into()));
    }
    let cells = channel.nx() * channel.nxr() * channel.ny() * channel.nyr() * yhat_size;
    if cells > MAX_JOINT_CELLS {
        return Err(Error::Structure(format!(
            "joint table of {cells} cells exceeds the dense cap of {MAX_JOINT_CELLS}"
        )));
    }
    let total = thm1_search_count(channel, grid, yhat_size);
    if total > SEARCH_EVAL_LIMIT {
        return Err(Error::SearchSpace {
            count: total,
            limit: SEARCH_EVAL_LIMIT,
        });
    }

    let res = grid.resolution();
    let px_list = compositions(res, channel.nx());
    let pxr_list = compositions(res, channel.nxr());
    let row_list = compositions(res, yhat_size);
    let rows = channel.nyr() * channel.nxr();
    let quantizers_per_input = (row_list.len() as u64).pow(rows as u32);

    let mut eval = Evaluator::new(channel, yhat_size);
    let mut frontier = Frontier::new();

    let mut input_index: u64 = 0;
    for px in &px_list {
        for pxr in &pxr_list {
            eval.set_inputs(px, pxr);
            let base_index = input_index * quantizers_per_input;
            input_index += 1;

            // odometer over quantizer rows, row 0 most significant
            let mut digits = vec![0usize; rows];
            let mut q_rows: Vec<&[f64]> = vec![&row_list[0]; rows];
            for iq in 0..quantizers_per_input {
                if let Some((r1, re)) = eval.evaluate(&q_rows) {
                    frontier.push(base_index + iq, r1, re);
                }
                if iq + 1 < quantizers_per_input {
                    let mut pos = rows - 1;
                    loop {
                        digits[pos] += 1;
                        if digits[pos] < row_list.len() {
                            q_rows[pos] = &row_list[digits[pos]];
                            break;
                        }
                        digits[pos] = 0;
                        q_rows[pos] = &row_list[0];
                        // cannot underflow: overall overflow would imply
                        // iq + 1 == quantizers_per_input
                        pos -= 1;
                    }
                }
            }
        }
    }

    Ok(frontier.into_region())
}

/// Streaming Pareto frontier keyed by enumeration index for deterministic
/// tie-breaks.
struct Frontier {
    candidates: Vec<(u64, f64, f64)>,
}

impl Frontier {
    fn new() -> Self {
        Frontier {
            candidates: Vec::new(),
        }
    }

    fn push(&mut self, idx: u64, r1: f64, re: f64) {
        self.candidates.push((idx, r1, re));
        if self.candidates.len() >= 8192 {
            self.reduce();
        }
    }

    fn reduce(&mut self) {
        self.candidates.sort_by(|a, b| {
            b.1.partial_cmp(&a.1)
                .unwrap()
                .then(b.2.partial_cmp(&a.2).unwrap())
                .then(a.0.cmp(&b.0))
        });
        let mut kept: Vec<(u64, f64, f64)> = Vec::new();
        let mut best_re = f64::NEG_INFINITY;
        for &(idx, r1, re) in &self.candidates {
            if re > best_re + DOMINANCE_TOL {
                best_re = re;
                kept.push((idx, r1, re));
            }
        }
        // restore generation order so later reductions tie-break correctly
        kept.sort_by_key(|&(idx, _, _)| idx);
        self.candidates = kept;
    }

    fn into_region(mut self) -> RateRegion<u64> {
        self.reduce();
        pareto_reduce(
            self.candidates
                .into_iter()
                .map(|(idx, r1, re)| {
                    (
                        RatePoint::new(Rate::new(r1).unwrap(), Rate::new(re).unwrap()),
                        idx,
                    )
                })
                .collect(),
        )
    }
}

/// Buffered fixed-input evaluator for the search inner loop. Mirrors the
/// math of `thm1_point` without rebuilding the five-variable joint per
/// quantizer; equality with `thm1_point` is covered by tests.
struct Evaluator {
    nx: usize,
    nxr: usize,
    ny: usize,
    nyr: usize,
    nyhat: usize,
    // base(x, xr, y, yr) = px·pxr·w, restricted to nonzero channel cells
    support: Vec<(usize, usize, usize, usize, f64)>,
    base_support: Vec<f64>,
    // quantizer-independent aggregates of base
    m_y_xr: Vec<f64>,
    m_yr_y_xr: Vec<f64>,
    m_yr_xr: Vec<f64>,
    n_x_yr_xr: Vec<f64>,
    p_xr: Vec<f64>,
    p_x_xr: Vec<f64>,
    p_y: Vec<f64>,
    i_link: f64,
    i_leak: f64,
    // quantizer-dependent scratch
    t4: Vec<f64>,
    a3: Vec<f64>,
    u4: Vec<f64>,
    v3: Vec<f64>,
}

impl Evaluator {
    fn new(channel: &DiscreteRelayChannel, nyhat: usize) -> Self {
        let (nx, nxr, ny, nyr) = (channel.nx(), channel.nxr(), channel.ny(), channel.nyr());
        let mut support = Vec::new();
        for x in 0..nx {
            for xr in 0..nxr {
                for y in 0..ny {
                    for yr in 0..nyr {
                        let w = channel.transition(x, xr, y, yr);
                        if w > 0.0 {
                            support.push((x, xr, y, yr, w));
                        }
                    }
                }
            }
        }
        let n_support = support.len();
        Evaluator {
            nx,
            nxr,
            ny,
            nyr,
            nyhat,
            support,
            base_support: vec![0.0; n_support],
            m_y_xr: vec![0.0; ny * nxr],
            m_yr_y_xr: vec![0.0; nyr * ny * nxr],
            m_yr_xr: vec![0.0; nyr * nxr],
            n_x_yr_xr: vec![0.0; nx * nyr * nxr],
            p_xr: vec![0.0; nxr],
            p_x_xr: vec![0.0; nx * nxr],
            p_y: vec![0.0; ny],
            i_link: 0.0,
            i_leak: 0.0,
            t4: vec![0.0; nyhat * nyr * ny * nxr],
            a3: vec![0.0; nyhat * ny * nxr],
            u4: vec![0.0; nx * ny * nyhat * nxr],
            v3: vec![0.0; ny * nyhat * nxr],
        }
    }

    fn set_inputs(&mut self, px: &[f64], pxr: &[f64]) {
        for v in self
            .m_y_xr
            .iter_mut()
            .chain(self.m_yr_y_xr.iter_mut())
            .chain(self.m_yr_xr.iter_mut())
            .chain(self.n_x_yr_xr.iter_mut())
            .chain(self.p_xr.iter_mut())
            .chain(self.p_x_xr.iter_mut())
            .chain(self.p_y.iter_mut())
        {
            *v = 0.0;
        }
        let (nxr, ny, nyr) = (self.nxr, self.ny, self.nyr);
        for (slot, &(x, xr, y, yr, w)) in self.support.iter().enumerate() {
            let mass = px[x] * pxr[xr] * w;
            self.base_support[slot] = mass;
            if mass == 0.0 {
                continue;
            }
            self.m_y_xr[y * nxr + xr] += mass;
            self.m_yr_y_xr[(yr * ny + y) * nxr + xr] += mass;
            self.m_yr_xr[yr * nxr + xr] += mass;
            self.n_x_yr_xr[(x * nyr + yr) * nxr + xr] += mass;
            self.p_xr[xr] += mass;
            self.p_x_xr[x * nxr + xr] += mass;
            self.p_y[y] += mass;
        }

        // I(X_r; Y)
        let mut link = 0.0;
        for y in 0..ny {
            for xr in 0..nxr {
                let m = self.m_y_xr[y * nxr + xr];
                if m > 0.0 {
                    link += m * (m / (self.p_y[y] * self.p_xr[xr])).log2();
                }
            }
        }
        self.i_link = link.max(0.0);

        // I(X; Y_r | X_r)
        let mut leak = 0.0;
        for x in 0..self.nx {
            for yr in 0..nyr {
                for xr in 0..nxr {
                    let n = self.n_x_yr_xr[(x * nyr + yr) * nxr + xr];
                    if n > 0.0 {
                        leak += n
                            * ((n * self.p_xr[xr])
                                / (self.p_x_xr[x * nxr + xr] * self.m_yr_xr[yr * nxr + xr]))
                                .log2();
                    }
                }
            }
        }
        self.i_leak = leak.max(0.0);
    }

    /// Returns `(r1, re)` if the quantizer is supportable, `None` otherwise.
    /// `q_rows` is indexed by `yr·|X_r| + xr`.
    fn evaluate(&mut self, q_rows: &[&[f64]]) -> Option<(f64, f64)> {
        let (nx, nxr, ny, nyr, nyhat) = (self.nx, self.nxr, self.ny, self.nyr, self.nyhat);

        // t4(ŷ, yr, y, xr) = m(yr, y, xr) · q(ŷ | yr, xr)
        for yr in 0..nyr {
            for y in 0..ny {
                for xr in 0..nxr {
                    let m = self.m_yr_y_xr[(yr * ny + y) * nxr + xr];
                    let row = q_rows[yr * nxr + xr];
                    for (yhat, &qv) in row.iter().enumerate() {
                        self.t4[((yhat * nyr + yr) * ny + y) * nxr + xr] = m * qv;
                    }
                }
            }
        }
        for v in self.a3.iter_mut() {
            *v = 0.0;
        }
        for yhat in 0..nyhat {
            for yr in 0..nyr {
                for y in 0..ny {
                    for xr in 0..nxr {
                        self.a3[(yhat * ny + y) * nxr + xr] +=
                            self.t4[((yhat * nyr + yr) * ny + y) * nxr + xr];
                    }
                }
            }
        }

        // I(Ŷ_r; Y_r | Y, X_r)
        let mut compression = 0.0;
        for yhat in 0..nyhat {
            for yr in 0..nyr {
                for y in 0..ny {
                    for xr in 0..nxr {
                        let t = self.t4[((yhat * nyr + yr) * ny + y) * nxr + xr];
                        if t > 0.0 {
                            compression += t
                                * ((t * self.m_y_xr[y * nxr + xr])
                                    / (self.a3[(yhat * ny + y) * nxr + xr]
                                        * self.m_yr_y_xr[(yr * ny + y) * nxr + xr]))
                                    .log2();
                        }
                    }
                }
            }
        }
        if self.i_link < compression.max(0.0) - FEASIBILITY_TOL {
            return None;
        }

        // u4(x, y, ŷ, xr) = Σ_yr base · q
        for v in self.u4.iter_mut() {
            *v = 0.0;
        }
        for (slot, &(x, xr, y, yr, _)) in self.support.iter().enumerate() {
            let mass = self.base_support[slot];
            if mass == 0.0 {
                continue;
            }
            let row = q_rows[yr * nxr + xr];
            for (yhat, &qv) in row.iter().enumerate() {
                self.u4[((x * ny + y) * nyhat + yhat) * nxr + xr] += mass * qv;
            }
        }
        for v in self.v3.iter_mut() {
            *v = 0.0;
        }
        for x in 0..nx {
            for y in 0..ny {
                for yhat in 0..nyhat {
                    for xr in 0..nxr {
                        self.v3[(y * nyhat + yhat) * nxr + xr] +=
                            self.u4[((x * ny + y) * nyhat + yhat) * nxr + xr];
                    }
                }
            }
        }

        // I(X; Y, Ŷ_r | X_r)
        let mut r1 = 0.0;
        for x in 0..nx {
            for y in 0..ny {
                for yhat in 0..nyhat {
                    for xr in 0..nxr {
                        let u = self.u4[((x * ny + y) * nyhat + yhat) * nxr + xr];
                        if u > 0.0 {
                            r1 += u
                                * ((u * self.p_xr[xr])
                                    / (self.p_x_xr[x * nxr + xr]
                                        * self.v3[(y * nyhat + yhat) * nxr + xr]))
                                    .log2();
                        }
                    }
                }
            }
        }
        let r1 = r1.max(0.0);
        let re = (r1 - self.i_leak).max(0.0);
        Some((r1, re))
    }
}
