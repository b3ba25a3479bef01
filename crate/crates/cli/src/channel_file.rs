//! Loader for the discrete relay-channel text format:
//!
//! ```text
//! # optional comment lines, ignored anywhere
//! sizes X XR Y YR
//! <|Y|·|Y_r| decimals>      one line per (x, x_r), x outer, x_r inner,
//! ...                       p(y, y_r | x, x_r) with y major, y_r minor
//! ```

use crate::CliError;
use relay_secrecy::discrete::DiscreteRelayChannel;
use std::path::Path;

pub fn load_discrete_channel(path: &Path) -> Result<DiscreteRelayChannel, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::Numeric(format!("cannot read channel file {}: {e}", path.display()))
    })?;

    // (1-based line number, content) with comments and blanks dropped
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (lineno, header) = lines
        .next()
        .ok_or_else(|| CliError::Numeric(format!("{}: empty channel file", path.display())))?;
    let mut parts = header.split_whitespace();
    if parts.next() != Some("sizes") {
        return Err(CliError::Numeric(format!(
            "line {lineno}: expected `sizes X XR Y YR`, got `{header}`"
        )));
    }
    let dims: Vec<usize> = parts
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| {
                CliError::Numeric(format!("line {lineno}: invalid alphabet size `{tok}`"))
            })
        })
        .collect::<Result<_, _>>()?;
    let [nx, nxr, ny, nyr] = dims[..] else {
        return Err(CliError::Numeric(format!(
            "line {lineno}: expected four alphabet sizes, got {}",
            dims.len()
        )));
    };
    if nx == 0 || nxr == 0 || ny == 0 || nyr == 0 {
        return Err(CliError::Numeric(format!(
            "line {lineno}: alphabet sizes must be positive"
        )));
    }

    let mut w = Vec::with_capacity(nx * nxr * ny * nyr);
    for x in 0..nx {
        for xr in 0..nxr {
            let (lineno, line) = lines.next().ok_or_else(|| {
                CliError::Numeric(format!(
                    "unexpected end of file: missing slice for (x={x}, x_r={xr})"
                ))
            })?;
            let row: Vec<f64> = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<f64>().map_err(|_| {
                        CliError::Numeric(format!("line {lineno}: invalid probability `{tok}`"))
                    })
                })
                .collect::<Result<_, _>>()?;
            if row.len() != ny * nyr {
                return Err(CliError::Numeric(format!(
                    "line {lineno}: expected {} probabilities, got {}",
                    ny * nyr,
                    row.len()
                )));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > 1e-12 {
                return Err(CliError::Numeric(format!(
                    "line {lineno}: slice sums to {sum}, expected 1 within 1e-12"
                )));
            }
            w.extend_from_slice(&row);
        }
    }
    if let Some((lineno, _)) = lines.next() {
        return Err(CliError::Numeric(format!(
            "line {lineno}: trailing data after all slices"
        )));
    }

    DiscreteRelayChannel::new(nx, nxr, ny, nyr, w).map_err(CliError::from)
}
