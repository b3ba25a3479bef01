//! Rational probability-simplex grids: length-k compositions of a fixed
//! denominator, enumerated in lexicographic order.

/// Number of length-`parts` compositions of `total`:
/// `binom(total + parts − 1, parts − 1)`.
pub fn composition_count(total: u32, parts: usize) -> u128 {
    if parts == 0 {
        return 0;
    }
    let n = u128::from(total) + parts as u128 - 1;
    let k = parts as u128 - 1;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// All length-`parts` vectors of nonnegative integers summing to `total`,
/// in lexicographic order, already normalized to pmfs with denominator
/// `total`.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(composition_count(total, parts).min(1 << 24) as usize);
    let mut current = vec![0u32; parts];
    emit(total, 0, &mut current, &mut out, f64::from(total));
    out
}

fn emit(remaining: u32, idx: usize, current: &mut [u32], out: &mut Vec<Vec<f64>>, denom: f64) {
    if idx + 1 == current.len() {
        current[idx] = remaining;
        out.push(current.iter().map(|&c| f64::from(c) / denom).collect());
        return;
    }
    for c in 0..=remaining {
        current[idx] = c;
        emit(remaining - c, idx + 1, current, out, denom);
    }
}
