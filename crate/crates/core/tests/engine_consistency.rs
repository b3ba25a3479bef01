//! Cross-checks of the finite-alphabet engine against independently known
//! closed forms on binary channels.

use relay_secrecy::discrete::{
    thm1_point, thm1_search, DiscreteRelayChannel, DistributionTriple,
};
use relay_secrecy::GridSpec;

fn h2(q: f64) -> f64 {
    if q == 0.0 || q == 1.0 {
        0.0
    } else {
        -(q * q.log2() + (1.0 - q) * (1.0 - q).log2())
    }
}

/// Y = BSC(q_main)(X), Y_r = BSC(q_tap)(X), relay input idle.
fn double_bsc(q_main: f64, q_tap: f64) -> DiscreteRelayChannel {
    let mut w = vec![0.0; 16];
    for x in 0..2usize {
        for xr in 0..2usize {
            for y in 0..2usize {
                for yr in 0..2usize {
                    let p_main = if y == x { 1.0 - q_main } else { q_main };
                    let p_tap = if yr == x { 1.0 - q_tap } else { q_tap };
                    w[((x * 2 + xr) * 2 + y) * 2 + yr] = p_main * p_tap;
                }
            }
        }
    }
    DiscreteRelayChannel::new(2, 2, 2, 2, w).unwrap()
}

#[test]
fn wiretap_point_matches_the_entropy_difference() {
    // with uniform input and no relay use, the secrecy rate of the binary
    // symmetric wiretap pair is [h2(q_tap) − h2(q_main)]⁺
    for (q_main, q_tap) in [(0.05, 0.25), (0.1, 0.4), (0.2, 0.2), (0.3, 0.1)] {
        let channel = double_bsc(q_main, q_tap);
        let triple =
            DistributionTriple::without_compression(vec![0.5, 0.5], vec![0.5, 0.5], 2).unwrap();
        let pt = thm1_point(&channel, &triple).unwrap().expect("feasible");
        let expected = (h2(q_tap) - h2(q_main)).max(0.0);
        assert!(
            (pt.re().bits() - expected).abs() < 1e-12,
            "secrecy rate {} vs closed form {expected} at ({q_main}, {q_tap})",
            pt.re().bits()
        );
    }
}

#[test]
fn search_attains_the_wiretap_optimum() {
    // the uniform input is optimal for the symmetric pair, sits on every
    // even grid, and nothing in the search may exceed it
    let channel = double_bsc(0.1, 0.3);
    let region = thm1_search(&channel, GridSpec::new(8).unwrap(), 1).unwrap();
    let best = region
        .points()
        .iter()
        .map(|p| p.point.re().bits())
        .fold(0.0, f64::max);
    let expected = h2(0.3) - h2(0.1);
    assert!((best - expected).abs() < 1e-12);
}

#[test]
fn quantizer_search_buys_message_rate() {
    // destination sees a noisy copy of X next to a clean copy of X_r;
    // the relay sees X exactly. Forwarding the relay observation through
    // the quantizer lifts the message rate from 1 − h2(0.3) to one full
    // bit, which a single-symbol quantizer can never do.
    let q = 0.3;
    let mut w = vec![0.0; 2 * 2 * 4 * 2];
    for x in 0..2usize {
        for xr in 0..2usize {
            for y_noisy in 0..2usize {
                let y = y_noisy * 2 + xr;
                let p_main = if y_noisy == x { 1.0 - q } else { q };
                w[((x * 2 + xr) * 4 + y) * 2 + x] = p_main;
            }
        }
    }
    let channel = DiscreteRelayChannel::new(2, 2, 4, 2, w).unwrap();
    let grid = GridSpec::new(4).unwrap();

    let silent = thm1_search(&channel, grid, 1).unwrap();
    let best_r1_silent = silent
        .points()
        .iter()
        .map(|p| p.point.r1().bits())
        .fold(0.0, f64::max);
    assert!(
        best_r1_silent < 0.2,
        "without compression the message rate should stay near 1 − h2(0.3), got {best_r1_silent}"
    );

    let compressed = thm1_search(&channel, grid, 2).unwrap();
    let best_r1 = compressed
        .points()
        .iter()
        .map(|p| p.point.r1().bits())
        .fold(0.0, f64::max);
    assert!(
        best_r1 > 0.99,
        "forwarding the relay observation should reach a full bit, got {best_r1}"
    );
    assert!(silent.dominated_by(&compressed));
}
