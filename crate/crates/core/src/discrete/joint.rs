//! Dense labeled joint pmfs and the exact conditional mutual-information
//! oracle used by every region evaluator.

use super::MAX_JOINT_CELLS;
use crate::rate::Rate;
use crate::{Error, Result};

/// Identity of a joint-pmf axis.
///
/// `X` is the source input (after channel prefixing it carries the prefix
/// variable), `Xr` the relay input, `Y`/`Yr` the destination and relay
/// outputs, `Yhat` the quantized relay output. The `Dir`/`Rel` variants
/// name the orthogonal components: the source split `XDir`/`XRel`
/// (destination-bound and relay-bound) and the destination observations
/// `YDir`/`YRel` (direct link and relay link).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Xr,
    Y,
    Yr,
    Yhat,
    XDir,
    XRel,
    YDir,
    YRel,
}

/// A dense joint pmf over labeled finite alphabets, stored row-major in
/// axis order.
#[derive(Debug, Clone, PartialEq)]
pub struct JointPmf {
    labels: Vec<Var>,
    dims: Vec<usize>,
    p: Vec<f64>,
}

impl JointPmf {
    /// Validates and wraps a dense table: unique labels, matching sizes,
    /// nonnegative entries summing to 1 within 1e-10.
    pub fn new(labels: Vec<Var>, dims: Vec<usize>, p: Vec<f64>) -> Result<Self> {
        if labels.len() != dims.len() {
            return Err(Error::Structure(format!(
                "{} labels for {} dimensions",
                labels.len(),
                dims.len()
            )));
        }
        for (i, a) in labels.iter().enumerate() {
            if labels[i + 1..].contains(a) {
                return Err(Error::Structure(format!("duplicate axis label {a:?}")));
            }
        }
        if dims.contains(&0) {
            return Err(Error::Structure("zero-sized axis".into()));
        }
        let cells: usize = dims.iter().product();
        if cells > MAX_JOINT_CELLS {
            return Err(Error::Structure(format!(
                "joint table of {cells} cells exceeds the dense cap of {MAX_JOINT_CELLS}"
            )));
        }
        if p.len() != cells {
            return Err(Error::Structure(format!(
                "table has {} entries, dimensions require {cells}",
                p.len()
            )));
        }
        let mut sum = 0.0;
        for &v in &p {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Structure(format!("invalid probability {v}")));
            }
            sum += v;
        }
        if (sum - 1.0).abs() > 1e-10 {
            return Err(Error::Structure(format!(
                "joint pmf sums to {sum}, expected 1 within 1e-10"
            )));
        }
        Ok(JointPmf { labels, dims, p })
    }

    pub fn labels(&self) -> &[Var] {
        &self.labels
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.p
    }

    fn axis(&self, v: Var) -> Result<usize> {
        self.labels
            .iter()
            .position(|&l| l == v)
            .ok_or_else(|| Error::Structure(format!("variable {v:?} not present in the joint")))
    }

    /// Marginalizes onto `keep`, preserving the requested axis order.
    pub fn marginal(&self, keep: &[Var]) -> Result<JointPmf> {
        let axes: Vec<usize> = keep.iter().map(|&v| self.axis(v)).collect::<Result<_>>()?;
        let out_dims: Vec<usize> = axes.iter().map(|&a| self.dims[a]).collect();
        let out_cells: usize = out_dims.iter().product();
        let mut out = vec![0.0; out_cells];

        let strides = row_major_strides(&self.dims);
        for (flat, &mass) in self.p.iter().enumerate() {
            let mut key = 0usize;
            for &a in &axes {
                key = key * self.dims[a] + (flat / strides[a]) % self.dims[a];
            }
            out[key] += mass;
        }
        JointPmf::new(keep.to_vec(), out_dims, out)
    }

    /// Exact conditional mutual information `I(A; B | C)` in bits, with the
    /// `0·log 0 = 0` convention. Groups must be disjoint and present.
    pub fn mutual_info(&self, group_a: &[Var], group_b: &[Var], given: &[Var]) -> Result<Rate> {
        for v in group_a {
            if group_b.contains(v) || given.contains(v) {
                return Err(Error::Structure(format!(
                    "variable {v:?} appears in two groups"
                )));
            }
        }
        for v in group_b {
            if given.contains(v) {
                return Err(Error::Structure(format!(
                    "variable {v:?} appears in two groups"
                )));
            }
        }

        let ax_a: Vec<usize> = group_a
            .iter()
            .map(|&v| self.axis(v))
            .collect::<Result<_>>()?;
        let ax_b: Vec<usize> = group_b
            .iter()
            .map(|&v| self.axis(v))
            .collect::<Result<_>>()?;
        let ax_c: Vec<usize> = given.iter().map(|&v| self.axis(v)).collect::<Result<_>>()?;

        let size = |axes: &[usize]| -> usize { axes.iter().map(|&a| self.dims[a]).product() };
        let (na, nb, nc) = (size(&ax_a), size(&ax_b), size(&ax_c));

        let mut p_abc = vec![0.0; na * nb * nc];
        let mut p_ac = vec![0.0; na * nc];
        let mut p_bc = vec![0.0; nb * nc];
        let mut p_c = vec![0.0; nc];

        let strides = row_major_strides(&self.dims);
        let key = |flat: usize, axes: &[usize]| -> usize {
            let mut k = 0usize;
            for &a in axes {
                k = k * self.dims[a] + (flat / strides[a]) % self.dims[a];
            }
            k
        };

        for (flat, &mass) in self.p.iter().enumerate() {
            if mass == 0.0 {
                continue;
            }
            let (ka, kb, kc) = (key(flat, &ax_a), key(flat, &ax_b), key(flat, &ax_c));
            p_abc[(ka * nb + kb) * nc + kc] += mass;
            p_ac[ka * nc + kc] += mass;
            p_bc[kb * nc + kc] += mass;
            p_c[kc] += mass;
        }

        let mut mi = 0.0;
        for ka in 0..na {
            for kb in 0..nb {
                for kc in 0..nc {
                    let pabc = p_abc[(ka * nb + kb) * nc + kc];
                    if pabc == 0.0 {
                        continue;
                    }
                    let pac = p_ac[ka * nc + kc];
                    let pbc = p_bc[kb * nc + kc];
                    let pc = p_c[kc];
                    // absolute continuity holds by construction: the
                    // marginals aggregate the same mass
                    assert!(pac > 0.0 && pbc > 0.0 && pc > 0.0);
                    mi += pabc * ((pabc * pc) / (pac * pbc)).log2();
                }
            }
        }
        debug_assert!(
            mi >= -1e-12,
            "mutual information {mi} below the roundoff floor"
        );
        Rate::new(mi.max(0.0))
    }
}

pub(super) fn row_major_strides(dims: &[usize]) -> Vec<usize> {
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    strides
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn uniform_pair_joint() -> JointPmf {
        // X uniform binary, Y = X
        JointPmf::new(vec![Var::X, Var::Y], vec![2, 2], vec![0.5, 0.0, 0.0, 0.5]).unwrap()
    }

    #[test]
    fn independent_variables_have_zero_mi() {
        let j = JointPmf::new(
            vec![Var::X, Var::Y],
            vec![2, 2],
            vec![0.25, 0.25, 0.25, 0.25],
        )
        .unwrap();
        assert_eq!(
            j.mutual_info(&[Var::X], &[Var::Y], &[]).unwrap().bits(),
            0.0
        );
    }

    #[test]
    fn noiseless_binary_channel_carries_one_bit() {
        let j = uniform_pair_joint();
        assert_eq!(
            j.mutual_info(&[Var::X], &[Var::Y], &[]).unwrap().bits(),
            1.0
        );
    }

    #[test]
    fn self_interference_conditioning_reveals_the_input() {
        // Y_r = X ⊕ X_r with X, X_r uniform: I(X; Y_r) = 0 exactly while
        // I(X; Y_r | X_r) = 1 exactly.
        let mut p = vec![0.0; 8];
        for x in 0..2usize {
            for xr in 0..2usize {
                let yr = x ^ xr;
                p[(x * 2 + xr) * 2 + yr] = 0.25;
            }
        }
        let j = JointPmf::new(vec![Var::X, Var::Xr, Var::Yr], vec![2, 2, 2], p).unwrap();
        assert_eq!(
            j.mutual_info(&[Var::X], &[Var::Yr], &[]).unwrap().bits(),
            0.0
        );
        assert_eq!(
            j.mutual_info(&[Var::X], &[Var::Yr], &[Var::Xr])
                .unwrap()
                .bits(),
            1.0
        );
    }

    #[test]
    fn overlapping_groups_are_rejected() {
        let j = uniform_pair_joint();
        assert!(j.mutual_info(&[Var::X], &[Var::X], &[]).is_err());
        assert!(j.mutual_info(&[Var::X], &[Var::Y], &[Var::Y]).is_err());
        assert!(j.mutual_info(&[Var::X], &[Var::Yr], &[]).is_err());
    }

    #[test]
    fn marginal_preserves_requested_order() {
        let j = JointPmf::new(vec![Var::X, Var::Y], vec![2, 2], vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let m = j.marginal(&[Var::Y]).unwrap();
        assert!((m.probabilities()[0] - 0.4).abs() < 1e-15);
        assert!((m.probabilities()[1] - 0.6).abs() < 1e-15);
    }

    #[test]
    fn rejects_malformed_tables() {
        assert!(JointPmf::new(vec![Var::X], vec![2], vec![0.5, 0.6]).is_err());
        assert!(JointPmf::new(vec![Var::X], vec![2], vec![0.5, -0.5]).is_err());
        assert!(JointPmf::new(vec![Var::X, Var::X], vec![2, 2], vec![0.25; 4]).is_err());
        assert!(JointPmf::new(vec![Var::X], vec![3], vec![0.5, 0.5]).is_err());
    }

    fn random_joint(dims: &[usize], weights: &[f64]) -> JointPmf {
        let total: f64 = weights.iter().sum();
        let p: Vec<f64> = weights.iter().map(|w| w / total).collect();
        JointPmf::new(vec![Var::X, Var::Y, Var::Xr], dims.to_vec(), p).unwrap()
    }

    proptest! {
        #[test]
        fn mi_is_nonnegative_and_symmetric(ws in proptest::collection::vec(0.01f64..1.0, 12)) {
            let j = random_joint(&[2, 3, 2], &ws);
            let ab = j.mutual_info(&[Var::X], &[Var::Y], &[Var::Xr]).unwrap().bits();
            let ba = j.mutual_info(&[Var::Y], &[Var::X], &[Var::Xr]).unwrap().bits();
            prop_assert!(ab >= 0.0);
            prop_assert!((ab - ba).abs() < 1e-10);
        }

        #[test]
        fn mi_chain_rule(ws in proptest::collection::vec(0.01f64..1.0, 12)) {
            // I(X; Y, Xr) = I(X; Y) + I(X; Xr | Y)
            let j = random_joint(&[2, 3, 2], &ws);
            let joint_mi = j.mutual_info(&[Var::X], &[Var::Y, Var::Xr], &[]).unwrap().bits();
            let first = j.mutual_info(&[Var::X], &[Var::Y], &[]).unwrap().bits();
            let second = j.mutual_info(&[Var::X], &[Var::Xr], &[Var::Y]).unwrap().bits();
            prop_assert!((joint_mi - first - second).abs() < 1e-10);
        }

        #[test]
        fn mi_agrees_with_the_entropy_route(ws in proptest::collection::vec(0.01f64..1.0, 12)) {
            // independent route: I(A; B | C) = H(A,C) + H(B,C) − H(A,B,C) − H(C)
            let entropy = |m: &JointPmf| -> f64 {
                -m.probabilities()
                    .iter()
                    .filter(|&&p| p > 0.0)
                    .map(|&p| p * p.log2())
                    .sum::<f64>()
            };
            let j = random_joint(&[2, 3, 2], &ws);
            let direct = j.mutual_info(&[Var::X], &[Var::Y], &[Var::Xr]).unwrap().bits();
            let h_ac = entropy(&j.marginal(&[Var::X, Var::Xr]).unwrap());
            let h_bc = entropy(&j.marginal(&[Var::Y, Var::Xr]).unwrap());
            let h_abc = entropy(&j);
            let h_c = entropy(&j.marginal(&[Var::Xr]).unwrap());
            prop_assert!((direct - (h_ac + h_bc - h_abc - h_c)).abs() < 1e-10);
        }
    }
}
