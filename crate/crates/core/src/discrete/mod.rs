//! Exact finite-alphabet engine: dense joint pmfs, a conditional
//! mutual-information oracle, and exhaustive grid searches over input
//! distributions and relay quantizers.
//!
//! The achievable equivocation region of the general relay channel with a
//! co-located eavesdropper is, for each admissible choice of
//! `p(X) p(X_r) p(Ŷ_r | Y_r, X_r)`,
//!
//! ```text
//! r1 = I(X; Y, Ŷ_r | X_r)
//! re = [r1 − I(X; Y_r | X_r)]⁺
//! subject to  I(X_r; Y) ≥ I(Ŷ_r; Y_r | Y, X_r)
//! ```
//!
//! ([`thm1_point`]); [`thm1_search`] enumerates the distributions on
//! rational probability-simplex grids and Pareto-reduces the feasible
//! points. [`thm2_point`] and [`thm3_point`] evaluate the specialized
//! regions of the two orthogonal-component models, the latter by
//! delegation to the general evaluator with a composite destination
//! output. No optimization beyond exhaustive search is attempted: these
//! evaluators are meant to be oracles.

mod channel;
mod joint;
mod search;
mod simplex;
mod theorems;

pub use channel::{
    build_joint, DiscreteRelayChannel, DistributionTriple, Model1DiscreteChannel,
    Model2DiscreteChannel,
};
pub use joint::{JointPmf, Var};
pub use search::{thm1_search, thm1_search_count, SEARCH_EVAL_LIMIT};
pub use simplex::{composition_count, compositions};
pub use theorems::{thm1_point, thm2_point, thm3_point, FEASIBILITY_TOL};

/// Hard cap on dense joint-table size (8^5 cells).
pub const MAX_JOINT_CELLS: usize = 32768;
