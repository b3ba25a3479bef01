//! Secrecy-rate computations for three-node relay networks in which the
//! relay assists the communication but must learn nothing about the message
//! (an "untrusted" relay, modeled as a relay with a co-located eavesdropper).
//!
//! The crate has two engines:
//!
//! - Closed-form Gaussian evaluators for three channel families:
//!   [`model1`] (orthogonal source-to-relay link, where the relay turns out
//!   to be useless for secrecy), [`model2`] (orthogonal relay-to-destination
//!   link, where compress-and-forward buys a positive secrecy rate), and
//!   [`coverkim`] (the deterministic relay channel with anticorrelated
//!   noises and a noiseless finite-rate relay link).
//! - An exact finite-alphabet engine ([`discrete`]) that materializes joint
//!   pmfs, computes conditional mutual information, and exhaustively grid
//!   searches the general achievable equivocation regions, serving as an
//!   independent oracle for the closed forms.
//!
//! [`mcsim`] adds a seeded Monte-Carlo check of the amplify-and-forward
//! equivalent wiretap channel.
//!
//! All rates are in bits per channel use (log base 2) and all computations
//! are in `f64`.

use thiserror::Error;

pub mod coverkim;
pub mod discrete;
pub mod mcsim;
pub mod model1;
pub mod model2;
pub mod rate;

pub use rate::{awgn_capacity, clamp_plus, pareto_reduce, GridSpec, Rate, RatePoint, RateRegion};

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A numeric input is outside the domain of the operation
    /// (negative SNR, power out of budget, zero relay gain, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Tables or alphabets do not fit together (dimension mismatch,
    /// non-stochastic rows, overlapping variable groups, ...).
    #[error("structural error: {0}")]
    Structure(String),

    /// An exhaustive search was requested whose size exceeds the hard cap.
    #[error("search space too large: {count} evaluations exceeds the limit of {limit}")]
    SearchSpace { count: u128, limit: u128 },

    /// A statistical estimate could not be formed (singular sample covariance).
    #[error("estimation error: {0}")]
    Estimation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
