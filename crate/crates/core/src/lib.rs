//! Coefficients of Gaussian binomial polynomials modulo `N`.
//!
//! The crate computes `[n choose k]_q mod N`, the minimal period `pi_N(k)` of
//! `p_{<=k}(n) mod N` and the recursive quasi-period `pi'_N(k)`, fits the
//! residue-counting quasipolynomial `f_{k,R}(n)` and its rational generating
//! function, and checks the structural identities behind them against
//! brute-force computations.

pub mod arith;
pub mod asymptotics;
pub mod error;
pub mod partitions;
pub mod periods;
pub mod quasifit;
pub mod structure;
pub mod verify;

pub use arith::{IntPoly, Modulus, ResidueSeq};
pub use error::{Error, Result};
