//! Analytic and probabilistic objects of Liouville conformal field theory.
//!
//! The crate computes, at desk scale and in plain `f64` (with exact rational
//! arithmetic where it matters):
//!
//! * the special functions ℓ, Υ_{γ/2} and the DOZZ three-point structure
//!   constant ([`special`]);
//! * Virasoro Shapovalov Gram matrices as exact polynomials in (Δ, c), their
//!   Kac-determinant zeros and numeric inverses on the spectrum line
//!   ([`virasoro`]);
//! * an independent free-field (Segal–Sugawara) oracle on polynomial Fock
//!   states that reproduces the Shapovalov form ([`fock`]);
//! * conformal-block coefficients β_n and truncated block series ([`blocks`]);
//! * the bootstrap four-point function as a spectral quadrature over the
//!   line Q + iℝ₊, with a crossing-symmetry residual ([`bootstrap`]);
//! * a Monte Carlo estimator of the probabilistic correlation functions via
//!   truncated Gaussian free field sampling and Gaussian multiplicative
//!   chaos, cross-checking DOZZ ([`gmc`]).
//!
//! The `liouville` binary exposes all of this behind subcommands emitting
//! JSON run records; see the repository README.

pub mod blocks;
pub mod bootstrap;
pub mod fock;
pub mod gmc;
pub mod params;
pub mod partitions;
pub mod quad;
pub mod records;
pub mod special;
pub mod virasoro;

pub use params::{ConformalWeight, LiouvilleParams};
pub use partitions::{partition_count, young_diagrams, YoungDiagram};

use num_complex::Complex64;

/// Errors surfaced by the library. Condition violations (Seiberg bounds,
/// poles, off-spectrum inversions) are recoverable and map to CLI exit
/// code 2.
#[derive(Debug, thiserror::Error)]
pub enum LiouvilleError {
    #[error("log-gamma pole at z = {0} (non-positive integer)")]
    GammaPole(Complex64),
    #[error("DOZZ pole: Upsilon vanishes at denominator argument {argument} (zero-lattice point {lattice})")]
    DozzPole {
        argument: Complex64,
        lattice: Complex64,
    },
    #[error("Shapovalov matrix at level {level} is not positive definite (delta = {delta}, c = {c_l}); parameters are off the spectrum line or too close to a Kac zero")]
    NotPositiveDefinite { level: usize, delta: f64, c_l: f64 },
    #[error("Seiberg bounds violated: {0}")]
    SeibergViolation(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("condition violated: {0}")]
    Condition(String),
}

pub type Result<T> = std::result::Result<T, LiouvilleError>;
