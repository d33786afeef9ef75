//! The DOZZ three-point structure constant.

use num_complex::Complex64;

use super::gamma::ell;
use super::upsilon::{upsilon_ln, upsilon_zero_lattice_hit};
use crate::params::LiouvilleParams;
use crate::{LiouvilleError, Result};

/// log of the DOZZ constant. `is_zero` marks a numerator Υ-zero (the value
/// is an exact 0 and `ln` is meaningless).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LnDozz {
    pub ln: Complex64,
    pub is_zero: bool,
}

impl LnDozz {
    pub fn value(&self) -> Complex64 {
        if self.is_zero {
            Complex64::new(0.0, 0.0)
        } else {
            self.ln.exp()
        }
    }
}

/// ln C^DOZZ_{γ,μ}(α₁, α₂, α₃):
///
/// C = (π μ ℓ(γ²/4) (γ/2)^{2−γ²/2})^{(2Q−ᾱ)/γ}
///     · Υ'(0) Υ(α₁) Υ(α₂) Υ(α₃)
///     / [Υ(ᾱ/2−Q) Υ(ᾱ/2−α₁) Υ(ᾱ/2−α₂) Υ(ᾱ/2−α₃)],  ᾱ = α₁+α₂+α₃.
///
/// Computed fully in log space: for spectrum-line arguments far up the line
/// individual Υ values overflow f64 while the assembled constant does not.
pub fn dozz_ln(
    a1: Complex64,
    a2: Complex64,
    a3: Complex64,
    params: &LiouvilleParams,
) -> Result<LnDozz> {
    let gamma = params.gamma();
    let q = params.q();
    let abar = a1 + a2 + a3;
    let denominator_args = [
        abar / 2.0 - q,
        abar / 2.0 - a1,
        abar / 2.0 - a2,
        abar / 2.0 - a3,
    ];
    for &d in &denominator_args {
        if let Some(lattice) = upsilon_zero_lattice_hit(d, params, 1e-10) {
            return Err(LiouvilleError::DozzPole {
                argument: d,
                lattice,
            });
        }
    }

    // Positive real base: the complex power is the principal one.
    let base = std::f64::consts::PI
        * params.mu()
        * ell(Complex64::new(gamma * gamma / 4.0, 0.0))?.re
        * (gamma / 2.0).powf(2.0 - gamma * gamma / 2.0);
    let mut ln = (2.0 * q - abar) / gamma * base.ln();

    // Υ'(0) = Υ(γ/2), strictly positive.
    ln += upsilon_ln(Complex64::new(gamma / 2.0, 0.0), params)
        .expect("gamma/2 is never on the zero lattice");

    for &a in &[a1, a2, a3] {
        match upsilon_ln(a, params) {
            Some(v) => ln += v,
            None => {
                return Ok(LnDozz {
                    ln: Complex64::new(f64::NEG_INFINITY, 0.0),
                    is_zero: true,
                })
            }
        }
    }
    for &d in &denominator_args {
        ln -= upsilon_ln(d, params).expect("denominator lattice hits were filtered above");
    }
    Ok(LnDozz { ln, is_zero: false })
}

/// C^DOZZ_{γ,μ}(α₁, α₂, α₃). Meromorphic in the three α's; returns a pole
/// error (with the lattice location) when a denominator Υ vanishes.
pub fn dozz(
    a1: Complex64,
    a2: Complex64,
    a3: Complex64,
    params: &LiouvilleParams,
) -> Result<Complex64> {
    Ok(dozz_ln(a1, a2, a3, params)?.value())
}
