//! Coupling data (γ, μ) and conformal weights.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{LiouvilleError, Result};

/// The Liouville coupling data. `q` and `c_l` are derived from γ:
/// Q = 2/γ + γ/2 and c_L = 1 + 6Q². On γ ∈ (0, 2) one always has Q ≥ 2
/// (with equality iff γ = √2) and hence c_L > 25.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LiouvilleParams {
    gamma: f64,
    mu: f64,
    q: f64,
    c_l: f64,
}

impl LiouvilleParams {
    pub fn new(gamma: f64, mu: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma < 2.0) || !gamma.is_finite() {
            return Err(LiouvilleError::InvalidParameter(format!(
                "gamma must lie in (0, 2), got {gamma}"
            )));
        }
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(LiouvilleError::InvalidParameter(format!(
                "mu must be positive, got {mu}"
            )));
        }
        let q = 2.0 / gamma + gamma / 2.0;
        Ok(Self {
            gamma,
            mu,
            q,
            c_l: 1.0 + 6.0 * q * q,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Background charge Q = 2/γ + γ/2.
    pub fn q(&self) -> f64 {
        self.q
    }

    /// Central charge c_L = 1 + 6Q².
    pub fn c_l(&self) -> f64 {
        self.c_l
    }

    /// Same coupling with a different cosmological constant.
    pub fn with_mu(&self, mu: f64) -> Result<Self> {
        Self::new(self.gamma, mu)
    }

    /// Conformal weight Δ_α = (α/2)(Q − α/2).
    pub fn delta(&self, alpha: Complex64) -> Complex64 {
        alpha / 2.0 * (self.q - alpha / 2.0)
    }

    /// Weight on the spectrum line: Δ_{Q+iP} = (Q² + P²)/4.
    pub fn delta_spectrum(&self, p: f64) -> f64 {
        (self.q * self.q + p * p) / 4.0
    }

    /// Degenerate weight parameter α_{r,s} = Q − rγ/2 − s·2/γ.
    pub fn alpha_rs(&self, r: u32, s: u32) -> f64 {
        self.q - f64::from(r) * self.gamma / 2.0 - f64::from(s) * 2.0 / self.gamma
    }
}

/// A vertex-operator label α together with its weight Δ_α.
///
/// Δ is invariant under the reflection α ↦ 2Q − α, and on the spectrum line
/// α = Q + iP (P real) the weight is real with Δ = (Q² + P²)/4 ≥ Q²/4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConformalWeight {
    pub alpha: Complex64,
    pub delta: Complex64,
}

impl ConformalWeight {
    pub fn new(alpha: Complex64, params: &LiouvilleParams) -> Self {
        Self {
            alpha,
            delta: params.delta(alpha),
        }
    }

    /// α = Q + iP for real P.
    pub fn on_spectrum(p: f64, params: &LiouvilleParams) -> Self {
        Self::new(Complex64::new(params.q(), p), params)
    }
}
