//! Complex log-Γ (Lanczos) and the ratio ℓ(z) = Γ(z)/Γ(1−z).

use num_complex::Complex64;

use crate::{LiouvilleError, Result};

/// Lanczos g = 7 coefficients (GNU Scientific Library values).
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_74;

fn is_nonpositive_integer(z: Complex64, tol: f64) -> bool {
    z.im.abs() < tol && z.re < 0.5 && (z.re - z.re.round()).abs() < tol
}

/// Principal branch of ln Γ(z).
///
/// Lanczos approximation for Re z ≥ 0.5; otherwise the argument is shifted
/// up with ln Γ(z) = ln Γ(z+m) − Σ Log(z+k). On the negative real axis the
/// value is the limit from the upper half-plane.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z, 1e-12) {
        return Err(LiouvilleError::GammaPole(z));
    }
    if z.re >= 0.5 {
        return Ok(lanczos_ln_gamma(z));
    }
    // Shift into Re ≥ 0.5.
    let m = (0.5 - z.re).ceil() as usize;
    let mut log_shift = Complex64::new(0.0, 0.0);
    for k in 0..m {
        log_shift += (z + k as f64).ln();
    }
    Ok(lanczos_ln_gamma(z + m as f64) - log_shift)
}

fn lanczos_ln_gamma(z: Complex64) -> Complex64 {
    let zm1 = z - 1.0;
    let mut series = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        series += c / (zm1 + i as f64);
    }
    let t = zm1 + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (zm1 + 0.5) * t.ln() - t + series.ln()
}

/// ln sin(πz), computed without overflow for large |Im z|.
pub(crate) fn ln_sin_pi(z: Complex64) -> Complex64 {
    if z.im >= 0.0 {
        // sin(πz) = e^{-iπz}(e^{2iπz} − 1)/(2i)
        let e = (Complex64::new(0.0, 2.0 * std::f64::consts::PI) * z).exp();
        Complex64::new(0.0, -std::f64::consts::PI) * z + (e - 1.0).ln()
            - Complex64::new(0.0, 2.0).ln()
    } else {
        ln_sin_pi(z.conj()).conj()
    }
}

/// Value of ln ℓ(z) with the integer-lattice special cases made explicit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LnEll {
    Finite(Complex64),
    /// z is a positive integer: Γ(1−z) has a pole, so ℓ(z) = 0.
    Zero,
    /// z is a non-positive integer: Γ(z) has a pole, so ℓ(z) = ∞.
    Pole,
}

/// ln of ℓ(z) = Γ(z)/Γ(1−z).
///
/// Uses the reflection identity ℓ(z) = Γ(z)² sin(πz)/π for Re z ≥ 1/2 and
/// ℓ(z) = 1/ℓ(1−z) otherwise, so Γ is only ever evaluated in its Lanczos
/// half-plane. The imaginary part is a valid branch, not necessarily the
/// continuous one; exp of it is the exact value.
pub fn ln_ell(z: Complex64) -> LnEll {
    let tol = 1e-12;
    if z.im.abs() < tol && (z.re - z.re.round()).abs() < tol {
        return if z.re.round() >= 1.0 {
            LnEll::Zero
        } else {
            LnEll::Pole
        };
    }
    if z.re >= 0.5 {
        let lg = lanczos_ln_gamma(z);
        LnEll::Finite(2.0 * lg + ln_sin_pi(z) - std::f64::consts::PI.ln())
    } else {
        match ln_ell(Complex64::new(1.0, 0.0) - z) {
            LnEll::Finite(v) => LnEll::Finite(-v),
            LnEll::Zero => LnEll::Pole,
            LnEll::Pole => LnEll::Zero,
        }
    }
}

/// ℓ(z) = Γ(z)/Γ(1−z). Returns exactly 0 at positive integers and an error
/// at the Γ poles (non-positive integers).
pub fn ell(z: Complex64) -> Result<Complex64> {
    match ln_ell(z) {
        LnEll::Finite(v) => Ok(v.exp()),
        LnEll::Zero => Ok(Complex64::new(0.0, 0.0)),
        LnEll::Pole => Err(LiouvilleError::GammaPole(z)),
    }
}
