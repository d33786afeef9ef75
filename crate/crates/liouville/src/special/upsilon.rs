//! Zamolodchikov's Υ_{γ/2}: strip integral, shift-relation continuation,
//! zero lattice.

use num_complex::Complex64;

use super::gamma::{ln_ell, LnEll};
use crate::params::LiouvilleParams;
use crate::quad::{gauss_legendre, KahanSum};

/// Tolerance for deciding that an argument sits exactly on the zero lattice.
const LATTICE_TOL: f64 = 1e-10;

/// Value of Υ together with the zero-lattice flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Upsilon {
    pub value: Complex64,
    /// True when the argument hit the zero lattice
    /// (−(γ/2)ℕ − (2/γ)ℕ) ∪ (Q + (γ/2)ℕ + (2/γ)ℕ) and the value is an exact 0.
    pub on_zero_lattice: bool,
}

/// Returns the lattice point nearest to `z` if `z` lies on the zero lattice
/// of Υ within `tol`.
pub fn upsilon_zero_lattice_hit(
    z: Complex64,
    params: &LiouvilleParams,
    tol: f64,
) -> Option<Complex64> {
    if z.im.abs() >= tol {
        return None;
    }
    let g2 = params.gamma() / 2.0;
    let ig2 = 2.0 / params.gamma();
    let q = params.q();
    // Negative lattice: −m·γ/2 − n·2/γ, m, n ≥ 0.
    if z.re <= tol {
        let x = -z.re;
        let m_max = (x / g2).ceil() as i64 + 1;
        for m in 0..=m_max {
            let rest = x - m as f64 * g2;
            if rest < -tol {
                break;
            }
            let n = (rest / ig2).round();
            if n >= -0.1 && (rest - n * ig2).abs() < tol {
                return Some(Complex64::new(-(m as f64 * g2 + n * ig2), 0.0));
            }
        }
    }
    // Positive lattice: Q + m·γ/2 + n·2/γ, m, n ≥ 0.
    if z.re >= q - tol {
        let x = z.re - q;
        let m_max = (x / g2).ceil() as i64 + 1;
        for m in 0..=m_max {
            let rest = x - m as f64 * g2;
            if rest < -tol {
                break;
            }
            let n = (rest / ig2).round();
            if n >= -0.1 && (rest - n * ig2).abs() < tol {
                return Some(Complex64::new(q + m as f64 * g2 + n * ig2, 0.0));
            }
        }
    }
    None
}

/// ln Υ_{γ/2}(z), or `None` when z sits on the zero lattice (exact zero).
///
/// For 0 < Re z < Q the defining t-integral is evaluated directly; outside
/// the strip the two shift relations translate z inward, accumulating the
/// ℓ and (γ/2)-power prefactors in log form. The imaginary part of the
/// result is a valid branch of the logarithm (exp of it is the value).
pub fn upsilon_ln(z: Complex64, params: &LiouvilleParams) -> Option<Complex64> {
    if upsilon_zero_lattice_hit(z, params, LATTICE_TOL).is_some() {
        return None;
    }
    let gamma = params.gamma();
    let q = params.q();
    // Shift step: γ/2 for γ ≤ √2, else 2/γ, keeping prefactor magnitudes
    // moderate. `arg_coef` is the coefficient c in the factor ℓ(c·z) of
    // Υ(z + step) = ℓ(c z) (γ/2)^{e(z)} Υ(z).
    let (step, arg_coef) = if gamma <= std::f64::consts::SQRT_2 {
        (gamma / 2.0, gamma / 2.0)
    } else {
        (2.0 / gamma, 2.0 / gamma)
    };
    let pow_exponent = |x: Complex64| -> Complex64 {
        if step == gamma / 2.0 {
            1.0 - gamma * x
        } else {
            4.0 / gamma * x - 1.0
        }
    };
    let ln_half_gamma = (gamma / 2.0).ln();
    let window_lo = (q - step) / 2.0;

    let mut zz = z;
    let mut ln_prefactor = Complex64::new(0.0, 0.0);
    while zz.re >= window_lo + step {
        let x = zz - step;
        let LnEll::Finite(le) = ln_ell(arg_coef * x) else {
            // Off-lattice arguments never reach the ℓ poles/zeros: the
            // descending chain keeps Re(c·x) > 0 and ascending-chain hits
            // coincide with the lattice, filtered above.
            unreachable!("ell special value during strip reduction at {x}");
        };
        ln_prefactor += le + pow_exponent(x) * ln_half_gamma;
        zz = x;
    }
    while zz.re < window_lo {
        let LnEll::Finite(le) = ln_ell(arg_coef * zz) else {
            unreachable!("ell special value during strip reduction at {zz}");
        };
        ln_prefactor -= le + pow_exponent(zz) * ln_half_gamma;
        zz += step;
    }
    Some(ln_prefactor + strip_integral(zz, params))
}

/// ln Υ on the strip via the defining integral
/// ∫₀^∞ [w² e^{−t} − sinh²(wt/2)/(sinh(γt/4) sinh(t/γ))] dt/t, w = Q/2 − z.
fn strip_integral(z: Complex64, params: &LiouvilleParams) -> Complex64 {
    let gamma = params.gamma();
    let q = params.q();
    let w = Complex64::new(q / 2.0, 0.0) - z;
    if w.norm() < 1e-15 {
        return Complex64::new(0.0, 0.0);
    }
    let a = gamma / 4.0;
    let b = 1.0 / gamma;

    // Small-t guard: the integrand has a removable 0/0 at t = 0; integrate
    // its cubic Taylor polynomial analytically on [0, t0].
    let t0 = 1e-3_f64.min(2e-2 / w.norm_sqr().max(1.0));
    let s2 = a * a + b * b;
    let d4 = (a.powi(4) + b.powi(4)) / 120.0 + a * a * b * b / 36.0;
    let w2 = w * w;
    let c0 = -w2;
    let c1 = w2 / 2.0 - w2 * w2 / 12.0 + w2 * s2 / 6.0;
    let c2 = -w2 / 6.0;
    let c3 = w2 / 24.0 - w2 * w2 * w2 / 360.0 + w2 * w2 * s2 / 72.0 - w2 * s2 * s2 / 36.0
        + w2 * d4;
    let total = c0 * t0 + c1 * t0.powi(2) / 2.0 + c2 * t0.powi(3) / 3.0 + c3 * t0.powi(4) / 4.0;

    // Tail cutoff: both integrand pieces decay at least like e^{−rate·t};
    // after strip reduction the margin keeps the rate well away from 0.
    let margin = z.re.min(q - z.re);
    let rate = margin.min(1.0);
    let t_max = 5.0 + 38.0 / rate;
    // Panel width tracks the oscillation scale e^{i Im(w) t} of sinh²(wt/2).
    let width = 3.0_f64.min(18.0 / (1.0 + w.im.abs()));
    let n_panels = ((t_max - t0) / width).ceil() as usize;
    let nodes = gauss_legendre(24);

    let integrand = |t: f64| -> Complex64 {
        let decay = w2 * (-t).exp();
        // sinh²(wt/2) / (sinh(at) sinh(bt)) with the real denominator in
        // log form so large t cannot overflow.
        let num = (w * t / 2.0).sinh();
        let ln_den = ln_sinh_real(a * t) + ln_sinh_real(b * t);
        let ratio = num * num * (-ln_den).exp();
        (decay - ratio) / t
    };

    let mut acc_re = KahanSum::default();
    let mut acc_im = KahanSum::default();
    for p in 0..n_panels {
        let lo = t0 + p as f64 * width;
        let hi = (lo + width).min(t_max);
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        for &(x, wt) in &nodes {
            let v = integrand(mid + half * x);
            acc_re.add(wt * half * v.re);
            acc_im.add(wt * half * v.im);
        }
    }
    total + Complex64::new(acc_re.value(), acc_im.value())
}

/// ln sinh(u) for u > 0 without overflow.
fn ln_sinh_real(u: f64) -> f64 {
    u + (-(-2.0 * u).exp()).ln_1p() - std::f64::consts::LN_2
}

/// Υ_{γ/2}(z) with the zero-lattice flag.
pub fn upsilon_full(z: Complex64, params: &LiouvilleParams) -> Upsilon {
    match upsilon_ln(z, params) {
        Some(ln) => Upsilon {
            value: ln.exp(),
            on_zero_lattice: false,
        },
        None => Upsilon {
            value: Complex64::new(0.0, 0.0),
            on_zero_lattice: true,
        },
    }
}

/// Υ_{γ/2}(z).
pub fn upsilon(z: Complex64, params: &LiouvilleParams) -> Complex64 {
    upsilon_full(z, params).value
}

/// Υ'(0) = Υ(γ/2), the z → 0 limit of the γ/2 shift relation with
/// ℓ(γz/2) ~ 2/(γz).
pub fn upsilon_prime_zero(params: &LiouvilleParams) -> f64 {
    let v = upsilon(Complex64::new(params.gamma() / 2.0, 0.0), params);
    v.re
}
