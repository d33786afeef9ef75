//! C ABI for the liouville crate: opaque handles, status codes, plain
//! double in/out. The generated header lives in include/liouville.h.

use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_complex::Complex64;

use liouville::blocks::{BlockEngine, BlockParams};
use liouville::bootstrap::{fourpoint, QuadratureConfig};
use liouville::special;
use liouville::{LiouvilleError, LiouvilleParams};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LiouvilleStatus {
    Ok = 0,
    /// A required pointer was null.
    NullArgument = 1,
    /// Parameters outside their domain (γ ∉ (0,2), μ ≤ 0, bad grid …).
    InvalidParameter = 2,
    /// Pole or condition violation (DOZZ pole, Seiberg bounds, |z| ≥ 1 …).
    Condition = 3,
    /// Unexpected internal failure (a panic was caught).
    Internal = 4,
}

fn status_of(err: &LiouvilleError) -> LiouvilleStatus {
    match err {
        LiouvilleError::InvalidParameter(_) => LiouvilleStatus::InvalidParameter,
        _ => LiouvilleStatus::Condition,
    }
}

/// Opaque coupling data (γ, μ) with the derived Q and c_L.
pub struct LiouvilleCoupling {
    params: LiouvilleParams,
}

/// Creates a coupling handle; returns null when γ ∉ (0, 2) or μ ≤ 0.
/// The handle must be released with `liouville_coupling_free`.
#[no_mangle]
pub extern "C" fn liouville_coupling_new(gamma: f64, mu: f64) -> *mut LiouvilleCoupling {
    match LiouvilleParams::new(gamma, mu) {
        Ok(params) => Box::into_raw(Box::new(LiouvilleCoupling { params })),
        Err(_) => std::ptr::null_mut(),
    }
}

/// Releases a coupling handle; null is ignored.
#[no_mangle]
pub extern "C" fn liouville_coupling_free(handle: *mut LiouvilleCoupling) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// Background charge Q = 2/γ + γ/2.
#[no_mangle]
pub extern "C" fn liouville_coupling_q(handle: *const LiouvilleCoupling) -> f64 {
    match unsafe { handle.as_ref() } {
        Some(h) => h.params.q(),
        None => f64::NAN,
    }
}

/// Central charge c_L = 1 + 6Q².
#[no_mangle]
pub extern "C" fn liouville_coupling_central_charge(handle: *const LiouvilleCoupling) -> f64 {
    match unsafe { handle.as_ref() } {
        Some(h) => h.params.c_l(),
        None => f64::NAN,
    }
}

/// Conformal weight Δ_α = (α/2)(Q − α/2).
#[no_mangle]
pub extern "C" fn liouville_delta(
    handle: *const LiouvilleCoupling,
    alpha_re: f64,
    alpha_im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> LiouvilleStatus {
    let Some(h) = (unsafe { handle.as_ref() }) else {
        return LiouvilleStatus::NullArgument;
    };
    if out_re.is_null() || out_im.is_null() {
        return LiouvilleStatus::NullArgument;
    }
    let d = h.params.delta(Complex64::new(alpha_re, alpha_im));
    unsafe {
        *out_re = d.re;
        *out_im = d.im;
    }
    LiouvilleStatus::Ok
}

/// Zamolodchikov's Υ_{γ/2}(z). Zero-lattice hits return an exact 0 with
/// `*out_on_zero_lattice = true` (the pointer may be null if not needed).
#[no_mangle]
pub extern "C" fn liouville_upsilon(
    handle: *const LiouvilleCoupling,
    z_re: f64,
    z_im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
    out_on_zero_lattice: *mut bool,
) -> LiouvilleStatus {
    let Some(h) = (unsafe { handle.as_ref() }) else {
        return LiouvilleStatus::NullArgument;
    };
    if out_re.is_null() || out_im.is_null() {
        return LiouvilleStatus::NullArgument;
    }
    let result = catch_unwind(AssertUnwindSafe(|| {
        special::upsilon_full(Complex64::new(z_re, z_im), &h.params)
    }));
    match result {
        Ok(u) => {
            unsafe {
                *out_re = u.value.re;
                *out_im = u.value.im;
                if !out_on_zero_lattice.is_null() {
                    *out_on_zero_lattice = u.on_zero_lattice;
                }
            }
            LiouvilleStatus::Ok
        }
        Err(_) => LiouvilleStatus::Internal,
    }
}

/// DOZZ structure constant C^DOZZ_{γ,μ}(α₁, α₂, α₃). Returns
/// `Condition` at the poles (denominator Υ zeros).
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub extern "C" fn liouville_dozz(
    handle: *const LiouvilleCoupling,
    a1_re: f64,
    a1_im: f64,
    a2_re: f64,
    a2_im: f64,
    a3_re: f64,
    a3_im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> LiouvilleStatus {
    let Some(h) = (unsafe { handle.as_ref() }) else {
        return LiouvilleStatus::NullArgument;
    };
    if out_re.is_null() || out_im.is_null() {
        return LiouvilleStatus::NullArgument;
    }
    let result = catch_unwind(AssertUnwindSafe(|| {
        special::dozz(
            Complex64::new(a1_re, a1_im),
            Complex64::new(a2_re, a2_im),
            Complex64::new(a3_re, a3_im),
            &h.params,
        )
    }));
    match result {
        Ok(Ok(v)) => {
            unsafe {
                *out_re = v.re;
                *out_im = v.im;
            }
            LiouvilleStatus::Ok
        }
        Ok(Err(e)) => status_of(&e),
        Err(_) => LiouvilleStatus::Internal,
    }
}

/// Conformal-block coefficients β_0..β_n for external labels
/// `alphas[0..4]` (real) and intermediate weight Δ_{Q+iP}. `out` must hold
/// n+1 doubles; coefficients are real for real weights.
#[no_mangle]
pub extern "C" fn liouville_block_coefficients(
    handle: *const LiouvilleCoupling,
    p_spectrum: f64,
    alphas: *const f64,
    n: u32,
    out: *mut f64,
) -> LiouvilleStatus {
    let Some(h) = (unsafe { handle.as_ref() }) else {
        return LiouvilleStatus::NullArgument;
    };
    if alphas.is_null() || out.is_null() {
        return LiouvilleStatus::NullArgument;
    }
    let a = unsafe { std::slice::from_raw_parts(alphas, 4) };
    let result = catch_unwind(AssertUnwindSafe(|| {
        let bp = BlockParams::from_alphas(
            [
                Complex64::new(a[0], 0.0),
                Complex64::new(a[1], 0.0),
                Complex64::new(a[2], 0.0),
                Complex64::new(a[3], 0.0),
            ],
            p_spectrum,
            &h.params,
        );
        BlockEngine::new(n).coefficients(&bp, n)
    }));
    match result {
        Ok(Ok(coeffs)) => {
            let dst = unsafe { std::slice::from_raw_parts_mut(out, n as usize + 1) };
            for (d, c) in dst.iter_mut().zip(&coeffs) {
                *d = c.re;
            }
            LiouvilleStatus::Ok
        }
        Ok(Err(e)) => status_of(&e),
        Err(_) => LiouvilleStatus::Internal,
    }
}

/// Bootstrap four-point function at complex z (0 < |z| < 1) for real
/// `alphas[0..4]` satisfying the channel conditions. Writes the value and
/// the reported error estimate.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub extern "C" fn liouville_fourpoint(
    handle: *const LiouvilleCoupling,
    z_re: f64,
    z_im: f64,
    alphas: *const f64,
    p_max: f64,
    panels: usize,
    nodes_per_panel: usize,
    n_trunc: u32,
    out_value: *mut f64,
    out_error: *mut f64,
) -> LiouvilleStatus {
    let Some(h) = (unsafe { handle.as_ref() }) else {
        return LiouvilleStatus::NullArgument;
    };
    if alphas.is_null() || out_value.is_null() || out_error.is_null() {
        return LiouvilleStatus::NullArgument;
    }
    let a = unsafe { std::slice::from_raw_parts(alphas, 4) };
    if !(p_max > 0.0) || panels == 0 || nodes_per_panel == 0 {
        return LiouvilleStatus::InvalidParameter;
    }
    let quad = QuadratureConfig {
        p_max,
        panels,
        nodes_per_panel,
        refinement: 2,
    };
    let result = catch_unwind(AssertUnwindSafe(|| {
        fourpoint(
            Complex64::new(z_re, z_im),
            [a[0], a[1], a[2], a[3]],
            &h.params,
            &quad,
            n_trunc,
        )
    }));
    match result {
        Ok(Ok(r)) => {
            unsafe {
                *out_value = r.value;
                *out_error = r.error;
            }
            LiouvilleStatus::Ok
        }
        Ok(Err(e)) => status_of(&e),
        Err(_) => LiouvilleStatus::Internal,
    }
}

/// Library version as a static C string.
#[no_mangle]
pub extern "C" fn liouville_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coupling_lifecycle_and_accessors() {
        let h = liouville_coupling_new(1.0, 1.0);
        assert!(!h.is_null());
        assert!((liouville_coupling_q(h) - 2.5).abs() < 1e-15);
        assert!((liouville_coupling_central_charge(h) - 38.5).abs() < 1e-12);
        liouville_coupling_free(h);
        // Invalid parameters yield a null handle.
        assert!(liouville_coupling_new(2.5, 1.0).is_null());
        assert!(liouville_coupling_new(1.0, -1.0).is_null());
        // Null-safe accessors.
        assert!(liouville_coupling_q(std::ptr::null()).is_nan());
        liouville_coupling_free(std::ptr::null_mut());
    }

    #[test]
    fn dozz_values_and_pole_status() {
        let h = liouville_coupling_new(1.0, 1.0);
        let (mut re, mut im) = (0.0, 0.0);
        let status = liouville_dozz(h, 0.9, 0.0, 1.1, 0.0, 1.3, 0.0, &mut re, &mut im);
        assert_eq!(status, LiouvilleStatus::Ok);
        assert!((re - 975.7789487971979).abs() < 1e-6 * 975.0);
        // ᾱ = 2Q is a pole.
        let status = liouville_dozz(h, 2.0, 0.0, 2.0, 0.0, 1.0, 0.0, &mut re, &mut im);
        assert_eq!(status, LiouvilleStatus::Condition);
        liouville_coupling_free(h);
    }

    #[test]
    fn upsilon_and_zero_lattice_flag() {
        let h = liouville_coupling_new(1.0, 1.0);
        let (mut re, mut im, mut flag) = (0.0, 0.0, false);
        let status = liouville_upsilon(h, 1.25, 0.0, &mut re, &mut im, &mut flag);
        assert_eq!(status, LiouvilleStatus::Ok);
        assert!((re - 1.0).abs() < 1e-10 && !flag);
        liouville_upsilon(h, 0.0, 0.0, &mut re, &mut im, &mut flag);
        assert!(flag && re == 0.0);
        liouville_coupling_free(h);
    }

    #[test]
    fn block_coefficients_start_at_one() {
        let h = liouville_coupling_new(1.0, 1.0);
        let alphas = [1.5, 1.2, 1.4, 1.3];
        let mut out = [0.0; 4];
        let status = liouville_block_coefficients(h, 0.8, alphas.as_ptr(), 3, out.as_mut_ptr());
        assert_eq!(status, LiouvilleStatus::Ok);
        assert!((out[0] - 1.0).abs() < 1e-15);
        assert!(out[1].is_finite() && out[1] != 0.0);
        liouville_coupling_free(h);
    }

    #[test]
    fn fourpoint_value_and_condition_status() {
        let h = liouville_coupling_new(1.0, 1.0);
        let alphas = [1.5, 1.2, 1.5, 1.2];
        let (mut value, mut error) = (0.0, 0.0);
        let status = liouville_fourpoint(
            h,
            0.4,
            0.0,
            alphas.as_ptr(),
            10.0,
            8,
            8,
            3,
            &mut value,
            &mut error,
        );
        assert_eq!(status, LiouvilleStatus::Ok);
        assert!(value > 0.0 && error.is_finite());
        // Channel condition violated.
        let weak = [1.0, 1.0, 1.5, 1.2];
        let status = liouville_fourpoint(
            h,
            0.4,
            0.0,
            weak.as_ptr(),
            10.0,
            8,
            8,
            3,
            &mut value,
            &mut error,
        );
        assert_eq!(status, LiouvilleStatus::Condition);
        liouville_coupling_free(h);
    }

    #[test]
    fn version_is_a_c_string() {
        let v = unsafe { std::ffi::CStr::from_ptr(liouville_version()) };
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}
