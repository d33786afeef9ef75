//! Conformal-block coefficients β_n, truncated series evaluation, and
//! convergence diagnostics.

use std::io::Write;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;

use crate::params::LiouvilleParams;
use crate::partitions::YoungDiagram;
use crate::virasoro::{shapovalov_matrix_with, ReductionEngine, ShapovalovMatrix};
use crate::{LiouvilleError, Result};

/// External weights Δ_{α_1..4}, intermediate weight Δ_{Q+iP} and central
/// charge entering F(c_L, Δ_i, Δ_P, z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockParams {
    pub d1: Complex64,
    pub d2: Complex64,
    pub d3: Complex64,
    pub d4: Complex64,
    pub dp: Complex64,
    pub c_l: f64,
}

impl BlockParams {
    /// Weights from vertex labels α_i and spectrum parameter P.
    pub fn from_alphas(alphas: [Complex64; 4], p_spectrum: f64, params: &LiouvilleParams) -> Self {
        Self {
            d1: params.delta(alphas[0]),
            d2: params.delta(alphas[1]),
            d3: params.delta(alphas[2]),
            d4: params.delta(alphas[3]),
            dp: Complex64::new(params.delta_spectrum(p_spectrum), 0.0),
            c_l: params.c_l(),
        }
    }

    /// The t-channel block swaps α_1 with α_3.
    pub fn crossed(&self) -> Self {
        Self {
            d1: self.d3,
            d3: self.d1,
            ..*self
        }
    }
}

/// v(Δ, Δ′, Δ″, ν) = ∏_{j=1}^k (ν_j Δ′ − Δ + Δ″ + Σ_{u<j} ν_u), the factors
/// taken in stored order with cumulative prefix sums.
pub fn v_weight(
    d: Complex64,
    dprime: Complex64,
    dsecond: Complex64,
    nu: &YoungDiagram,
) -> Complex64 {
    let mut prefix = 0.0;
    let mut acc = Complex64::new(1.0, 0.0);
    for &part in nu.parts() {
        acc *= f64::from(part) * dprime - d + dsecond + prefix;
        prefix += f64::from(part);
    }
    acc
}

/// Exact level-by-level Shapovalov data reused across many (P, z)
/// evaluations.
pub struct BlockEngine {
    matrices: Vec<ShapovalovMatrix>,
}

impl BlockEngine {
    pub fn new(max_level: u32) -> Self {
        let mut engine = ReductionEngine::new();
        let matrices = (0..=max_level)
            .map(|n| shapovalov_matrix_with(&mut engine, n))
            .collect();
        Self { matrices }
    }

    pub fn max_level(&self) -> u32 {
        (self.matrices.len() - 1) as u32
    }

    pub fn matrix(&self, level: u32) -> &ShapovalovMatrix {
        &self.matrices[level as usize]
    }

    /// β_n = Σ_{|ν|=|ν′|=n} v(Δ1,Δ2,ΔP,ν) F_{Q+iP}^{-1}(ν,ν′) v(Δ4,Δ3,ΔP,ν′),
    /// computed by solving F x = v(Δ4,Δ3,·) and dotting with v(Δ1,Δ2,·).
    pub fn beta(&self, n: u32, bp: &BlockParams) -> Result<Complex64> {
        if n == 0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let (left, x) = self.solve_right(n, bp)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..left.len() {
            acc += left[i] * x[i];
        }
        Ok(acc)
    }

    /// β_n via the explicit full matrix inverse; algebraically identical to
    /// [`Self::beta`], kept as the cross-route for the dual check.
    pub fn beta_via_inverse(&self, n: u32, bp: &BlockParams) -> Result<Complex64> {
        if n == 0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let matrix = self.matrix(n);
        let f = matrix.eval_complex(bp.dp, Complex64::new(bp.c_l, 0.0));
        let inv = f.try_inverse().ok_or(LiouvilleError::Condition(format!(
            "Shapovalov matrix singular at level {n} (dp = {})",
            bp.dp
        )))?;
        let (left, right) = self.v_vectors(n, bp);
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..left.len() {
            for j in 0..right.len() {
                acc += left[i] * inv[(i, j)] * right[j];
            }
        }
        Ok(acc)
    }

    fn v_vectors(&self, n: u32, bp: &BlockParams) -> (Vec<Complex64>, Vec<Complex64>) {
        let diagrams = self.matrix(n).diagrams();
        let left: Vec<Complex64> = diagrams
            .iter()
            .map(|nu| v_weight(bp.d1, bp.d2, bp.dp, nu))
            .collect();
        let right: Vec<Complex64> = diagrams
            .iter()
            .map(|nu| v_weight(bp.d4, bp.d3, bp.dp, nu))
            .collect();
        (left, right)
    }

    fn solve_right(&self, n: u32, bp: &BlockParams) -> Result<(Vec<Complex64>, DVector<Complex64>)> {
        assert!(
            n <= self.max_level(),
            "level {n} beyond the engine's cap {}",
            self.max_level()
        );
        let matrix = self.matrix(n);
        let f = matrix.eval_complex(bp.dp, Complex64::new(bp.c_l, 0.0));
        let (left, right) = self.v_vectors(n, bp);
        let rhs = DVector::from_vec(right);
        let lu = f.lu();
        let x = lu.solve(&rhs).ok_or(LiouvilleError::Condition(format!(
            "Shapovalov matrix singular at level {n} (dp = {})",
            bp.dp
        )))?;
        Ok((left, x))
    }

    /// β_0..β_n in one sweep.
    pub fn coefficients(&self, bp: &BlockParams, n: u32) -> Result<Vec<Complex64>> {
        (0..=n).map(|k| self.beta(k, bp)).collect()
    }
}

/// Single-shot β_n (builds the exact matrices each call; use
/// [`BlockEngine`] in loops).
pub fn beta_n(n: u32, bp: &BlockParams) -> Result<Complex64> {
    BlockEngine::new(n).beta(n, bp)
}

/// Truncated block series data.
#[derive(Debug, Clone, Serialize)]
pub struct BlockSeries {
    #[serde(skip)]
    pub coefficients: Vec<Complex64>,
    pub truncation: u32,
    pub tail_estimate: f64,
    pub divergence_warning: bool,
}

/// Evaluation of the truncated series at one point.
#[derive(Debug, Clone, Copy)]
pub struct BlockValue {
    pub value: Complex64,
    pub tail_estimate: f64,
    pub divergence_warning: bool,
}

/// Σ_{n≤N} β_n zⁿ with tail estimate |β_N z^N|·|z|/(1 − |z| r̂), where r̂ is
/// the empirical growth rate max_{N/2≤n≤N} |β_n/β_{n−1}|. The estimate is
/// reported, never silently trusted; `divergence_warning` is set when
/// r̂·|z| ≥ 1.
pub fn eval_series(coefficients: &[Complex64], z: Complex64) -> BlockValue {
    let n = coefficients.len() - 1;
    let mut value = Complex64::new(0.0, 0.0);
    let mut zk = Complex64::new(1.0, 0.0);
    for &c in coefficients {
        value += c * zk;
        zk *= z;
    }
    let r_hat = growth_rate(coefficients);
    let zn = z.norm().powi(n as i32);
    let last = coefficients[n].norm() * zn;
    let divergence_warning = r_hat * z.norm() >= 1.0;
    let tail_estimate = if divergence_warning {
        f64::INFINITY
    } else {
        last * z.norm() / (1.0 - z.norm() * r_hat)
    };
    BlockValue {
        value,
        tail_estimate,
        divergence_warning,
    }
}

fn growth_rate(coefficients: &[Complex64]) -> f64 {
    let n = coefficients.len() - 1;
    let mut r_hat: f64 = 0.0;
    for k in (n / 2).max(1)..=n {
        let prev = coefficients[k - 1].norm();
        if prev > 0.0 {
            r_hat = r_hat.max(coefficients[k].norm() / prev);
        }
    }
    r_hat
}

/// F_P(z) truncated at `n_trunc`. Requires |z| < 1 (the series' radius).
pub fn block_eval(
    z: Complex64,
    bp: &BlockParams,
    n_trunc: u32,
    engine: &BlockEngine,
) -> Result<BlockValue> {
    if z.norm() >= 1.0 {
        return Err(LiouvilleError::Condition(format!(
            "block series requires |z| < 1, got |z| = {}",
            z.norm()
        )));
    }
    let coefficients = engine.coefficients(bp, n_trunc)?;
    Ok(eval_series(&coefficients, z))
}

/// Root-test sequence |β_n|^{1/n} for n = 1..N, for offline inspection of
/// the radius of convergence (no hard assertion; the radius-1 statement is
/// only almost-everywhere in P).
pub fn radius_diagnostic(bp: &BlockParams, n: u32, engine: &BlockEngine) -> Result<Vec<f64>> {
    let coefficients = engine.coefficients(bp, n)?;
    Ok((1..=n as usize)
        .map(|k| coefficients[k].norm().powf(1.0 / k as f64))
        .collect())
}

/// RFC-4180 CSV of (n, Re β_n, Im β_n, |β_n|^{1/n}).
pub fn write_coefficients_csv<W: Write>(
    mut w: W,
    coefficients: &[Complex64],
) -> std::io::Result<()> {
    writeln!(w, "n,re_beta,im_beta,root_test")?;
    for (n, c) in coefficients.iter().enumerate() {
        let root = if n == 0 {
            1.0
        } else {
            c.norm().powf(1.0 / n as f64)
        };
        writeln!(w, "{n},{},{},{root}", c.re, c.im)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn sample_params() -> BlockParams {
        let p = LiouvilleParams::new(1.0, 1.0).unwrap();
        BlockParams {
            d1: c(0.31),
            d2: c(0.47),
            d3: c(0.29),
            d4: c(0.55),
            dp: c(p.delta_spectrum(0.8)),
            c_l: p.c_l(),
        }
    }

    #[test]
    fn v_weight_small_diagrams() {
        let (d, dp, ds) = (c(0.3), c(0.7), c(1.9));
        assert_eq!(
            v_weight(d, dp, ds, &YoungDiagram::empty()),
            Complex64::new(1.0, 0.0)
        );
        let single = v_weight(d, dp, ds, &YoungDiagram::new(vec![1]).unwrap());
        assert_relative_eq!(single.re, (dp - d + ds).re, max_relative = 1e-15);
        let double = v_weight(d, dp, ds, &YoungDiagram::new(vec![1, 1]).unwrap());
        let base = dp - d + ds;
        assert_relative_eq!(double.re, (base * (base + 1.0)).re, max_relative = 1e-14);
    }

    #[test]
    fn beta_zero_is_one_and_beta_one_matches_closed_form() {
        let bp = sample_params();
        let engine = BlockEngine::new(1);
        assert_eq!(engine.beta(0, &bp).unwrap(), Complex64::new(1.0, 0.0));
        let beta1 = engine.beta(1, &bp).unwrap();
        let closed = (bp.dp + bp.d2 - bp.d1) * (bp.dp + bp.d3 - bp.d4) / (2.0 * bp.dp);
        assert!(
            (beta1 - closed).norm() <= 1e-12 * closed.norm(),
            "{beta1} vs {closed}"
        );
        // Δ1 = Δ2, Δ3 = Δ4 collapses to ΔP/2.
        let sym = BlockParams {
            d1: bp.d1,
            d2: bp.d1,
            d3: bp.d4,
            d4: bp.d4,
            ..bp
        };
        let beta1 = engine.beta(1, &sym).unwrap();
        assert!((beta1 - bp.dp / 2.0).norm() <= 1e-12 * bp.dp.norm());
    }

    #[test]
    fn solve_route_equals_inverse_route() {
        let bp = sample_params();
        let engine = BlockEngine::new(5);
        for n in 1..=5 {
            let a = engine.beta(n, &bp).unwrap();
            let b = engine.beta_via_inverse(n, &bp).unwrap();
            assert!(
                (a - b).norm() <= 1e-12 * (1.0 + a.norm()),
                "n = {n}: {a} vs {b}"
            );
        }
    }

    #[test]
    fn channel_swap_symmetry_and_reality() {
        let bp = sample_params();
        let swapped = BlockParams {
            d1: bp.d4,
            d2: bp.d3,
            d3: bp.d2,
            d4: bp.d1,
            ..bp
        };
        let engine = BlockEngine::new(6);
        for n in 0..=6 {
            let a = engine.beta(n, &bp).unwrap();
            let b = engine.beta(n, &swapped).unwrap();
            assert!(
                (a - b).norm() <= 1e-11 * (1.0 + a.norm()),
                "n = {n}: {a} vs {b}"
            );
            assert!(
                a.im.abs() <= 1e-12 * (1.0 + a.re.abs()),
                "beta_{n} not real: {a}"
            );
        }
    }

    #[test]
    fn series_evaluation_and_truncation_identity() {
        let bp = sample_params();
        let engine = BlockEngine::new(8);
        // z = 0 keeps only β_0.
        let v = block_eval(Complex64::new(0.0, 0.0), &bp, 4, &engine).unwrap();
        assert_eq!(v.value, Complex64::new(1.0, 0.0));
        // N = 1 truncation is 1 + β_1 z.
        let z = Complex64::new(0.25, 0.1);
        let beta1 = engine.beta(1, &bp).unwrap();
        let v = block_eval(z, &bp, 1, &engine).unwrap();
        assert!((v.value - (Complex64::new(1.0, 0.0) + beta1 * z)).norm() < 1e-14);
        // Two truncations agree within the coarse tail estimate at z = 0.3.
        let z = Complex64::new(0.3, 0.0);
        let coarse = block_eval(z, &bp, 4, &engine).unwrap();
        let fine = block_eval(z, &bp, 8, &engine).unwrap();
        assert!(
            (coarse.value - fine.value).norm() <= coarse.tail_estimate,
            "difference {} vs tail {}",
            (coarse.value - fine.value).norm(),
            coarse.tail_estimate
        );
        assert!(!fine.divergence_warning);
    }

    #[test]
    fn rejects_points_outside_the_disc() {
        let bp = sample_params();
        let engine = BlockEngine::new(2);
        assert!(block_eval(Complex64::new(1.2, 0.0), &bp, 2, &engine).is_err());
    }

    #[test]
    fn root_test_sequence_is_finite_and_bounded() {
        let bp = sample_params();
        let engine = BlockEngine::new(8);
        let seq = radius_diagnostic(&bp, 8, &engine).unwrap();
        assert_eq!(seq.len(), 8);
        for (i, v) in seq.iter().enumerate() {
            assert!(v.is_finite() && *v >= 0.0, "entry {i} = {v}");
            assert!(*v < 20.0, "root test unexpectedly large: {v}");
        }
    }

    #[test]
    fn csv_has_header_plus_one_row_per_coefficient() {
        let bp = sample_params();
        let engine = BlockEngine::new(3);
        let coefficients = engine.coefficients(&bp, 3).unwrap();
        let mut buf = Vec::new();
        write_coefficients_csv(&mut buf, &coefficients).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0], "n,re_beta,im_beta,root_test");
        assert!(lines[1].starts_with("0,1,"));
    }
}
