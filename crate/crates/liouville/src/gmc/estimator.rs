//! Correlation-function estimator on top of the truncated-field sampler.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::field::{GffSample, Grid, Hemisphere};
use super::GmcConfig;
use crate::params::LiouvilleParams;
use crate::quad::KahanSum;
use crate::special::{dozz, log_gamma};
use crate::{LiouvilleError, Result};

/// Seiberg-bound report: Σα − 2Q and the per-insertion margins Q − α_i,
/// all strictly positive on pass.
#[derive(Debug, Clone, Serialize)]
pub struct SeibergReport {
    pub sum_margin: f64,
    pub individual_margins: Vec<f64>,
    pub passes: bool,
}

/// Pure predicate for Σ α_i > 2Q and α_i < Q (strict).
pub fn seiberg_check(alphas: &[f64], params: &LiouvilleParams) -> SeibergReport {
    let q = params.q();
    let sum_margin = alphas.iter().sum::<f64>() - 2.0 * q;
    let individual_margins: Vec<f64> = alphas.iter().map(|&a| q - a).collect();
    let passes = sum_margin > 0.0 && individual_margins.iter().all(|&m| m > 0.0);
    SeibergReport {
        sum_margin,
        individual_margins,
        passes,
    }
}

/// Monte Carlo estimate of a correlation, with batch-mean error bars and
/// full provenance.
#[derive(Debug, Clone, Serialize)]
pub struct GmcEstimate {
    pub value: f64,
    pub std_error: f64,
    pub n_samples: u64,
    pub seed: u64,
    pub gamma: f64,
    pub mu: f64,
    /// s = (Σα − 2Q)/γ.
    pub s_exponent: f64,
    /// Deterministic prefactor γ⁻¹ ∏|z_j−z_{j′}|^{−α_jα_{j′}} μ^{−s} Γ(s).
    pub prefactor: f64,
    pub mean_neg_moment: f64,
    pub neg_moment_std_error: f64,
    /// Per-batch estimates (prefactor already applied), in batch order.
    pub batch_values: Vec<f64>,
    /// (Re z, Im z, α) echo of the insertions.
    pub insertions: Vec<(f64, f64, f64)>,
    pub config: GmcConfig,
}

/// Per-cell deterministic factor layout: [inner | outer] × level × θ.
fn factor_index(grid: &Grid, hemisphere: Hemisphere, level: usize, k: usize) -> usize {
    let m = grid.n_theta();
    let h = match hemisphere {
        Hemisphere::Inner => 0,
        Hemisphere::Outer => 1,
    };
    (h * grid.n_radial + level) * m + k
}

/// F_c = ∏_i (|z_c|₊^{γα_i} / |z_c − z_i|^{γα_i}) · area_c / |z_c|₊⁴
///       · e^{−(γ²/2) Var_N(z_c)},
/// so that per sample Z = Σ_c F_c e^{γ X_c}.
fn build_factors(grid: &Grid, insertions: &[(Complex64, f64)], gamma: f64) -> Vec<f64> {
    let m = grid.n_theta();
    let mut out = vec![0.0; 2 * grid.n_radial * m];
    for hemisphere in [Hemisphere::Inner, Hemisphere::Outer] {
        for level in 0..grid.n_radial {
            let t = grid.t_mid[level];
            let (area, ln_zplus) = match hemisphere {
                Hemisphere::Inner => (grid.cell_area_inner[level], 0.0),
                Hemisphere::Outer => (grid.cell_area_outer[level], t),
            };
            let chaos_norm = (-gamma * gamma / 2.0 * grid.var_level[level]).exp();
            let alpha_sum: f64 = insertions.iter().map(|&(_, a)| a).sum();
            // ln of ∏ |z|₊^{γα_i} / |z|₊⁴ at this level.
            let ln_level = ln_zplus * (gamma * alpha_sum - 4.0);
            let base = area * chaos_norm * ln_level.exp();
            for k in 0..m {
                let z = grid.cell_center(hemisphere, level, k);
                let mut ln_kernel = 0.0;
                for &(zi, ai) in insertions {
                    ln_kernel -= gamma * ai * (z - zi).norm().ln();
                }
                out[factor_index(grid, hemisphere, level, k)] = base * ln_kernel.exp();
            }
        }
    }
    out
}

struct BatchRun {
    batch_means: Vec<f64>,
    mean: f64,
    std_error: f64,
    n_samples: u64,
}

/// Mean of Z^{−s} by independent batches; parallel over batches, sample
/// streams keyed by global index so results are schedule-independent.
fn run_batches(
    grid: &Grid,
    factors: &[f64],
    gamma: f64,
    s: f64,
    n_samples: u64,
    seed: u64,
    batches: usize,
    angular_shift: usize,
) -> Result<BatchRun> {
    let per_batch = n_samples.div_ceil(batches as u64).max(1);
    let actual = per_batch * batches as u64;
    let m = grid.n_theta();
    let batch_means: Vec<f64> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut scratch = grid.scratch();
            let mut acc = KahanSum::default();
            for i in 0..per_batch {
                let index = b as u64 * per_batch + i;
                let mut z_acc = KahanSum::default();
                grid.stream_sample(seed, index, angular_shift, &mut scratch, |h, level, row| {
                    let base = factor_index(grid, h, level, 0);
                    let mut local = KahanSum::default();
                    for k in 0..m {
                        local.add(factors[base + k] * (gamma * row[k]).exp());
                    }
                    z_acc.add(local.value());
                });
                acc.add(z_acc.value().powf(-s));
            }
            acc.value() / per_batch as f64
        })
        .collect();
    if batch_means.iter().any(|v| !v.is_finite()) {
        return Err(LiouvilleError::Condition(
            "non-finite Z^{-s} encountered in a batch".into(),
        ));
    }
    let mean = batch_means.iter().sum::<f64>() / batches as f64;
    let var = batch_means
        .iter()
        .map(|v| (v - mean) * (v - mean))
        .sum::<f64>()
        / (batches as f64 - 1.0);
    let std_error = (var / batches as f64).sqrt();
    Ok(BatchRun {
        batch_means,
        mean,
        std_error,
        n_samples: actual,
    })
}

fn validate_insertions(grid: &Grid, insertions: &[(Complex64, f64)]) -> Result<()> {
    if insertions.len() < 3 {
        return Err(LiouvilleError::Condition(format!(
            "probabilistic correlations need n >= 3 insertions, got {}",
            insertions.len()
        )));
    }
    for (i, &(zi, _)) in insertions.iter().enumerate() {
        for &(zj, _) in insertions.iter().skip(i + 1) {
            if (zi - zj).norm() < 1e-9 {
                return Err(LiouvilleError::Condition(format!(
                    "insertions must be pairwise distinct; {zi} repeats"
                )));
            }
        }
        let t = zi.norm().ln().abs();
        if t > grid.config.t_max - 2.0 * grid.config.dt {
            return Err(LiouvilleError::Condition(format!(
                "insertion {zi} outside the resolved radial range (|ln r| <= {})",
                grid.config.t_max - 2.0 * grid.config.dt
            )));
        }
        // Off-grid: keep a safe distance from the nearest cell midpoint so
        // the singular kernels stay finite.
        let nearest = nearest_cell_center(grid, zi);
        if (zi - nearest).norm() < 1e-9 {
            return Err(LiouvilleError::Condition(format!(
                "insertion {zi} coincides with a grid cell midpoint"
            )));
        }
    }
    Ok(())
}

fn nearest_cell_center(grid: &Grid, z: Complex64) -> Complex64 {
    let r = z.norm();
    let hemisphere = if r <= 1.0 {
        Hemisphere::Inner
    } else {
        Hemisphere::Outer
    };
    let t = r.ln().abs();
    let dt = grid.config.dt;
    let level = ((t / dt - 0.5).round().max(0.0) as usize).min(grid.n_radial - 1);
    let d_theta = 2.0 * std::f64::consts::PI / grid.n_theta() as f64;
    let theta = z.arg().rem_euclid(2.0 * std::f64::consts::PI);
    let k = ((theta / d_theta - 0.5).round().max(0.0) as usize) % grid.n_theta();
    grid.cell_center(hemisphere, level, k)
}

/// GMC weight of one grid cell under a materialized sample:
/// e^{γ X(midpoint) − (γ²/2) Var_N(midpoint)} · area / |z|₊⁴.
pub fn gmc_weight(
    grid: &Grid,
    sample: &GffSample,
    gamma: f64,
    hemisphere: Hemisphere,
    level: usize,
    k: usize,
) -> f64 {
    let x = sample.field(hemisphere, level, k);
    let (area, ln_zplus) = match hemisphere {
        Hemisphere::Inner => (grid.cell_area_inner[level], 0.0),
        Hemisphere::Outer => (grid.cell_area_outer[level], grid.t_mid[level]),
    };
    (gamma * x - gamma * gamma / 2.0 * grid.var_level[level]).exp() * area
        * (-4.0 * ln_zplus).exp()
}

/// Monte Carlo mean of the total chaos mass over the resolved region,
/// with its standard error; E equals [`expected_mass`] exactly at every
/// mode cutoff (martingale normalization).
pub fn total_mass_mc(
    gamma: f64,
    n_samples: u64,
    seed: u64,
    config: GmcConfig,
) -> Result<(f64, f64)> {
    let grid = Grid::new(config)?;
    let factors = build_factors(&grid, &[], gamma);
    // s = −1 turns the negative-moment machinery into a plain mean of Z.
    let run = run_batches(&grid, &factors, gamma, -1.0, n_samples, seed, config.batches, 0)?;
    Ok((run.mean, run.std_error))
}

/// ∫ dz/|z|₊⁴ over the resolved annulus e^{−t_max} ≤ |z| ≤ e^{t_max}.
pub fn expected_mass(config: &GmcConfig) -> f64 {
    // Inner: π(1 − e^{−2 t_max}); outer mirrors it.
    2.0 * std::f64::consts::PI * (1.0 - (-2.0 * config.t_max).exp())
}

/// The probabilistic n-point correlation via
/// γ⁻¹ ∏_{j<j′} |z_j−z_{j′}|^{−α_j α_{j′}} μ^{−s} Γ(s) E[Z^{−s}],
/// s = (Σα − 2Q)/γ, Z = ∫ ∏ (|x|₊/|x−z_i|)^{γα_i} M_γ(dx).
pub fn correlation_mc(
    insertions: &[(Complex64, f64)],
    params: &LiouvilleParams,
    n_samples: u64,
    seed: u64,
    config: GmcConfig,
) -> Result<GmcEstimate> {
    correlation_mc_shifted(insertions, params, n_samples, seed, config, 0)
}

fn correlation_mc_shifted(
    insertions: &[(Complex64, f64)],
    params: &LiouvilleParams,
    n_samples: u64,
    seed: u64,
    config: GmcConfig,
    angular_shift: usize,
) -> Result<GmcEstimate> {
    let grid = Grid::new(config)?;
    let alphas: Vec<f64> = insertions.iter().map(|&(_, a)| a).collect();
    let report = seiberg_check(&alphas, params);
    if !report.passes {
        return Err(LiouvilleError::SeibergViolation(format!(
            "sum margin {}, individual margins {:?}",
            report.sum_margin, report.individual_margins
        )));
    }
    validate_insertions(&grid, insertions)?;
    let gamma = params.gamma();
    let s = (alphas.iter().sum::<f64>() - 2.0 * params.q()) / gamma;
    if s <= 0.0 {
        return Err(LiouvilleError::Condition(format!(
            "moment exponent s = {s} must be positive (Gamma pole otherwise)"
        )));
    }
    let factors = build_factors(&grid, insertions, gamma);
    let run = run_batches(
        &grid,
        &factors,
        gamma,
        s,
        n_samples,
        seed,
        config.batches,
        angular_shift,
    )?;

    let mut ln_pref = -gamma.ln() - s * params.mu().ln();
    ln_pref += log_gamma(Complex64::new(s, 0.0))?.re;
    for (i, &(zi, ai)) in insertions.iter().enumerate() {
        for &(zj, aj) in insertions.iter().skip(i + 1) {
            ln_pref -= ai * aj * (zi - zj).norm().ln();
        }
    }
    let prefactor = ln_pref.exp();
    Ok(GmcEstimate {
        value: prefactor * run.mean,
        std_error: prefactor * run.std_error,
        n_samples: run.n_samples,
        seed,
        gamma,
        mu: params.mu(),
        s_exponent: s,
        prefactor,
        mean_neg_moment: run.mean,
        neg_moment_std_error: run.std_error,
        batch_values: run.batch_means.iter().map(|&m| prefactor * m).collect(),
        insertions: insertions.iter().map(|&(z, a)| (z.re, z.im, a)).collect(),
        config,
    })
}

/// Möbius map ψ(z) = (az + b)/(cz + d), normalized to ad − bc = 1.
#[derive(Debug, Clone, Copy)]
pub struct MobiusMap {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl MobiusMap {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let det = a * d - b * c;
        if (det - 1.0).norm() > 1e-12 {
            return Err(LiouvilleError::InvalidParameter(format!(
                "Moebius map requires ad - bc = 1, got {det}"
            )));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn identity() -> Self {
        Self {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
        }
    }

    /// z ↦ e^{iθ} z.
    pub fn rotation(theta: f64) -> Self {
        Self {
            a: Complex64::from_polar(1.0, theta / 2.0),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::from_polar(1.0, -theta / 2.0),
        }
    }

    /// z ↦ λ z (λ > 0).
    pub fn dilation(lambda: f64) -> Self {
        Self {
            a: Complex64::new(lambda.sqrt(), 0.0),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0 / lambda.sqrt(), 0.0),
        }
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    /// ψ′(z) = 1/(cz + d)² for ad − bc = 1.
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let den = self.c * z + self.d;
        1.0 / (den * den)
    }

    /// A pure rotation by an exact multiple of the angular grid step maps
    /// the grid onto itself.
    fn grid_rotation_cells(&self, n_theta: usize) -> Option<usize> {
        if self.b.norm() > 1e-14 || self.c.norm() > 1e-14 {
            return None;
        }
        let ratio = self.a / self.d;
        if (ratio.norm() - 1.0).abs() > 1e-12 {
            return None;
        }
        let d_theta = 2.0 * std::f64::consts::PI / n_theta as f64;
        let cells = ratio.arg().rem_euclid(2.0 * std::f64::consts::PI) / d_theta;
        let rounded = cells.round();
        ((cells - rounded).abs() < 1e-9).then(|| rounded as usize % n_theta)
    }
}

/// Covariance check of the estimator under a Möbius map.
#[derive(Debug, Clone, Serialize)]
pub struct MobiusReport {
    pub base: GmcEstimate,
    pub mapped: GmcEstimate,
    /// ∏ |ψ′(z_i)|^{−2Δ_{α_i}}.
    pub jacobian: f64,
    /// |mapped − jacobian·base|.
    pub residual: f64,
    pub relative_residual: f64,
    /// Combined standard error √((J·σ_base)² + σ_mapped²) of the two runs.
    pub sigma: f64,
    /// residual / sigma: the headline "within 3 combined standard errors"
    /// figure.
    pub sigmas: f64,
    /// Standard error of the paired (shared-seed) batch differences; much
    /// smaller than `sigma` because the runs share their field samples.
    pub sigma_paired: f64,
    pub sigmas_paired: f64,
    /// Set when the map was recognized as a grid rotation and evaluated
    /// through the exact field permutation.
    pub exact_rotation: bool,
}

/// Compares the estimate at ψ(z_i) against ∏|ψ′(z_i)|^{−2Δ}·(estimate at
/// z_i), sharing the field samples between the two runs. Grid-multiple
/// rotations are exact (the rotated field is a permutation of the same
/// sample); other maps are statistical and reported in units of the paired
/// batch standard error.
pub fn mobius_check(
    insertions: &[(Complex64, f64)],
    map: &MobiusMap,
    params: &LiouvilleParams,
    n_samples: u64,
    seed: u64,
    config: GmcConfig,
) -> Result<MobiusReport> {
    let base = correlation_mc(insertions, params, n_samples, seed, config)?;
    let mapped_insertions: Vec<(Complex64, f64)> = insertions
        .iter()
        .map(|&(z, a)| (map.apply(z), a))
        .collect();
    let shift = map.grid_rotation_cells(config.n_theta);
    let mapped = correlation_mc_shifted(
        &mapped_insertions,
        params,
        n_samples,
        seed,
        config,
        shift.unwrap_or(0),
    )?;
    let mut jacobian = 1.0;
    for &(z, a) in insertions {
        let delta = params.delta(Complex64::new(a, 0.0)).re;
        jacobian *= map.derivative(z).norm().powf(-2.0 * delta);
    }
    let diffs: Vec<f64> = mapped
        .batch_values
        .iter()
        .zip(&base.batch_values)
        .map(|(&m, &b)| m - jacobian * b)
        .collect();
    let nb = diffs.len() as f64;
    let mean_diff = diffs.iter().sum::<f64>() / nb;
    let var = diffs
        .iter()
        .map(|d| (d - mean_diff) * (d - mean_diff))
        .sum::<f64>()
        / (nb - 1.0);
    let sigma_paired = (var / nb).sqrt();
    let sigma = ((jacobian * base.std_error).powi(2) + mapped.std_error.powi(2)).sqrt();
    let residual = (mapped.value - jacobian * base.value).abs();
    Ok(MobiusReport {
        relative_residual: residual / (jacobian * base.value).abs(),
        residual,
        sigma,
        sigmas: if sigma > 0.0 { residual / sigma } else { 0.0 },
        sigma_paired,
        sigmas_paired: if sigma_paired > 0.0 {
            residual / sigma_paired
        } else {
            0.0
        },
        exact_rotation: shift.is_some(),
        jacobian,
        base,
        mapped,
    })
}

/// Three-point comparison against (1/2)·C^DOZZ.
#[derive(Debug, Clone, Serialize)]
pub struct DozzComparison {
    pub estimate: GmcEstimate,
    /// (1/2) C^DOZZ ∏_{i<j} |w_i−w_j|^{2(Δ_k−Δ_i−Δ_j)}.
    pub predicted: f64,
    pub relative_difference: f64,
    /// Statistical error combined (in quadrature) with the coarse-grid
    /// discretization delta.
    pub sigma_combined: f64,
    pub z_score: f64,
    pub discretization_delta: f64,
}

/// Runs the 3-point estimator and compares with the exact DOZZ prediction
/// at the same positions. The discretization scale is estimated by a
/// shared-seed run on the half-resolution grid.
pub fn compare_dozz(
    positions: [Complex64; 3],
    alphas: [f64; 3],
    params: &LiouvilleParams,
    n_samples: u64,
    seed: u64,
    config: GmcConfig,
) -> Result<DozzComparison> {
    let insertions: Vec<(Complex64, f64)> = positions
        .iter()
        .zip(alphas.iter())
        .map(|(&z, &a)| (z, a))
        .collect();
    let estimate = correlation_mc(&insertions, params, n_samples, seed, config)?;
    let coarse = correlation_mc(&insertions, params, n_samples, seed, config.coarsened())?;
    let discretization_delta = (coarse.value - estimate.value).abs();

    let c = dozz(
        Complex64::new(alphas[0], 0.0),
        Complex64::new(alphas[1], 0.0),
        Complex64::new(alphas[2], 0.0),
        params,
    )?;
    let deltas: Vec<f64> = alphas
        .iter()
        .map(|&a| params.delta(Complex64::new(a, 0.0)).re)
        .collect();
    let mut predicted = 0.5 * c.re;
    for i in 0..3 {
        for j in (i + 1)..3 {
            let k = 3 - i - j;
            let exponent = 2.0 * (deltas[k] - deltas[i] - deltas[j]);
            predicted *= (positions[i] - positions[j]).norm().powf(exponent);
        }
    }
    let sigma_combined = (estimate.std_error.powi(2) + discretization_delta.powi(2)).sqrt();
    let diff = (estimate.value - predicted).abs();
    Ok(DozzComparison {
        relative_difference: diff / predicted.abs(),
        z_score: diff / sigma_combined,
        sigma_combined,
        discretization_delta,
        predicted,
        estimate,
    })
}
