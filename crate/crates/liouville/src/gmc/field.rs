//! Truncated sphere GFF sampling on the two-hemisphere polar grid.

use std::sync::Arc;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::{Fft, FftDirection, FftPlanner};

use super::GmcConfig;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hemisphere {
    /// |z| ≤ 1, z = e^{−t+iθ}.
    Inner,
    /// |z| ≥ 1, z = e^{t+iθ}.
    Outer,
}

/// Precomputed grid geometry and sampling tables shared by all samples.
pub struct Grid {
    pub config: GmcConfig,
    pub n_radial: usize,
    /// Radial midpoints t_j = (j + 1/2)·dt.
    pub t_mid: Vec<f64>,
    /// Angular midpoints θ_k = (k + 1/2)·Δθ.
    pub theta_mid: Vec<f64>,
    /// Exact polar cell area at level j of the inner hemisphere
    /// (Δθ/2)(e^{−2jdt} − e^{−2(j+1)dt}); the outer mirror has area
    /// (Δθ/2)(e^{2(j+1)dt} − e^{2jdt}).
    pub cell_area_inner: Vec<f64>,
    pub cell_area_outer: Vec<f64>,
    /// Exact truncated field variance at t_mid[j]: t + Σ_{n≤N} 1/n.
    pub var_level: Vec<f64>,
    rho: Vec<f64>,
    step_sigma: Vec<f64>,
    first_sigma: Vec<f64>,
    first_decay: Vec<f64>,
    twist: Vec<Complex64>,
    fft: Arc<dyn Fft<f64>>,
}

impl Grid {
    pub fn new(config: GmcConfig) -> Result<Self> {
        config.validate()?;
        let n = config.n_modes;
        let m = config.n_theta;
        let dt = config.dt;
        let n_radial = (config.t_max / dt).round() as usize;
        let t0 = dt / 2.0;
        let t_mid: Vec<f64> = (0..n_radial).map(|j| t0 + j as f64 * dt).collect();
        let d_theta = 2.0 * std::f64::consts::PI / m as f64;
        let theta_mid: Vec<f64> = (0..m).map(|k| (k as f64 + 0.5) * d_theta).collect();
        let harmonic: f64 = (1..=n).map(|k| 1.0 / k as f64).sum();
        let var_level = t_mid.iter().map(|&t| t + harmonic).collect();
        let cell_area_inner = (0..n_radial)
            .map(|j| {
                let lo = (-2.0 * (j as f64 + 1.0) * dt).exp();
                let hi = (-2.0 * j as f64 * dt).exp();
                d_theta / 2.0 * (hi - lo)
            })
            .collect();
        let cell_area_outer = (0..n_radial)
            .map(|j| {
                let lo = (2.0 * j as f64 * dt).exp();
                let hi = (2.0 * (j as f64 + 1.0) * dt).exp();
                d_theta / 2.0 * (hi - lo)
            })
            .collect();
        let rho: Vec<f64> = (1..=n).map(|k| (-(k as f64) * dt).exp()).collect();
        let step_sigma: Vec<f64> = (1..=n)
            .map(|k| ((1.0 - (-2.0 * k as f64 * dt).exp()) / (4.0 * k as f64)).sqrt())
            .collect();
        let first_sigma: Vec<f64> = (1..=n)
            .map(|k| ((1.0 - (-2.0 * k as f64 * t0).exp()) / (4.0 * k as f64)).sqrt())
            .collect();
        let first_decay: Vec<f64> = (1..=n).map(|k| (-(k as f64) * t0).exp()).collect();
        let twist: Vec<Complex64> = (0..=n)
            .map(|k| Complex64::from_polar(1.0, k as f64 * d_theta / 2.0))
            .collect();
        let fft = FftPlanner::new().plan_fft(m, FftDirection::Inverse);
        Ok(Self {
            config,
            n_radial,
            t_mid,
            theta_mid,
            cell_area_inner,
            cell_area_outer,
            var_level,
            rho,
            step_sigma,
            first_sigma,
            first_decay,
            twist,
            fft,
        })
    }

    pub fn n_theta(&self) -> usize {
        self.config.n_theta
    }

    /// Cell midpoint in the plane.
    pub fn cell_center(&self, hemisphere: Hemisphere, level: usize, k: usize) -> Complex64 {
        let t = self.t_mid[level];
        let r = match hemisphere {
            Hemisphere::Inner => (-t).exp(),
            Hemisphere::Outer => t.exp(),
        };
        Complex64::from_polar(r, self.theta_mid[k])
    }

    /// Deterministic per-sample RNG: one ChaCha stream per sample index.
    fn rng_for(&self, seed: u64, sample_index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(sample_index);
        rng
    }

    /// Draws one joint field sample and streams it level by level:
    /// `visit(hemisphere, level, field_row)` with `field_row[k]` the field
    /// at the cell midpoint (level, θ_k). Rows arrive inner first, then
    /// outer, levels in increasing t. `angular_shift` rotates the field by
    /// that many grid cells (exact grid rotation).
    pub fn stream_sample<F: FnMut(Hemisphere, usize, &[f64])>(
        &self,
        seed: u64,
        sample_index: u64,
        angular_shift: usize,
        scratch: &mut SampleScratch,
        mut visit: F,
    ) {
        let n = self.config.n_modes;
        let m = self.config.n_theta;
        let mut rng = self.rng_for(seed, sample_index);
        let normal = StandardNormal;

        // Boundary modes φ_n = (x_n + i y_n)/(2√n).
        for k in 0..n {
            let x: f64 = normal.sample(&mut rng);
            let y: f64 = normal.sample(&mut rng);
            scratch.boundary[k] = Complex64::new(x, y) / (2.0 * ((k + 1) as f64).sqrt());
        }

        for hemisphere in [Hemisphere::Inner, Hemisphere::Outer] {
            // Harmonic-extension coefficients start at φ_n e^{−n t_0} and
            // decay by e^{−n dt} per level; the Dirichlet chains start at 0.
            for k in 0..n {
                scratch.pphi[k] = scratch.boundary[k] * self.first_decay[k];
                scratch.chain[k] = Complex64::new(0.0, 0.0);
            }
            let mut bm = 0.0f64;
            for level in 0..self.n_radial {
                let (bm_sigma, sigmas): (f64, &[f64]) = if level == 0 {
                    ((self.config.dt / 2.0).sqrt(), &self.first_sigma)
                } else {
                    (self.config.dt.sqrt(), &self.step_sigma)
                };
                let bump: f64 = normal.sample(&mut rng);
                bm += bm_sigma * bump;
                for k in 0..n {
                    let re: f64 = normal.sample(&mut rng);
                    let im: f64 = normal.sample(&mut rng);
                    if level > 0 {
                        scratch.pphi[k] *= self.rho[k];
                        scratch.chain[k] = scratch.chain[k] * self.rho[k]
                            + Complex64::new(sigmas[k] * re, sigmas[k] * im);
                    } else {
                        scratch.chain[k] = Complex64::new(sigmas[k] * re, sigmas[k] * im);
                    }
                }
                // Assemble the Hermitian spectrum at midpoint angles and
                // synthesize by inverse FFT.
                scratch.spec.fill(Complex64::new(0.0, 0.0));
                scratch.spec[0] = Complex64::new(bm, 0.0);
                for k in 0..n {
                    let v = (scratch.pphi[k] + scratch.chain[k]) * self.twist[k + 1];
                    scratch.spec[k + 1] += v;
                    scratch.spec[(m - (k + 1)) % m] += v.conj();
                }
                self.fft
                    .process_with_scratch(&mut scratch.spec, &mut scratch.fft_scratch);
                if angular_shift == 0 {
                    for k in 0..m {
                        scratch.row[k] = scratch.spec[k].re;
                    }
                } else {
                    for k in 0..m {
                        scratch.row[k] = scratch.spec[(k + m - angular_shift) % m].re;
                    }
                }
                visit(hemisphere, level, &scratch.row);
            }
        }
    }

    pub fn scratch(&self) -> SampleScratch {
        let m = self.config.n_theta;
        SampleScratch {
            boundary: vec![Complex64::new(0.0, 0.0); self.config.n_modes],
            pphi: vec![Complex64::new(0.0, 0.0); self.config.n_modes],
            chain: vec![Complex64::new(0.0, 0.0); self.config.n_modes],
            spec: vec![Complex64::new(0.0, 0.0); m],
            fft_scratch: vec![Complex64::new(0.0, 0.0); self.fft.get_inplace_scratch_len()],
            row: vec![0.0; m],
        }
    }
}

/// Reusable per-worker buffers for one sample synthesis.
pub struct SampleScratch {
    boundary: Vec<Complex64>,
    pphi: Vec<Complex64>,
    chain: Vec<Complex64>,
    spec: Vec<Complex64>,
    fft_scratch: Vec<Complex64>,
    row: Vec<f64>,
}

/// One materialized joint sample of the truncated sphere field.
pub struct GffSample {
    pub seed: u64,
    pub sample_index: u64,
    pub config: GmcConfig,
    /// Circle modes φ_1..φ_N of this sample.
    pub boundary: Vec<Complex64>,
    inner: Vec<f64>,
    outer: Vec<f64>,
    n_theta: usize,
}

impl GffSample {
    /// Field value at cell (hemisphere, level, k).
    pub fn field(&self, hemisphere: Hemisphere, level: usize, k: usize) -> f64 {
        let idx = level * self.n_theta + k;
        match hemisphere {
            Hemisphere::Inner => self.inner[idx],
            Hemisphere::Outer => self.outer[idx],
        }
    }
}

/// Materializes one sample (deterministic in (seed, sample_index)).
pub fn sample_gff(grid: &Grid, seed: u64, sample_index: u64) -> GffSample {
    let m = grid.n_theta();
    let mut inner = vec![0.0; grid.n_radial * m];
    let mut outer = vec![0.0; grid.n_radial * m];
    let mut boundary = Vec::new();
    let mut scratch = grid.scratch();
    grid.stream_sample(seed, sample_index, 0, &mut scratch, |h, level, row| {
        let dst = match h {
            Hemisphere::Inner => &mut inner,
            Hemisphere::Outer => &mut outer,
        };
        dst[level * m..(level + 1) * m].copy_from_slice(row);
    });
    boundary.extend_from_slice(&scratch.boundary);
    GffSample {
        seed,
        sample_index,
        config: grid.config,
        boundary,
        inner,
        outer,
        n_theta: m,
    }
}

/// Exact covariance of the truncated field between two off-circle points:
/// same hemisphere  min(t,t′) + Σ_{n≤N} cos(nΔθ) e^{−n|t−t′|}/n,
/// opposite sides   Σ_{n≤N} cos(nΔθ) e^{−n(t+t′)}/n,
/// with t = |ln r|. This is the N-mode truncation of
/// G(z,z′) = ln 1/|z−z′| + ln|z|₊ + ln|z′|₊.
pub fn truncated_covariance(z1: Complex64, z2: Complex64, n_modes: usize) -> f64 {
    let (t1, in1) = radial_coord(z1);
    let (t2, in2) = radial_coord(z2);
    let dtheta = z1.arg() - z2.arg();
    if in1 == in2 {
        let mut acc = t1.min(t2);
        for n in 1..=n_modes {
            let nf = n as f64;
            acc += (nf * dtheta).cos() * (-nf * (t1 - t2).abs()).exp() / nf;
        }
        acc
    } else {
        let mut acc = 0.0;
        for n in 1..=n_modes {
            let nf = n as f64;
            acc += (nf * dtheta).cos() * (-nf * (t1 + t2)).exp() / nf;
        }
        acc
    }
}

/// Exact pointwise variance of the truncated field: t + Σ_{n≤N} 1/n.
pub fn truncated_variance(z: Complex64, n_modes: usize) -> f64 {
    let (t, _) = radial_coord(z);
    t + (1..=n_modes).map(|n| 1.0 / n as f64).sum::<f64>()
}

fn radial_coord(z: Complex64) -> (f64, bool) {
    let r = z.norm();
    if r <= 1.0 {
        (-r.ln(), true)
    } else {
        (r.ln(), false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn small_config() -> GmcConfig {
        GmcConfig {
            n_modes: 8,
            n_theta: 16,
            dt: 0.125,
            t_max: 2.0,
            batches: 8,
        }
    }

    #[test]
    fn determinism_bit_identical() {
        let grid = Grid::new(small_config()).unwrap();
        let a = sample_gff(&grid, 42, 7);
        let b = sample_gff(&grid, 42, 7);
        assert_eq!(a.inner, b.inner);
        assert_eq!(a.outer, b.outer);
        let c = sample_gff(&grid, 42, 8);
        assert_ne!(a.inner, c.inner);
    }

    #[test]
    fn angular_shift_is_an_exact_row_rotation() {
        let grid = Grid::new(small_config()).unwrap();
        let base = sample_gff(&grid, 5, 0);
        let m = grid.n_theta();
        let shift = 5usize;
        let mut rotated = vec![0.0; grid.n_radial * m];
        let mut scratch = grid.scratch();
        grid.stream_sample(5, 0, shift, &mut scratch, |h, level, row| {
            if h == Hemisphere::Inner {
                rotated[level * m..(level + 1) * m].copy_from_slice(row);
            }
        });
        for level in 0..grid.n_radial {
            for k in 0..m {
                assert_eq!(
                    rotated[level * m + k],
                    base.field(Hemisphere::Inner, level, (k + m - shift) % m),
                    "rotation must be a bit-exact permutation"
                );
            }
        }
    }

    #[test]
    fn fft_synthesis_matches_direct_mode_sum() {
        let grid = Grid::new(small_config()).unwrap();
        let s = sample_gff(&grid, 9, 3);
        // Reconstruct the field at one cell directly from the recurrences'
        // implied coefficients: resample and accumulate by hand.
        let n = grid.config.n_modes;
        let m = grid.n_theta();
        // Derive the mode coefficients at each level by a parallel manual
        // evolution with the identical RNG stream.
        use rand::SeedableRng;
        use rand_distr::Distribution;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        rng.set_stream(3);
        let normal = rand_distr::StandardNormal;
        let mut boundary = vec![Complex64::new(0.0, 0.0); n];
        for k in 0..n {
            let x: f64 = normal.sample(&mut rng);
            let y: f64 = normal.sample(&mut rng);
            boundary[k] = Complex64::new(x, y) / (2.0 * ((k + 1) as f64).sqrt());
        }
        // Inner hemisphere, three levels.
        let mut pphi: Vec<Complex64> = (0..n).map(|k| boundary[k] * grid.first_decay[k]).collect();
        let mut chain = vec![Complex64::new(0.0, 0.0); n];
        let mut bm = 0.0;
        for level in 0..3usize {
            let bump: f64 = normal.sample(&mut rng);
            bm += if level == 0 {
                (grid.config.dt / 2.0).sqrt() * bump
            } else {
                grid.config.dt.sqrt() * bump
            };
            for k in 0..n {
                let re: f64 = normal.sample(&mut rng);
                let im: f64 = normal.sample(&mut rng);
                if level > 0 {
                    pphi[k] *= grid.rho[k];
                    chain[k] = chain[k] * grid.rho[k]
                        + Complex64::new(grid.step_sigma[k] * re, grid.step_sigma[k] * im);
                } else {
                    chain[k] = Complex64::new(grid.first_sigma[k] * re, grid.first_sigma[k] * im);
                }
            }
            for kk in [0usize, 3, 11] {
                let theta = grid.theta_mid[kk];
                let mut direct = bm;
                for k in 0..n {
                    let c = pphi[k] + chain[k];
                    direct += 2.0 * (c * Complex64::from_polar(1.0, (k + 1) as f64 * theta)).re;
                }
                assert_relative_eq!(
                    direct,
                    s.field(Hemisphere::Inner, level, kk),
                    epsilon = 1e-10,
                    max_relative = 1e-10
                );
            }
        }
        let _ = m;
    }

    #[test]
    fn boundary_mode_variances() {
        // Var[Re φ_n] = 1/(4n) over many samples, within 5 sigma.
        let grid = Grid::new(small_config()).unwrap();
        let samples = 4000;
        let mut sums = vec![0.0f64; grid.config.n_modes];
        let mut sums2 = vec![0.0f64; grid.config.n_modes];
        for i in 0..samples {
            let s = sample_gff(&grid, 1234, i);
            for (k, b) in s.boundary.iter().enumerate() {
                sums[k] += b.re;
                sums2[k] += b.re * b.re;
            }
        }
        for k in 0..grid.config.n_modes {
            let mean = sums[k] / samples as f64;
            let var = sums2[k] / samples as f64 - mean * mean;
            let expected = 1.0 / (4.0 * (k + 1) as f64);
            // Var of the sample variance of a Gaussian ≈ 2σ⁴/n.
            let sd = (2.0 * expected * expected / samples as f64).sqrt();
            assert!(
                (var - expected).abs() < 5.0 * sd,
                "mode {}: var {var} vs {expected}",
                k + 1
            );
            assert!(mean.abs() < 5.0 * (expected / samples as f64).sqrt());
        }
    }

    #[test]
    fn empirical_covariance_matches_truncated_oracle() {
        // Covariance at |z| = 0.5 and |z′| = 0.7 (same hemisphere) and an
        // inner/outer pair, against the analytic truncated kernel.
        let config = GmcConfig {
            n_modes: 8,
            n_theta: 16,
            dt: 1.0 / 16.0,
            t_max: 1.5,
            batches: 8,
        };
        let grid = Grid::new(config).unwrap();
        // Pick grid cells nearest the requested radii.
        let level_of = |r: f64| -> usize {
            let t = -(r.ln());
            ((t / config.dt - 0.5).round().max(0.0) as usize).min(grid.n_radial - 1)
        };
        let (l1, k1) = (level_of(0.5), 2usize);
        let (l2, k2) = (level_of(0.7), 9usize);
        let z1 = grid.cell_center(Hemisphere::Inner, l1, k1);
        let z2 = grid.cell_center(Hemisphere::Inner, l2, k2);
        let z3 = grid.cell_center(Hemisphere::Outer, l2, k2);
        let samples = 20_000;
        let (mut s12, mut s13) = (0.0, 0.0);
        let (mut sq12, mut sq13) = (0.0, 0.0);
        for i in 0..samples {
            let s = sample_gff(&grid, 77, i);
            let (a, b, c) = (
                s.field(Hemisphere::Inner, l1, k1),
                s.field(Hemisphere::Inner, l2, k2),
                s.field(Hemisphere::Outer, l2, k2),
            );
            s12 += a * b;
            sq12 += (a * b) * (a * b);
            s13 += a * c;
            sq13 += (a * c) * (a * c);
        }
        let n = samples as f64;
        for (sum, sq, z, w) in [(s12, sq12, z1, z2), (s13, sq13, z1, z3)] {
            let mean = sum / n;
            let var = sq / n - mean * mean;
            let sigma = (var / n).sqrt();
            let oracle = truncated_covariance(z, w, config.n_modes);
            assert!(
                (mean - oracle).abs() <= 3.0 * sigma,
                "cov({z}, {w}) = {mean} vs oracle {oracle} (sigma {sigma})"
            );
        }
    }

    #[test]
    fn truncated_variance_is_t_plus_harmonic() {
        let z = Complex64::from_polar(0.6, 1.1);
        let v = truncated_variance(z, 8);
        let harmonic: f64 = (1..=8).map(|n| 1.0 / n as f64).sum();
        assert_relative_eq!(v, -(0.6f64.ln()) + harmonic, max_relative = 1e-14);
        // Variance equals covariance at coincident points.
        assert_relative_eq!(
            v,
            truncated_covariance(z, z, 8),
            max_relative = 1e-14
        );
    }
}
