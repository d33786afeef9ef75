//! Exact Shapovalov forms of the Virasoro algebra.
//!
//! Words in the generators are reduced against a highest-weight state by
//! bubbling positive modes rightward with
//! [L_n, L_m] = (n−m) L_{n+m} + (c/12)(n³−n) δ_{n,−m},
//! L_n|hw⟩ = 0 for n > 0 and L_0|hw⟩ = Δ|hw⟩. All arithmetic is exact:
//! entries are polynomials in (Δ, c) with rational coefficients, evaluated
//! numerically only at the module boundary.

mod poly;

pub use poly::PolyDC;

use std::collections::{BTreeMap, HashMap};

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::params::LiouvilleParams;
use crate::partitions::{partition_count, young_diagrams, YoungDiagram};
use crate::{LiouvilleError, Result};

/// A word L_{t_1} ⋯ L_{t_k} applied to the highest-weight state, with the
/// rightmost generator acting first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirasoroWord {
    indices: Vec<i64>,
}

impl VirasoroWord {
    pub fn new(indices: Vec<i64>) -> Self {
        Self { indices }
    }

    pub fn indices(&self) -> &[i64] {
        &self.indices
    }

    /// Total mode number Σ t_i; words with positive total annihilate the
    /// highest-weight state.
    pub fn total(&self) -> i64 {
        self.indices.iter().sum()
    }
}

/// Canonical creation monomial: non-increasing positive parts q with the
/// meaning L_{−q_1} L_{−q_2} ⋯ |hw⟩.
type Mono = Vec<u32>;

/// Linear combination of canonical monomials with (Δ, c)-polynomial
/// coefficients.
type State = BTreeMap<Mono, PolyDC>;

/// Word-reduction engine with memoization on (generator, canonical
/// monomial). Per-worker instances keep the memo table thread-local;
/// results are deterministic regardless of schedule.
#[derive(Default)]
pub struct ReductionEngine {
    memo: HashMap<(i64, Mono), State>,
}

impl ReductionEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// ⟨hw| L_{t_1} ⋯ L_{t_k} |hw⟩ as an exact polynomial in (Δ, c).
    pub fn reduce(&mut self, word: &VirasoroWord) -> PolyDC {
        let mut state: State = BTreeMap::new();
        state.insert(Vec::new(), PolyDC::one());
        for &t in word.indices.iter().rev() {
            state = self.apply_state(t, &state);
        }
        state.remove(&Vec::new()).unwrap_or_else(PolyDC::zero)
    }

    fn apply_state(&mut self, n: i64, state: &State) -> State {
        let mut out: State = BTreeMap::new();
        for (mono, coeff) in state {
            for (m, p) in self.apply_one(n, mono) {
                let contribution = &p * coeff;
                merge(&mut out, m, contribution);
            }
        }
        out
    }

    fn apply_one(&mut self, n: i64, mono: &[u32]) -> State {
        let key = (n, mono.to_vec());
        if let Some(s) = self.memo.get(&key) {
            return s.clone();
        }
        let result = self.compute_one(n, mono);
        self.memo.insert(key, result.clone());
        result
    }

    fn compute_one(&mut self, n: i64, mono: &[u32]) -> State {
        let mut out: State = BTreeMap::new();
        if n == 0 {
            // L_0 on a level-ℓ descendant: (Δ + ℓ) × itself.
            let level: i64 = mono.iter().map(|&q| i64::from(q)).sum();
            let coeff = &PolyDC::delta() + &PolyDC::from_i64(level);
            out.insert(mono.to_vec(), coeff);
            return out;
        }
        if n < 0 {
            let a = (-n) as u32;
            if mono.first().is_none_or(|&m0| a >= m0) {
                let mut m = Vec::with_capacity(mono.len() + 1);
                m.push(a);
                m.extend_from_slice(mono);
                out.insert(m, PolyDC::one());
                return out;
            }
            // L_{−a} L_{−m0} X = L_{−m0} L_{−a} X + (m0 − a) L_{−(a+m0)} X.
            let m0 = mono[0];
            let rest = &mono[1..];
            let inner = self.apply_one(n, rest);
            let reattached = self.apply_state(-i64::from(m0), &inner);
            for (m, p) in reattached {
                merge(&mut out, m, p);
            }
            let merged = self.apply_one(-i64::from(a + m0), rest);
            let factor = PolyDC::from_i64(i64::from(m0) - i64::from(a));
            for (m, p) in merged {
                merge(&mut out, m, &p * &factor);
            }
            return out;
        }
        // n > 0: annihilation against the vacuum, commutation otherwise.
        let Some(&m0) = mono.first() else {
            return out;
        };
        let rest = &mono[1..];
        // L_n L_{−m0} X = L_{−m0} L_n X + (n + m0) L_{n−m0} X
        //                + (c/12)(n³ − n) δ_{n,m0} X.
        let through = self.apply_one(n, rest);
        let reattached = self.apply_state(-i64::from(m0), &through);
        for (m, p) in reattached {
            merge(&mut out, m, p);
        }
        let commuted = self.apply_one(n - i64::from(m0), rest);
        let factor = PolyDC::from_i64(n + i64::from(m0));
        for (m, p) in commuted {
            merge(&mut out, m, &p * &factor);
        }
        if n == i64::from(m0) {
            let central = &PolyDC::central() * &PolyDC::rational(n * n * n - n, 12);
            merge(&mut out, rest.to_vec(), central);
        }
        out
    }
}

fn merge(state: &mut State, mono: Mono, coeff: PolyDC) {
    if coeff.is_zero() {
        return;
    }
    match state.entry(mono) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += &coeff;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// ⟨hw| word |hw⟩ with a fresh engine. Reuse a [`ReductionEngine`] when
/// reducing many words.
pub fn reduce_word(word: &VirasoroWord) -> PolyDC {
    ReductionEngine::new().reduce(word)
}

/// The word L_ν L_{−ν′} whose vacuum expectation is F(ν, ν′); the index
/// orders follow L_ν = L_{ν_1}⋯L_{ν_k} and L_{−ν′} = L_{−ν′_{k}}⋯L_{−ν′_1}.
pub fn shapovalov_word(nu: &YoungDiagram, nu_prime: &YoungDiagram) -> VirasoroWord {
    let mut indices: Vec<i64> = nu.parts().iter().map(|&p| i64::from(p)).collect();
    indices.extend(nu_prime.parts().iter().rev().map(|&p| -i64::from(p)));
    VirasoroWord::new(indices)
}

/// Level-N Gram matrix of Virasoro descendants, exact in (Δ, c), indexed by
/// [`young_diagrams`]`(N)` in its canonical order.
#[derive(Debug, Clone)]
pub struct ShapovalovMatrix {
    level: u32,
    diagrams: Vec<YoungDiagram>,
    entries: Vec<Vec<PolyDC>>,
}

impl ShapovalovMatrix {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn diagrams(&self) -> &[YoungDiagram] {
        &self.diagrams
    }

    pub fn dim(&self) -> usize {
        self.diagrams.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &PolyDC {
        &self.entries[i][j]
    }

    /// Numeric evaluation at complex (Δ, c).
    pub fn eval_complex(&self, delta: num_complex::Complex64, c: num_complex::Complex64) -> DMatrix<num_complex::Complex64> {
        DMatrix::from_fn(self.dim(), self.dim(), |i, j| {
            self.entries[i][j].eval_complex(delta, c)
        })
    }

    pub fn eval_f64(&self, delta: f64, c: f64) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim(), self.dim(), |i, j| self.entries[i][j].eval_f64(delta, c))
    }

    pub fn eval_rational(&self, delta: &BigRational, c: &BigRational) -> Vec<Vec<BigRational>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|p| p.eval_rational(delta, c)).collect())
            .collect()
    }

    /// JSON dump with diagram-labelled rows/columns and polynomial entries
    /// as {"i,j": "p/q"} monomial maps.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "level": self.level,
            "diagrams": self.diagrams.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "entries": self.entries.iter().map(|row| {
                row.iter().map(|p| serde_json::Value::Object(p.to_json_map())).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }
}

/// F(ν, ν′) for all level-N diagram pairs.
pub fn shapovalov_matrix(level: u32) -> ShapovalovMatrix {
    shapovalov_matrix_with(&mut ReductionEngine::new(), level)
}

pub fn shapovalov_matrix_with(engine: &mut ReductionEngine, level: u32) -> ShapovalovMatrix {
    let diagrams = young_diagrams(level);
    let entries: Vec<Vec<PolyDC>> = diagrams
        .iter()
        .map(|nu| {
            diagrams
                .iter()
                .map(|nu_prime| engine.reduce(&shapovalov_word(nu, nu_prime)))
                .collect()
        })
        .collect();
    ShapovalovMatrix {
        level,
        diagrams,
        entries,
    }
}

/// One Kac zero Δ_{r,s} and the determinant value found there.
#[derive(Debug, Clone, Serialize)]
pub struct KacZero {
    pub r: u32,
    pub s: u32,
    pub alpha_rs: f64,
    pub delta_rs: f64,
    /// |det F_N(Δ_{r,s})| evaluated in exact rational arithmetic.
    pub det_abs: f64,
    pub vanishes: bool,
}

/// Report of the Kac-determinant verification at one level.
#[derive(Debug, Clone, Serialize)]
pub struct KacReport {
    pub level: u32,
    pub gamma: f64,
    pub zeros: Vec<KacZero>,
    /// κ_N fitted at a generic rational Δ (exact; κ depends only on N).
    pub kappa: f64,
    pub kappa_exact: String,
    /// Relative residual of det F(Δ) − κ ∏ (Δ − Δ_{r,s})^{p(N−rs)} at a
    /// binary64 sample point.
    pub factorization_residual: f64,
    pub det_degree: u32,
    pub expected_degree: u32,
    pub passed: bool,
}

/// Evaluates det F_N at every Δ_{α_{r,s}} with rs ≤ N (exact rational
/// arithmetic; the determinant vanishes identically there), fits κ_N at a
/// generic Δ, and reports the residual of the Feigin–Fuchs factorization at
/// a binary64 sample.
pub fn kac_check(level: u32, params: &LiouvilleParams, tolerance: f64) -> KacReport {
    assert!(level >= 1, "kac_check needs level >= 1");
    let matrix = shapovalov_matrix(level);
    let gamma = BigRational::from_f64(params.gamma()).expect("finite gamma");
    let two = BigRational::from_integer(2.into());
    let q = &two / &gamma + &gamma / &two;
    let c = BigRational::one() + BigRational::from_integer(6.into()) * &q * &q;

    let delta_of = |alpha: &BigRational| -> BigRational {
        alpha / &two * (&q - alpha / &two)
    };

    let mut pairs = Vec::new();
    for r in 1..=level {
        for s in 1..=level {
            if r * s <= level {
                pairs.push((r, s));
            }
        }
    }

    let mut zeros = Vec::new();
    let mut expected_degree = 0u32;
    for &(r, s) in &pairs {
        let alpha = &q
            - BigRational::from_integer(BigInt::from(r)) * &gamma / &two
            - BigRational::from_integer(BigInt::from(s)) * &two / &gamma;
        let delta_rs = delta_of(&alpha);
        let det = det_rational(matrix.eval_rational(&delta_rs, &c));
        let det_abs = det.abs().to_f64().unwrap_or(f64::INFINITY);
        zeros.push(KacZero {
            r,
            s,
            alpha_rs: alpha.to_f64().unwrap(),
            delta_rs: delta_rs.to_f64().unwrap(),
            det_abs,
            vanishes: det_abs <= tolerance,
        });
        expected_degree += partition_count(level - r * s) as u32;
    }

    // κ_N from one generic Δ; exact, and independent of γ and c_L.
    let delta_g = BigRational::new(17.into(), 13.into());
    let det_g = det_rational(matrix.eval_rational(&delta_g, &c));
    let mut denom = BigRational::one();
    for &(r, s) in &pairs {
        let alpha = &q
            - BigRational::from_integer(BigInt::from(r)) * &gamma / &two
            - BigRational::from_integer(BigInt::from(s)) * &two / &gamma;
        let delta_rs = delta_of(&alpha);
        let diff = &delta_g - &delta_rs;
        for _ in 0..partition_count(level - r * s) {
            denom *= &diff;
        }
    }
    let kappa = &det_g / &denom;

    // Residual of the full factorization at a binary64 point away from the
    // roots.
    let delta_sample = 0.8375;
    let det_sample = det_f64(&matrix.eval_f64(delta_sample, params.c_l()));
    let mut predicted = kappa.to_f64().unwrap();
    for z in &zeros {
        let p = partition_count(level - z.r * z.s) as i32;
        predicted *= (delta_sample - z.delta_rs).powi(p);
    }
    let factorization_residual =
        (det_sample - predicted).abs() / det_sample.abs().max(predicted.abs()).max(1e-300);

    let det_degree = det_delta_degree(&matrix, &c);
    let passed = zeros.iter().all(|z| z.vanishes)
        && factorization_residual < 1e-8
        && det_degree == expected_degree;

    KacReport {
        level,
        gamma: params.gamma(),
        zeros,
        kappa: kappa.to_f64().unwrap(),
        kappa_exact: kappa.to_string(),
        factorization_residual,
        det_degree,
        expected_degree,
        passed,
    }
}

/// Exact determinant by Gaussian elimination over ℚ.
fn det_rational(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot_row) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot_row != col {
            m.swap(pivot_row, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pivot;
            for cc in col..n {
                let sub = &factor * &m[col][cc];
                m[r][cc] -= sub;
            }
        }
    }
    det
}

fn det_f64(m: &DMatrix<f64>) -> f64 {
    m.clone().lu().determinant()
}

/// Degree in Δ of det F_N (c held at an exact rational value), by exact
/// interpolation at integer points.
fn det_delta_degree(matrix: &ShapovalovMatrix, c: &BigRational) -> u32 {
    // Degree bound: sum over diagrams of their part counts.
    let bound: u32 = matrix.diagrams().iter().map(|d| d.parts().len() as u32).sum();
    let points: Vec<BigRational> = (0..=bound)
        .map(|i| BigRational::from_integer(BigInt::from(i)))
        .collect();
    let values: Vec<BigRational> = points
        .iter()
        .map(|x| det_rational(matrix.eval_rational(x, c)))
        .collect();
    // Newton divided differences; the degree is the index of the last
    // nonzero coefficient.
    let mut coeffs = values;
    let n = coeffs.len();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &coeffs[i] - &coeffs[i - 1];
            let den = &points[i] - &points[i - j];
            coeffs[i] = num / den;
        }
    }
    coeffs
        .iter()
        .rposition(|c| !c.is_zero())
        .map(|d| d as u32)
        .unwrap_or(0)
}

/// Numeric inverse of F at a spectrum-line weight, with its condition
/// number.
#[derive(Debug, Clone)]
pub struct ShapovalovInverse {
    pub matrix: DMatrix<f64>,
    pub condition: f64,
}

/// Inverts F_{Q+iP} at level N via a symmetric positive-definite
/// factorization. delta_p must be a spectrum-line weight ((Q²+P²)/4 with P
/// real), where F is positive definite.
pub fn invert_shapovalov(level: u32, delta_p: f64, c_l: f64) -> Result<ShapovalovInverse> {
    invert_shapovalov_of(&shapovalov_matrix(level), delta_p, c_l)
}

pub fn invert_shapovalov_of(
    matrix: &ShapovalovMatrix,
    delta_p: f64,
    c_l: f64,
) -> Result<ShapovalovInverse> {
    let m = matrix.eval_f64(delta_p, c_l);
    let chol = m.clone().cholesky().ok_or(LiouvilleError::NotPositiveDefinite {
        level: matrix.level() as usize,
        delta: delta_p,
        c_l,
    })?;
    let eigen = SymmetricEigen::new(m);
    let max = eigen.eigenvalues.iter().cloned().fold(f64::MIN, f64::max);
    let min = eigen.eigenvalues.iter().cloned().fold(f64::MAX, f64::min);
    Ok(ShapovalovInverse {
        matrix: chol.inverse(),
        condition: max / min,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn poly_eq(p: &PolyDC, q: &PolyDC) {
        assert!((p - q).is_zero(), "{p} != {q}");
    }

    #[test]
    fn single_commutators_match_hand_oracles() {
        // [L_1, L_{−1}] = 2 L_0 → ⟨L_1 L_{−1}⟩ = 2Δ.
        let p = reduce_word(&VirasoroWord::new(vec![1, -1]));
        poly_eq(&p, &PolyDC::delta().scale(&BigRational::from_integer(2.into())));
        // [L_2, L_{−2}] = 4 L_0 + (c/12)·6 → 4Δ + c/2.
        let p = reduce_word(&VirasoroWord::new(vec![2, -2]));
        let expected = &PolyDC::delta().scale(&BigRational::from_integer(4.into()))
            + &PolyDC::central().scale(&BigRational::new(1.into(), 2.into()));
        poly_eq(&p, &expected);
    }

    #[test]
    fn positive_total_words_annihilate() {
        for word in [
            vec![1],
            vec![2, -1],
            vec![1, 1, -1],
            vec![3, -1, -1],
            vec![1, 2, -2],
        ] {
            let w = VirasoroWord::new(word.clone());
            assert!(w.total() > 0);
            assert!(reduce_word(&w).is_zero(), "word {word:?} should vanish");
        }
    }

    #[test]
    fn words_with_zero_generator_reduce_too() {
        // L_1 L_0 L_{−1}|hw⟩ = (Δ+1)·2Δ.
        let p = reduce_word(&VirasoroWord::new(vec![1, 0, -1]));
        let d = PolyDC::delta();
        let expected =
            &(&d + &PolyDC::one()) * &d.scale(&BigRational::from_integer(2.into()));
        poly_eq(&p, &expected);
    }

    #[test]
    fn shapovalov_levels_zero_one_two() {
        let m0 = shapovalov_matrix(0);
        assert_eq!(m0.dim(), 1);
        poly_eq(m0.entry(0, 0), &PolyDC::one());

        let m1 = shapovalov_matrix(1);
        assert_eq!(m1.dim(), 1);
        poly_eq(
            m1.entry(0, 0),
            &PolyDC::delta().scale(&BigRational::from_integer(2.into())),
        );

        // Index order ((2), (1,1)).
        let m2 = shapovalov_matrix(2);
        assert_eq!(m2.diagrams()[0].to_string(), "2");
        assert_eq!(m2.diagrams()[1].to_string(), "1,1");
        let d = PolyDC::delta();
        let four_d_c2 = &d.scale(&BigRational::from_integer(4.into()))
            + &PolyDC::central().scale(&BigRational::new(1.into(), 2.into()));
        let six_d = d.scale(&BigRational::from_integer(6.into()));
        let dd = &(&d * &d).scale(&BigRational::from_integer(8.into()))
            + &d.scale(&BigRational::from_integer(4.into()));
        poly_eq(m2.entry(0, 0), &four_d_c2);
        poly_eq(m2.entry(0, 1), &six_d);
        poly_eq(m2.entry(1, 0), &six_d);
        poly_eq(m2.entry(1, 1), &dd);
    }

    #[test]
    fn polynomial_symmetry_up_to_level_five() {
        let mut engine = ReductionEngine::new();
        for n in 0..=5 {
            let m = shapovalov_matrix_with(&mut engine, n);
            for i in 0..m.dim() {
                for j in 0..m.dim() {
                    poly_eq(m.entry(i, j), m.entry(j, i));
                }
            }
        }
    }

    #[test]
    fn kac_level_one_vanishes_at_delta_zero() {
        // α_{1,1} = Q − γ/2 − 2/γ = 0 gives Δ_{1,1} = 0, the root of 2Δ.
        let params = LiouvilleParams::new(0.9, 1.0).unwrap();
        assert_relative_eq!(params.alpha_rs(1, 1), 0.0, epsilon = 1e-14);
        let report = kac_check(1, &params, 1e-20);
        assert!(report.passed, "{report:?}");
        assert_eq!(report.zeros.len(), 1);
        assert_eq!(report.zeros[0].det_abs, 0.0);
        assert_relative_eq!(report.zeros[0].delta_rs, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn kac_level_two_roots_and_kappa() {
        let params = LiouvilleParams::new(1.0, 1.0).unwrap();
        let report = kac_check(2, &params, 1e-20);
        assert!(report.passed, "{report:?}");
        assert_eq!(report.zeros.len(), 3);
        for z in &report.zeros {
            assert_eq!(z.det_abs, 0.0, "det must vanish exactly at ({},{})", z.r, z.s);
        }
        assert_eq!(report.det_degree, 3);
        // κ_2 = 32 (leading coefficient of det F_2 in Δ), independent of γ.
        assert_eq!(report.kappa_exact, "32");
        for gamma in [0.7, 1.3] {
            let other = kac_check(2, &LiouvilleParams::new(gamma, 1.0).unwrap(), 1e-20);
            assert_eq!(other.kappa_exact, "32");
            assert!(other.passed);
        }
    }

    #[test]
    fn invert_level_one_is_scalar_inverse() {
        let params = LiouvilleParams::new(1.0, 1.0).unwrap();
        let dp = params.delta_spectrum(0.7);
        let inv = invert_shapovalov(1, dp, params.c_l()).unwrap();
        assert_relative_eq!(inv.matrix[(0, 0)], 1.0 / (2.0 * dp), max_relative = 1e-14);
    }

    #[test]
    fn invert_level_two_matches_exact_oracle_and_identity() {
        let params = LiouvilleParams::new(1.0, 1.0).unwrap();
        let q = params.q();
        let dp = (q * q + 1.0) / 4.0;
        let c = params.c_l();
        let m = shapovalov_matrix(2);
        let f = m.eval_f64(dp, c);
        let inv = invert_shapovalov_of(&m, dp, c).unwrap();
        let product = &f * &inv.matrix;
        for i in 0..2 {
            for j in 0..2 {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!(
                    (product[(i, j)] - expected).abs() < 1e-12,
                    "F·F⁻¹ deviates: {product}"
                );
            }
        }
        // Exact symbolic 2×2 inverse: adj/det.
        let (a, b, d) = (f[(0, 0)], f[(0, 1)], f[(1, 1)]);
        let det = a * d - b * b;
        let oracle = [[d / det, -b / det], [-b / det, a / det]];
        for i in 0..2 {
            for j in 0..2 {
                assert_relative_eq!(inv.matrix[(i, j)], oracle[i][j], max_relative = 1e-12);
            }
        }
        assert!(inv.condition >= 1.0);
    }

    #[test]
    fn off_spectrum_weight_is_rejected() {
        let params = LiouvilleParams::new(1.0, 1.0).unwrap();
        assert!(matches!(
            invert_shapovalov(1, -1.0, params.c_l()),
            Err(LiouvilleError::NotPositiveDefinite { .. })
        ));
        // Between the Kac roots Δ_{2,1} = −0.6875 and Δ_{1,1} = 0 (γ = 1)
        // the level-2 determinant is negative.
        assert!(matches!(
            invert_shapovalov(2, -0.3, params.c_l()),
            Err(LiouvilleError::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn matrix_json_dump_is_labelled() {
        let m = shapovalov_matrix(1);
        let v = m.to_json();
        assert_eq!(v["diagrams"][0], "1");
        assert_eq!(v["entries"][0][0]["1,0"], "2");
    }
}
