//! Free-field oracle: Segal–Sugawara operators acting on polynomial Fock
//! states with a Gaussian inner product.
//!
//! States are polynomials in the complex modes φ_n, φ_{−n} = conj(φ_n)
//! (φ_n = (x_n + i y_n)/(2√n) with x_n, y_n i.i.d. standard Gaussians).
//! The Heisenberg operators act as
//!   A_n = (i/2)∂_n,  A_{−n} = (i/2)(∂_{−n} − 2n φ_n)          (n > 0),
//! the twin family with φ_n ↔ φ_{−n} swapped, and the Virasoro modes are
//!   L^{0,α}_n = i(α − Q − nQ) A_n + Σ_{m≠n,0} A_{n−m} A_m     (n ≠ 0),
//!   L^{0,α}_0 = Δ_α + 2 Σ_{m>0} A_{−m} A_m.
//!
//! Everything here is numeric at a fixed α; the exact-in-(Δ, c) route lives
//! in the virasoro module, and equality of the two Gram forms is the
//! central cross-check of the crate.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::params::LiouvilleParams;
use crate::partitions::YoungDiagram;

/// Signed mode → exponent, sorted by mode index; mode n > 0 is φ_n,
/// mode −n is φ_{−n}. Exponents are always ≥ 1 in stored keys.
type FockMono = Vec<(i32, u32)>;

const COEFF_EPS: f64 = 1e-300;

/// Finite polynomial in the Gaussian modes with complex coefficients. The
/// zero polynomial is the empty term map.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FockPolynomial {
    terms: BTreeMap<FockMono, Complex64>,
}

impl FockPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        let mut p = Self::default();
        p.insert(Vec::new(), c);
        p
    }

    /// The mode φ_m (m ≠ 0; negative m is φ_{−|m|}).
    pub fn mode(m: i32) -> Self {
        assert!(m != 0, "mode index must be non-zero");
        let mut p = Self::default();
        p.insert(vec![(m, 1)], Complex64::new(1.0, 0.0));
        p
    }

    /// x_n = √n (φ_n + φ_{−n}).
    pub fn x_mode(n: u32) -> Self {
        let s = f64::from(n).sqrt();
        let mut p = Self::mode(n as i32).scaled(Complex64::new(s, 0.0));
        p.add_assign_scaled(&Self::mode(-(n as i32)), Complex64::new(s, 0.0));
        p
    }

    /// y_n = −i√n (φ_n − φ_{−n}).
    pub fn y_mode(n: u32) -> Self {
        let s = f64::from(n).sqrt();
        let mut p = Self::mode(n as i32).scaled(Complex64::new(0.0, -s));
        p.add_assign_scaled(&Self::mode(-(n as i32)), Complex64::new(0.0, s));
        p
    }

    /// Probabilists' Hermite polynomial He_k of an arbitrary polynomial
    /// argument, via He_{k+1} = x·He_k − k·He_{k−1}.
    pub fn hermite_he(k: u32, x: &Self) -> Self {
        let mut prev = Self::one();
        if k == 0 {
            return prev;
        }
        let mut cur = x.clone();
        for j in 1..k {
            let mut next = cur.mul(x);
            next.add_assign_scaled(&prev, Complex64::new(-f64::from(j), 0.0));
            prev = cur;
            cur = next;
        }
        cur
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockMono, &Complex64)> {
        self.terms.iter()
    }

    /// Highest mode index |m| appearing.
    pub fn n_max(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|m| m.iter().map(|&(i, _)| i.unsigned_abs()))
            .max()
            .unwrap_or(0)
    }

    fn insert(&mut self, mono: FockMono, coeff: Complex64) {
        if coeff.norm() <= COEFF_EPS {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = *e.get() + coeff;
                if v.norm() <= COEFF_EPS {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Self, scale: Complex64) {
        for (m, &c) in &other.terms {
            self.insert(m.clone(), c * scale);
        }
    }

    pub fn scaled(&self, scale: Complex64) -> Self {
        let mut out = Self::default();
        for (m, &c) in &self.terms {
            out.insert(m.clone(), c * scale);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                out.insert(merge_monomials(ma, mb), ca * cb);
            }
        }
        out
    }

    /// Multiplication by the single mode φ_m.
    fn mul_mode(&self, m: i32) -> Self {
        let unit: FockMono = vec![(m, 1)];
        let mut out = Self::default();
        for (mono, &c) in &self.terms {
            out.insert(merge_monomials(mono, &unit), c);
        }
        out
    }

    /// ∂/∂φ_m.
    fn derivative(&self, m: i32) -> Self {
        let mut out = Self::default();
        for (mono, &c) in &self.terms {
            if let Some(pos) = mono.iter().position(|&(i, _)| i == m) {
                let k = mono[pos].1;
                let mut reduced = mono.clone();
                if k == 1 {
                    reduced.remove(pos);
                } else {
                    reduced[pos].1 = k - 1;
                }
                out.insert(reduced, c * f64::from(k));
            }
        }
        out
    }

    /// Complex conjugation: conjugates coefficients and swaps φ_n ↔ φ_{−n}.
    pub fn conj(&self) -> Self {
        let mut out = Self::default();
        for (mono, &c) in &self.terms {
            let mut swapped: FockMono = mono.iter().map(|&(m, k)| (-m, k)).collect();
            swapped.sort_unstable();
            out.insert(swapped, c.conj());
        }
        out
    }

    /// Largest coefficient magnitude (0 for the zero polynomial).
    pub fn max_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

fn merge_monomials(a: &FockMono, b: &FockMono) -> FockMono {
    let mut out: FockMono = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Which of the two commuting Heisenberg/Virasoro families acts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Plain,
    Tilde,
}

impl Family {
    /// The tilde family acts with φ_n ↔ φ_{−n} swapped.
    fn orient(self, m: i32) -> i32 {
        match self {
            Family::Plain => m,
            Family::Tilde => -m,
        }
    }
}

/// A_n (n ≠ 0): annihilation (i/2)∂_n for n > 0, creation
/// (i/2)(∂_{−n} − 2nφ_n) for negative index.
pub fn apply_a(n: i32, state: &FockPolynomial) -> FockPolynomial {
    apply_a_family(Family::Plain, n, state)
}

pub fn apply_a_family(family: Family, n: i32, state: &FockPolynomial) -> FockPolynomial {
    assert!(n != 0, "A_0 is not part of the polynomial action");
    let half_i = Complex64::new(0.0, 0.5);
    if n > 0 {
        state.derivative(family.orient(n)).scaled(half_i)
    } else {
        let m = -n; // m > 0
        let mut out = state.derivative(family.orient(-m)).scaled(half_i);
        out.add_assign_scaled(
            &state.mul_mode(family.orient(m)),
            Complex64::new(0.0, -f64::from(m as u32)),
        );
        out
    }
}

/// L^{0,α}_n acting on a finite polynomial; the quadratic sum truncates on
/// the modes actually present.
pub fn apply_l(
    n: i32,
    alpha: Complex64,
    state: &FockPolynomial,
    params: &LiouvilleParams,
) -> FockPolynomial {
    apply_l_family(Family::Plain, n, alpha, state, params)
}

/// The twin generator L̃^{0,α}_n (identical action with φ_n ↔ φ_{−n}).
pub fn apply_l_tilde(
    n: i32,
    alpha: Complex64,
    state: &FockPolynomial,
    params: &LiouvilleParams,
) -> FockPolynomial {
    apply_l_family(Family::Tilde, n, alpha, state, params)
}

pub fn apply_l_family(
    family: Family,
    n: i32,
    alpha: Complex64,
    state: &FockPolynomial,
    params: &LiouvilleParams,
) -> FockPolynomial {
    if state.is_zero() {
        return FockPolynomial::zero();
    }
    let q = params.q();
    if n == 0 {
        let delta = params.delta(alpha);
        let mut out = state.scaled(delta);
        let reach = state.n_max() as i32;
        for m in 1..=reach {
            let am = apply_a_family(family, m, state);
            if am.is_zero() {
                continue;
            }
            out.add_assign_scaled(&apply_a_family(family, -m, &am), Complex64::new(2.0, 0.0));
        }
        return out;
    }
    let linear_coeff = Complex64::new(0.0, 1.0) * (alpha - q - f64::from(n) * q);
    let mut out = apply_a_family(family, n, state).scaled(linear_coeff);
    // A_m with |m| beyond n_max + |n| either annihilates outright or
    // creates a mode the second factor cannot remove.
    let reach = state.n_max() as i32 + n.abs() + 1;
    for m in -reach..=reach {
        if m == 0 || m == n {
            continue;
        }
        let inner = apply_a_family(family, m, state);
        if inner.is_zero() {
            continue;
        }
        let outer = apply_a_family(family, n - m, &inner);
        out.add_assign_scaled(&outer, Complex64::new(1.0, 0.0));
    }
    out
}

/// The descendant polynomial Q_{α,ν,ν̃} = L^{0,α}_{−ν} L̃^{0,α}_{−ν̃} 1,
/// factors applied largest part first (the composition order of
/// L_{−ν} = L_{−ν_k} ⋯ L_{−ν_1}).
pub fn descendant_poly(
    alpha: Complex64,
    nu: &YoungDiagram,
    nutilde: &YoungDiagram,
    params: &LiouvilleParams,
) -> FockPolynomial {
    let mut state = FockPolynomial::one();
    for &part in nutilde.parts() {
        state = apply_l_family(Family::Tilde, -(part as i32), alpha, &state, params);
    }
    for &part in nu.parts() {
        state = apply_l_family(Family::Plain, -(part as i32), alpha, &state, params);
    }
    state
}

/// Number operator P = Σ_n [n(φ_n∂_n + φ_{−n}∂_{−n}) − ∂_n∂_{−n}]
/// (the complex-coordinate form of Σ n(X_n*X_n + Y_n*Y_n)); Hermite states
/// are eigenstates with eigenvalue |k| + |l|.
pub fn apply_number_operator(state: &FockPolynomial) -> FockPolynomial {
    let mut out = FockPolynomial::zero();
    for (mono, &coeff) in state.terms() {
        let mut scale = 0.0;
        for &(m, k) in mono.iter() {
            scale += f64::from(m.unsigned_abs()) * f64::from(k);
        }
        out.insert(mono.clone(), coeff * scale);
        for idx in 0..mono.len() {
            let (m, a) = mono[idx];
            if m <= 0 {
                continue;
            }
            if let Some(jdx) = mono.iter().position(|&(mm, _)| mm == -m) {
                let b = mono[jdx].1;
                let mut reduced: FockMono = Vec::with_capacity(mono.len());
                for (pos, &(mm, kk)) in mono.iter().enumerate() {
                    let kk = if pos == idx || pos == jdx { kk - 1 } else { kk };
                    if kk > 0 {
                        reduced.push((mm, kk));
                    }
                }
                out.insert(reduced, -coeff * f64::from(a) * f64::from(b));
            }
        }
    }
    out
}

/// Normalized number-operator eigenstate
/// ψ_{kl} = ∏ He_{k_n}(x_n) He_{l_n}(y_n) / √(∏ k_n! l_n!), eigenvalue
/// λ = |k| + |l| with |k| = Σ n k_n.
#[derive(Debug, Clone)]
pub struct HermiteState {
    pub k: Vec<u32>,
    pub l: Vec<u32>,
    pub polynomial: FockPolynomial,
}

impl HermiteState {
    /// `k[i]`, `l[i]` are the occupation numbers of mode i+1.
    pub fn new(k: Vec<u32>, l: Vec<u32>) -> Self {
        let mut poly = FockPolynomial::one();
        let mut norm_sq = 1.0;
        for (idx, &kn) in k.iter().enumerate() {
            if kn > 0 {
                let n = idx as u32 + 1;
                poly = poly.mul(&FockPolynomial::hermite_he(kn, &FockPolynomial::x_mode(n)));
                norm_sq *= factorial(kn);
            }
        }
        for (idx, &ln) in l.iter().enumerate() {
            if ln > 0 {
                let n = idx as u32 + 1;
                poly = poly.mul(&FockPolynomial::hermite_he(ln, &FockPolynomial::y_mode(n)));
                norm_sq *= factorial(ln);
            }
        }
        let poly = poly.scaled(Complex64::new(1.0 / norm_sq.sqrt(), 0.0));
        Self {
            k,
            l,
            polynomial: poly,
        }
    }

    /// λ_{kl} = |k| + |l| with |k| = Σ n k_n.
    pub fn eigenvalue(&self) -> u32 {
        let weight =
            |v: &[u32]| -> u32 { v.iter().enumerate().map(|(i, &k)| (i as u32 + 1) * k).sum() };
        weight(&self.k) + weight(&self.l)
    }
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

/// Gaussian inner product E[conj(a)·b] under ⊗ (2π)^{-1} e^{-(x²+y²)/2};
/// sesquilinear, conjugate-linear in the first argument (bra-ket
/// convention, matching the adjoint (L^{0,α}_n)* = L^{0,2Q−ᾱ}_{−n}).
/// Evaluated exactly through the per-mode moments
/// E[φ_n^e conj(φ_n)^f] = δ_{ef} e! (2n)^{-e}.
pub fn fock_inner(a: &FockPolynomial, b: &FockPolynomial) -> Complex64 {
    // Bucket both sides by per-mode charge (exp φ_n − exp φ_{−n}); the
    // moment vanishes unless the charges agree.
    let mut acc = Complex64::new(0.0, 0.0);
    let buckets_a = charge_buckets(a);
    let buckets_b = charge_buckets(b);
    for (charge, terms_a) in &buckets_a {
        let Some(terms_b) = buckets_b.get(charge) else {
            continue;
        };
        for &(ma, ca) in terms_a {
            for &(mb, cb) in terms_b {
                acc += ca.conj() * cb * matched_moment(ma, mb);
            }
        }
    }
    acc
}

type ChargeKey = Vec<(u32, i64)>;

fn charge_buckets(p: &FockPolynomial) -> BTreeMap<ChargeKey, Vec<(&FockMono, Complex64)>> {
    let mut out: BTreeMap<ChargeKey, Vec<(&FockMono, Complex64)>> = BTreeMap::new();
    for (mono, &c) in p.terms() {
        let mut charge: BTreeMap<u32, i64> = BTreeMap::new();
        for &(m, k) in mono.iter() {
            *charge.entry(m.unsigned_abs()).or_insert(0) +=
                if m > 0 { i64::from(k) } else { -i64::from(k) };
        }
        charge.retain(|_, v| *v != 0);
        out.entry(charge.into_iter().collect())
            .or_default()
            .push((mono, c));
    }
    out
}

/// Worst-case deviation between the Fock Gram form
/// fock_inner(Q_{2Q−conj α,ν,ν̃}, Q_{α,ν′,ν̃′}) and the Shapovalov product
/// δ_{|ν|,|ν′|} δ_{|ν̃|,|ν̃′|} F_α(ν,ν′) F_α(ν̃,ν̃′), over all diagram pairs
/// with |ν|+|ν̃| ≤ `total` and |ν′|+|ν̃′| ≤ `total`, measured relative to
/// the largest expected entry of each level class.
pub fn oracle_gram_residual(alpha: Complex64, total: u32, params: &LiouvilleParams) -> f64 {
    use crate::partitions::young_diagrams;
    use crate::virasoro::{shapovalov_matrix_with, ReductionEngine};

    let alpha_star = Complex64::new(2.0 * params.q(), 0.0) - alpha.conj();
    let delta = params.delta(alpha);
    let c_l = Complex64::new(params.c_l(), 0.0);
    let mut engine = ReductionEngine::new();
    let matrices: Vec<nalgebra::DMatrix<Complex64>> = (0..=total)
        .map(|n| shapovalov_matrix_with(&mut engine, n).eval_complex(delta, c_l))
        .collect();
    let diagrams: Vec<Vec<YoungDiagram>> = (0..=total).map(young_diagrams).collect();

    // All descendants (and their reflected bras) up to the total level.
    struct Entry {
        a: u32,
        b: u32,
        i: usize,
        k: usize,
        ket: FockPolynomial,
        bra: FockPolynomial,
    }
    let mut states = Vec::new();
    for a in 0..=total {
        for b in 0..=(total - a) {
            for (i, nu) in diagrams[a as usize].iter().enumerate() {
                for (k, nt) in diagrams[b as usize].iter().enumerate() {
                    states.push(Entry {
                        a,
                        b,
                        i,
                        k,
                        ket: descendant_poly(alpha, nu, nt, params),
                        bra: descendant_poly(alpha_star, nu, nt, params),
                    });
                }
            }
        }
    }

    // Class scales from the expected Shapovalov products.
    let mut class_scale = std::collections::BTreeMap::new();
    for s in &states {
        let fa = &matrices[s.a as usize];
        let fb = &matrices[s.b as usize];
        let scale = class_scale.entry((s.a, s.b)).or_insert(0.0f64);
        for j in 0..fa.nrows() {
            for l in 0..fb.nrows() {
                *scale = scale.max((fa[(s.i, j)] * fb[(s.k, l)]).norm());
            }
        }
    }

    let mut worst: f64 = 0.0;
    for lhs in &states {
        for rhs in &states {
            let gram = fock_inner(&lhs.bra, &rhs.ket);
            let expected = if lhs.a == rhs.a && lhs.b == rhs.b {
                matrices[lhs.a as usize][(lhs.i, rhs.i)] * matrices[lhs.b as usize][(lhs.k, rhs.k)]
            } else {
                Complex64::new(0.0, 0.0)
            };
            let scale = class_scale[&(lhs.a, lhs.b)]
                .max(class_scale[&(rhs.a, rhs.b)])
                .max(1.0);
            worst = worst.max((gram - expected).norm() / scale);
        }
    }
    worst
}

/// E[conj(mono_a)·mono_b] when the charges match: per mode n the power of
/// φ_n in the product is e_n = a(−n) + b(n), and E[|φ_n|^{2e}] = e!(2n)^{-e}.
fn matched_moment(ma: &FockMono, mb: &FockMono) -> f64 {
    let mut exps: BTreeMap<u32, u32> = BTreeMap::new();
    for &(m, k) in ma {
        if m < 0 {
            *exps.entry(m.unsigned_abs()).or_insert(0) += k;
        }
    }
    for &(m, k) in mb {
        if m > 0 {
            *exps.entry(m as u32).or_insert(0) += k;
        }
    }
    let mut v = 1.0;
    for (n, e) in exps {
        v *= factorial(e) / f64::from(2 * n).powi(e as i32);
    }
    v
}
