//! Sparse exact polynomials in the two commuting indeterminates (Δ, c)
//! with arbitrary-precision rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Monomial exponents (Δ^i, c^j) mapped to rational coefficients. Zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PolyDC {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl PolyDC {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        Self { terms }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn rational(num: i64, den: i64) -> Self {
        Self::constant(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The indeterminate Δ.
    pub fn delta() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((1, 0), BigRational::one());
        Self { terms }
    }

    /// The indeterminate c.
    pub fn central() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((0, 1), BigRational::one());
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    /// Degree in Δ (0 for the zero polynomial).
    pub fn degree_delta(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    fn insert(&mut self, key: (u32, u32), coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&k, v)| (k, v * s))
                .collect(),
        }
    }

    pub fn eval_complex(&self, delta: Complex64, c: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(i, j), coeff) in &self.terms {
            let cf = coeff.to_f64().expect("rational coefficient out of f64 range");
            acc += cf * delta.powu(i) * c.powu(j);
        }
        acc
    }

    pub fn eval_f64(&self, delta: f64, c: f64) -> f64 {
        let mut acc = 0.0;
        for (&(i, j), coeff) in &self.terms {
            let cf = coeff.to_f64().expect("rational coefficient out of f64 range");
            acc += cf * delta.powi(i as i32) * c.powi(j as i32);
        }
        acc
    }

    pub fn eval_rational(&self, delta: &BigRational, c: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (&(i, j), coeff) in &self.terms {
            let mut term = coeff.clone();
            for _ in 0..i {
                term *= delta;
            }
            for _ in 0..j {
                term *= c;
            }
            acc += term;
        }
        acc
    }

    /// Serialization used by the matrix dump: {"i,j": "p/q"} per monomial
    /// Δ^i c^j.
    pub fn to_json_map(&self) -> serde_json::Map<String, serde_json::Value> {
        let mut map = serde_json::Map::new();
        for (&(i, j), coeff) in &self.terms {
            map.insert(format!("{i},{j}"), serde_json::Value::String(coeff.to_string()));
        }
        map
    }
}

impl AddAssign<&PolyDC> for PolyDC {
    fn add_assign(&mut self, rhs: &PolyDC) {
        for (&k, v) in &rhs.terms {
            self.insert(k, v.clone());
        }
    }
}

impl Add for &PolyDC {
    type Output = PolyDC;
    fn add(self, rhs: &PolyDC) -> PolyDC {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &PolyDC {
    type Output = PolyDC;
    fn sub(self, rhs: &PolyDC) -> PolyDC {
        let mut out = self.clone();
        for (&k, v) in &rhs.terms {
            out.insert(k, -v.clone());
        }
        out
    }
}

impl Neg for &PolyDC {
    type Output = PolyDC;
    fn neg(self) -> PolyDC {
        PolyDC {
            terms: self.terms.iter().map(|(&k, v)| (k, -v.clone())).collect(),
        }
    }
}

impl Mul for &PolyDC {
    type Output = PolyDC;
    fn mul(self, rhs: &PolyDC) -> PolyDC {
        let mut out = PolyDC::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.insert((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for PolyDC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // Highest Δ-degree first reads naturally.
        for (&(i, j), coeff) in self.terms.iter().rev() {
            if !first {
                write!(f, " {} ", if coeff.is_negative() { "-" } else { "+" })?;
            } else if coeff.is_negative() {
                write!(f, "-")?;
            }
            let mag = coeff.abs();
            let show_coeff = !mag.is_one() || (i == 0 && j == 0);
            if show_coeff {
                write!(f, "{mag}")?;
            }
            if i > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                write!(f, "D")?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            }
            if j > 0 {
                if i > 0 || show_coeff {
                    write!(f, "*")?;
                }
                write!(f, "c")?;
                if j > 1 {
                    write!(f, "^{j}")?;
                }
            }
            first = false;
        }
        Ok(())
    }
}
