//! Multivariate complex polynomials in canonical sparse form.
//!
//! These stand in for the entire functions carried by overshears: the
//! additive part `f` is a polynomial and the multiplier is `exp(g)` for a
//! polynomial `g`, which keeps the multiplier nowhere zero.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{check_dim, Error, Result};

/// Exponent multi-index, one entry per variable.
pub type Monomial = Vec<u32>;

/// A polynomial in `n_vars` complex variables.
///
/// Terms with zero coefficient are never stored, so structural equality is
/// equality of polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialRepr {
    n_vars: usize,
    terms: BTreeMap<Monomial, Complex64>,
}

impl PolynomialRepr {
    pub fn zero(n_vars: usize) -> Self {
        PolynomialRepr {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: Complex64) -> Self {
        let mut p = Self::zero(n_vars);
        if c != Complex64::new(0.0, 0.0) {
            p.terms.insert(vec![0; n_vars], c);
        }
        p
    }

    /// The coordinate function `z_var` (1-based).
    pub fn variable(n_vars: usize, var: usize) -> Result<Self> {
        if var == 0 || var > n_vars {
            return Err(Error::InvalidPolynomial(format!(
                "variable {var} out of range 1..={n_vars}"
            )));
        }
        let mut e = vec![0; n_vars];
        e[var - 1] = 1;
        Self::from_terms(n_vars, [(e, Complex64::new(1.0, 0.0))])
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs. Repeated
    /// monomials are summed and zero coefficients dropped.
    pub fn from_terms<I>(n_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Complex64)>,
    {
        let mut map: BTreeMap<Monomial, Complex64> = BTreeMap::new();
        for (exps, c) in terms {
            if exps.len() != n_vars {
                return Err(Error::InvalidPolynomial(format!(
                    "exponent vector has length {}, expected {n_vars}",
                    exps.len()
                )));
            }
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::InvalidPolynomial(
                    "non-finite coefficient".to_string(),
                ));
            }
            *map.entry(exps).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        map.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        Ok(PolynomialRepr { n_vars, terms: map })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Complex64)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    /// Coefficient of the constant monomial, i.e. the value at the origin.
    pub fn constant_term(&self) -> Complex64 {
        self.terms
            .get(&vec![0; self.n_vars])
            .copied()
            .unwrap_or_default()
    }

    /// Whether any term has a positive exponent in variable `var` (1-based).
    pub fn references(&self, var: usize) -> bool {
        var >= 1 && var <= self.n_vars && self.terms.keys().any(|e| e[var - 1] > 0)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = Self::zero(self.n_vars);
        for (e, c) in &self.terms {
            let v = c * s;
            if v != Complex64::new(0.0, 0.0) {
                out.terms.insert(e.clone(), v);
            }
        }
        out
    }

    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64> {
        check_dim(self.n_vars, z.len())?;
        Ok(self.eval_unchecked(z))
    }

    pub(crate) fn eval_unchecked(&self, z: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(z)
                    .fold(*c, |acc, (&k, &x)| acc * ipow(x, k))
            })
            .sum()
    }
}

fn ipow(x: Complex64, mut k: u32) -> Complex64 {
    let mut base = x;
    let mut acc = Complex64::new(1.0, 0.0);
    while k > 0 {
        if k & 1 == 1 {
            acc *= base;
        }
        base *= base;
        k >>= 1;
    }
    acc
}

impl fmt::Display for PolynomialRepr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}{:+}i)", c.re, c.im)?;
            for (v, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "·z{}", v + 1)?,
                    _ => write!(f, "·z{}^{}", v + 1, k)?,
                }
            }
        }
        Ok(())
    }
}
