//! Linearized torus actions and the centralizer test.
//!
//! A torus element `θ ∈ R^n` acts through an integer exponent matrix `a` by
//! `z_j ↦ e^{i(aθ)_j} z_j`. Automorphisms commuting with every coordinate
//! rotation are exactly the diagonal maps; [`commutes_with_torus`] and
//! [`extract_diagonal`] check that dichotomy numerically.

use num_complex::Complex64;
use rand::Rng;

use crate::domain::{word_preserves_domain, DomainSpec};
use crate::error::{check_dim, Error, Result};
use crate::sampling::{angles, annulus_point, seeded};
use crate::word::AutomorphismWord;

pub const COMMUTATION_TORUS_SAMPLES: usize = 64;
pub const COMMUTATION_POINT_SAMPLES: usize = 64;
pub const COMMUTATION_THRESHOLD: f64 = 1e-10;

pub const DIAGONAL_CHECK_POINTS: usize = 32;
pub const DIAGONAL_RATIO_TOLERANCE: f64 = 1e-9;
pub const DIAGONAL_DEPENDENCE_TOLERANCE: f64 = 1e-10;

/// Square integer matrix with determinant ±1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentMatrix {
    a: Vec<Vec<i64>>,
    det: i8,
}

impl ExponentMatrix {
    pub fn new(a: Vec<Vec<i64>>) -> Result<Self> {
        let det = validate_exponent_matrix(&a)?;
        Ok(ExponentMatrix { a, det })
    }

    pub fn identity(n: usize) -> Self {
        let a = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        ExponentMatrix { a, det: 1 }
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn det(&self) -> i8 {
        self.det
    }
}

/// Angles of a torus element; its diagonal coefficients have modulus one.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusElement {
    pub theta: Vec<f64>,
}

impl TorusElement {
    pub fn new(theta: Vec<f64>) -> Self {
        TorusElement { theta }
    }

    /// `e^{i(aθ)_j}` for each coordinate.
    pub fn coefficients(&self, a: &ExponentMatrix) -> Result<Vec<Complex64>> {
        check_dim(a.dim(), self.theta.len())?;
        Ok(a.rows()
            .iter()
            .map(|row| {
                let phase: f64 = row
                    .iter()
                    .zip(&self.theta)
                    .map(|(&k, &t)| k as f64 * t)
                    .sum();
                Complex64::from_polar(1.0, phase)
            })
            .collect())
    }
}

/// Exact integer determinant by fraction-free (Bareiss) elimination.
pub fn integer_det(a: &[Vec<i64>]) -> Result<i128> {
    let n = a.len();
    if let Some(row) = a.iter().find(|r| r.len() != n) {
        return Err(Error::InvalidMatrix(format!(
            "matrix is not square: row of length {} in {n}×{n}",
            row.len()
        )));
    }
    if n == 0 {
        return Ok(1);
    }
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j]
                    .checked_mul(m[k][k])
                    .and_then(|x| x.checked_sub(m[i][k].checked_mul(m[k][j])?))
                    .ok_or(Error::DeterminantOverflow)?;
                // exact by Sylvester's identity
                m[i][j] = num / prev;
            }
        }
        prev = m[k][k];
    }
    Ok(sign * m[n - 1][n - 1])
}

/// Returns the determinant when it is ±1.
pub fn validate_exponent_matrix(a: &[Vec<i64>]) -> Result<i8> {
    match integer_det(a)? {
        1 => Ok(1),
        -1 => Ok(-1),
        det => Err(Error::NotUnimodular { det }),
    }
}

/// `z_j ↦ e^{i(aθ)_j} z_j`.
pub fn apply_torus(a: &ExponentMatrix, t: &TorusElement, z: &[Complex64]) -> Result<Vec<Complex64>> {
    check_dim(a.dim(), z.len())?;
    let coeffs = t.coefficients(a)?;
    Ok(z.iter().zip(coeffs).map(|(x, c)| x * c).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommutationWitness {
    pub theta: Vec<f64>,
    pub z: Vec<Complex64>,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommutationVerdict {
    pub commutes: bool,
    pub max_deviation: f64,
    /// The maximizing trial, reported when the word does not commute.
    pub witness: Option<CommutationWitness>,
}

fn sup_dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Samples `‖w(t(z)) − t(w(z))‖∞` over a seeded grid of 64 coordinate
/// rotations and 64 domain points. The maximum is taken in a fixed
/// enumeration order, so the verdict is reproducible for a given seed.
pub fn commutes_with_torus(w: &AutomorphismWord, d: &DomainSpec, seed: u64) -> Result<CommutationVerdict> {
    check_dim(d.dim(), w.dim())?;
    if !word_preserves_domain(w, d, seed)?.preserves {
        return Err(Error::DomainNotPreserved);
    }
    let n = d.dim();
    let a = ExponentMatrix::identity(n);
    let mut rng = seeded(seed);
    let tori: Vec<TorusElement> = (0..COMMUTATION_TORUS_SAMPLES)
        .map(|_| TorusElement::new(angles(&mut rng, n)))
        .collect();
    let points: Vec<Vec<Complex64>> = (0..COMMUTATION_POINT_SAMPLES)
        .map(|_| d.sample(&mut rng))
        .collect();

    let mut best: Option<CommutationWitness> = None;
    for t in &tori {
        for z in &points {
            let lhs = w.eval(&apply_torus(&a, t, z)?)?;
            let rhs = apply_torus(&a, t, &w.eval(z)?)?;
            let deviation = sup_dist(&lhs, &rhs);
            if best.as_ref().is_none_or(|b| deviation > b.deviation) {
                best = Some(CommutationWitness {
                    theta: t.theta.clone(),
                    z: z.clone(),
                    deviation,
                });
            }
        }
    }
    let best = best.expect("sample grid is non-empty");
    let commutes = best.deviation < COMMUTATION_THRESHOLD;
    Ok(CommutationVerdict {
        commutes,
        max_deviation: best.deviation,
        witness: (!commutes).then_some(best),
    })
}

/// Base-point coordinates whose products and quotients with any finite
/// complex number are exact in floating point.
const DYADIC_AXIS_POINTS: [Complex64; 8] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(0.0, -1.0),
    Complex64::new(0.5, 0.0),
    Complex64::new(-0.5, 0.0),
    Complex64::new(0.0, 0.5),
    Complex64::new(0.0, -0.5),
];

/// Recovers `λ` for a word acting as `z ↦ (λ_1 z_1, …, λ_n z_n)`.
///
/// `λ_j = w_j(p)/p_j` at a seeded base point, then checked at 32 more
/// points: the ratio must be constant and `w_j` must not move when any
/// other coordinate is perturbed.
pub fn extract_diagonal(w: &AutomorphismWord, d: &DomainSpec, seed: u64) -> Result<Vec<Complex64>> {
    check_dim(d.dim(), w.dim())?;
    let n = d.dim();
    let mut rng = seeded(seed);

    let p: Vec<Complex64> = (0..n)
        .map(|_| DYADIC_AXIS_POINTS[rng.random_range(0..DYADIC_AXIS_POINTS.len())])
        .collect();
    let wp = w.eval(&p)?;
    let lambda: Vec<Complex64> = wp.iter().zip(&p).map(|(a, b)| a / b).collect();

    let not_diagonal = |coordinate: usize, point: &[Complex64]| Error::NotDiagonal {
        coordinate,
        point: point.to_vec(),
    };
    if lambda.iter().any(|l| !(l.re.is_finite() && l.im.is_finite())) {
        return Err(not_diagonal(1, &p));
    }

    for _ in 0..DIAGONAL_CHECK_POINTS {
        let q = annulus_point(&mut rng, n, 0.5, 1.5);
        let wq = w.eval(&q)?;
        for j in 0..n {
            if (wq[j] / q[j] - lambda[j]).norm() >= DIAGONAL_RATIO_TOLERANCE {
                return Err(not_diagonal(j + 1, &q));
            }
        }
        for k in 0..n {
            let phi = rng.random_range(0.0..std::f64::consts::TAU);
            let mut moved = q.clone();
            moved[k] *= Complex64::new(1.0, 0.0) + Complex64::from_polar(0.25, phi);
            let wm = w.eval(&moved)?;
            for j in (0..n).filter(|&j| j != k) {
                if (wm[j] - wq[j]).norm() >= DIAGONAL_DEPENDENCE_TOLERANCE {
                    return Err(not_diagonal(j + 1, &q));
                }
            }
        }
    }
    Ok(lambda)
}
