//! Explicit paths in `Aut(C^n)` joining overshears and coordinate
//! transpositions to the identity.
//!
//! Both families run from the generator at `t = 0` to the identity at
//! `t = 1`:
//!
//! * overshear: `z_axis ↦ (1−t)·f(z′) + exp((1−t)·g(z′))·z_axis`;
//! * transposition of `z_j, z_k` (`j < k`): the linear map
//!   `z_j ↦ (1−t)z_k + t·z_j`, `z_k ↦ t·z_k + ((1−t) + i·b(t))·z_j`, whose
//!   determinant `(2t−1) − i(1−t)b(t)` stays away from zero because the bump
//!   `b` is nonzero at `t = 1/2`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::PolynomialRepr;
use crate::sampling::{polydisc_point, seeded};
use crate::word::{AutomorphismWord, GeneratorStep};

/// Number of seeded points used by certification and the continuity proxy.
pub const PATH_SAMPLE_POINTS: usize = 100;

#[derive(Debug, Clone, PartialEq, Default)]
pub enum BumpFunction {
    /// `t ↦ sin(πt)`.
    #[default]
    Sin,
    /// Piecewise-linear interpolation of values on a uniform grid of `[0, 1]`.
    Table(Vec<f64>),
}

impl BumpFunction {
    pub fn table(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidBump("table needs at least two values".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidBump("table values must be finite".into()));
        }
        let bump = BumpFunction::Table(values);
        bump.validate()?;
        Ok(bump)
    }

    /// `b(0) = b(1) = 0` and `b(1/2) ≠ 0`.
    pub fn validate(&self) -> Result<()> {
        if let BumpFunction::Table(v) = self {
            if v.len() < 2 || v.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidBump("malformed table".into()));
            }
        }
        if self.eval(0.0) != 0.0 || self.eval(1.0) != 0.0 {
            return Err(Error::InvalidBump("bump must vanish at t = 0 and t = 1".into()));
        }
        if self.eval(0.5) == 0.0 {
            return Err(Error::InvalidBump("bump must be nonzero at t = 1/2".into()));
        }
        Ok(())
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            // symmetric form, exactly zero at both endpoints
            BumpFunction::Sin => (PI * t.min(1.0 - t)).sin(),
            BumpFunction::Table(v) => {
                let segments = (v.len() - 1) as f64;
                let x = t.clamp(0.0, 1.0) * segments;
                let i = (x.floor() as usize).min(v.len() - 2);
                let frac = x - i as f64;
                if frac == 0.0 {
                    v[i]
                } else {
                    v[i] + frac * (v[i + 1] - v[i])
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum HomotopyPath {
    Overshear {
        n: usize,
        axis: usize,
        f: PolynomialRepr,
        g: PolynomialRepr,
    },
    Transposition {
        n: usize,
        j: usize,
        k: usize,
        bump: BumpFunction,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertificationReport {
    /// Sup-norm distance between `γ(0)` and the target generator.
    pub endpoint_err0: f64,
    /// Sup-norm distance between `γ(1)` and the identity.
    pub endpoint_err1: f64,
    pub min_abs_det: f64,
    pub max_inverse_residual: f64,
}

fn check_t(t: f64) -> Result<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(Error::OutOfRange { t })
    }
}

impl HomotopyPath {
    pub fn overshear(n: usize, axis: usize, f: PolynomialRepr, g: PolynomialRepr) -> Result<Self> {
        GeneratorStep::Overshear {
            axis,
            f: f.clone(),
            g: g.clone(),
        }
        .validate(n)?;
        Ok(HomotopyPath::Overshear { n, axis, f, g })
    }

    pub fn transposition(n: usize, j: usize, k: usize, bump: BumpFunction) -> Result<Self> {
        if !(1 <= j && j < k && k <= n) {
            return Err(Error::InvalidArgument(format!(
                "transposition needs 1 ≤ j < k ≤ n, got j={j}, k={k}, n={n}"
            )));
        }
        bump.validate()?;
        Ok(HomotopyPath::Transposition { n, j, k, bump })
    }

    pub fn dim(&self) -> usize {
        match self {
            HomotopyPath::Overshear { n, .. } | HomotopyPath::Transposition { n, .. } => *n,
        }
    }

    /// The generator the path starts from.
    pub fn target(&self) -> AutomorphismWord {
        let step = match self {
            HomotopyPath::Overshear { axis, f, g, .. } => GeneratorStep::Overshear {
                axis: *axis,
                f: f.clone(),
                g: g.clone(),
            },
            HomotopyPath::Transposition { n, j, k, .. } => GeneratorStep::transposition(*n, *j, *k),
        };
        AutomorphismWord::single(self.dim(), step).expect("path invariants imply a valid target")
    }

    /// `γ(t)` as a one-step word.
    pub fn at(&self, t: f64) -> Result<AutomorphismWord> {
        check_t(t)?;
        let s = 1.0 - t;
        let step = match self {
            HomotopyPath::Overshear { axis, f, g, .. } => {
                let scale = Complex64::new(s, 0.0);
                GeneratorStep::Overshear {
                    axis: *axis,
                    f: f.scale(scale),
                    g: g.scale(scale),
                }
            }
            HomotopyPath::Transposition { n, j, k, bump } => {
                let (j, k) = (j - 1, k - 1);
                let mut m = DMatrix::<Complex64>::identity(*n, *n);
                m[(j, j)] = Complex64::new(t, 0.0);
                m[(j, k)] = Complex64::new(s, 0.0);
                m[(k, j)] = Complex64::new(s, bump.eval(t));
                m[(k, k)] = Complex64::new(t, 0.0);
                GeneratorStep::Linear { matrix: m }
            }
        };
        AutomorphismWord::single(self.dim(), step)
    }

    /// Closed-form `det γ(t) = (2t−1) − i(1−t)b(t)` of a transposition path.
    pub fn det(&self, t: f64) -> Result<Complex64> {
        check_t(t)?;
        match self {
            HomotopyPath::Transposition { bump, .. } => {
                Ok(Complex64::new(2.0 * t - 1.0, -(1.0 - t) * bump.eval(t)))
            }
            HomotopyPath::Overshear { .. } => Err(Error::InvalidArgument(
                "closed-form determinant exists only for transposition paths".into(),
            )),
        }
    }
}

pub fn path_at(path: &HomotopyPath, t: f64) -> Result<AutomorphismWord> {
    path.at(t)
}

pub fn path_det(path: &HomotopyPath, t: f64) -> Result<Complex64> {
    path.det(t)
}

fn sup_dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn sample_points(n: usize, radius: f64, seed: u64) -> Vec<Vec<Complex64>> {
    let mut rng = seeded(seed);
    (0..PATH_SAMPLE_POINTS)
        .map(|_| polydisc_point(&mut rng, n, radius))
        .collect()
}

/// Checks the path on a uniform `t`-grid against 100 seeded points of the
/// closed polydisc of radius `sample_radius`.
pub fn certify_path(path: &HomotopyPath, grid_size: usize, sample_radius: f64, seed: u64) -> Result<CertificationReport> {
    if grid_size < 2 {
        return Err(Error::InvalidArgument(format!("grid size must be at least 2, got {grid_size}")));
    }
    if !(sample_radius >= 0.0 && sample_radius.is_finite()) {
        return Err(Error::InvalidArgument(format!("invalid sample radius {sample_radius}")));
    }
    let points = sample_points(path.dim(), sample_radius, seed);
    let target = path.target();
    let start = path.at(0.0)?;
    let end = path.at(1.0)?;

    let mut report = CertificationReport {
        endpoint_err0: 0.0,
        endpoint_err1: 0.0,
        min_abs_det: f64::INFINITY,
        max_inverse_residual: 0.0,
    };
    for z in &points {
        report.endpoint_err0 = report.endpoint_err0.max(sup_dist(&start.eval(z)?, &target.eval(z)?));
        report.endpoint_err1 = report.endpoint_err1.max(sup_dist(&end.eval(z)?, z));
    }

    let last = (grid_size - 1) as f64;
    for i in 0..grid_size {
        let t = i as f64 / last;
        let gamma = path.at(t)?;
        let inverse = gamma.inverse()?;
        for z in &points {
            report.min_abs_det = report.min_abs_det.min(gamma.jacobian_det(z)?.norm());
            let back = inverse.eval(&gamma.eval(z)?)?;
            report.max_inverse_residual = report.max_inverse_residual.max(sup_dist(&back, z));
        }
    }
    Ok(report)
}

/// `max_t sup_z ‖γ(t)(z) − γ(t+dt)(z)‖∞` over consecutive times of the grid
/// `0, dt, 2dt, …, 1` and 100 seeded points of the radius-`sample_radius`
/// polydisc. A falsifiable proxy for continuity in the compact-open
/// topology on that polydisc.
pub fn continuity_modulus(path: &HomotopyPath, dt: f64, sample_radius: f64, seed: u64) -> Result<f64> {
    if !(dt > 0.0 && dt <= 1.0) {
        return Err(Error::InvalidArgument(format!("dt must lie in (0, 1], got {dt}")));
    }
    if !(sample_radius >= 0.0 && sample_radius.is_finite()) {
        return Err(Error::InvalidArgument(format!("invalid sample radius {sample_radius}")));
    }
    let points = sample_points(path.dim(), sample_radius, seed);
    let steps = (1.0 / dt - 1e-9).ceil() as usize;
    let time = |i: usize| (i as f64 * dt).min(1.0);

    let images = |t: f64| -> Result<Vec<Vec<Complex64>>> {
        let gamma = path.at(t)?;
        points.iter().map(|z| gamma.eval(z)).collect()
    };
    let mut prev = images(time(0))?;
    let mut modulus: f64 = 0.0;
    for i in 1..=steps {
        let next = images(time(i))?;
        for (a, b) in prev.iter().zip(&next) {
            modulus = modulus.max(sup_dist(a, b));
        }
        prev = next;
    }
    Ok(modulus)
}
