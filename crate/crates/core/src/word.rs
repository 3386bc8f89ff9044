//! Automorphism words: finite compositions of explicit generators.
//!
//! Steps are applied left to right, so the first listed step acts first.
//! All coordinate indices (axes, permutation entries) are 1-based.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{check_dim, Error, Result};
use crate::poly::PolynomialRepr;

/// Tolerance on `|det|` of a row-normalized linear step.
pub const DET_TOLERANCE: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorStep {
    /// `z_axis ↦ f(z′) + exp(g(z′))·z_axis`; `f` and `g` are polynomials in
    /// all `n` variables that do not reference `axis`.
    Overshear {
        axis: usize,
        f: PolynomialRepr,
        g: PolynomialRepr,
    },
    /// Output coordinate `i` is input coordinate `perm[i - 1]`.
    Permutation { perm: Vec<usize> },
    Diagonal { lambda: Vec<Complex64> },
    Linear { matrix: DMatrix<Complex64> },
    /// `z_axis ↦ 1 / z_axis`.
    Inversion { axis: usize },
}

impl GeneratorStep {
    /// Shear `z_axis ↦ f(z′) + z_axis`.
    pub fn shear(axis: usize, f: PolynomialRepr) -> Self {
        let n = f.n_vars();
        GeneratorStep::Overshear {
            axis,
            f,
            g: PolynomialRepr::zero(n),
        }
    }

    pub fn transposition(n: usize, j: usize, k: usize) -> Self {
        let mut perm: Vec<usize> = (1..=n).collect();
        perm.swap(j - 1, k - 1);
        GeneratorStep::Permutation { perm }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            GeneratorStep::Overshear { .. } => "overshear",
            GeneratorStep::Permutation { .. } => "permutation",
            GeneratorStep::Diagonal { .. } => "diagonal",
            GeneratorStep::Linear { .. } => "linear",
            GeneratorStep::Inversion { .. } => "inversion",
        }
    }

    /// Checks every invariant of the step against ambient dimension `n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        let axis_ok = |axis: usize| {
            if axis >= 1 && axis <= n {
                Ok(())
            } else {
                Err(Error::InvalidStep(format!("axis {axis} out of range 1..={n}")))
            }
        };
        match self {
            GeneratorStep::Overshear { axis, f, g } => {
                axis_ok(*axis)?;
                for (name, p) in [("f", f), ("g", g)] {
                    if p.n_vars() != n {
                        return Err(Error::InvalidStep(format!(
                            "overshear {name} has {} variables, expected {n}",
                            p.n_vars()
                        )));
                    }
                    if p.references(*axis) {
                        return Err(Error::InvalidStep(format!(
                            "overshear {name} depends on its own axis {axis}"
                        )));
                    }
                }
                Ok(())
            }
            GeneratorStep::Permutation { perm } => {
                check_dim(n, perm.len())?;
                let mut seen = vec![false; n];
                for &p in perm {
                    if p == 0 || p > n || seen[p - 1] {
                        return Err(Error::InvalidStep(format!(
                            "{perm:?} is not a permutation of 1..={n}"
                        )));
                    }
                    seen[p - 1] = true;
                }
                Ok(())
            }
            GeneratorStep::Diagonal { lambda } => {
                check_dim(n, lambda.len())?;
                if lambda.iter().any(|l| *l == ZERO || !is_finite(*l)) {
                    return Err(Error::InvalidStep(
                        "diagonal entries must be finite and nonzero".into(),
                    ));
                }
                Ok(())
            }
            GeneratorStep::Linear { matrix } => {
                check_dim(n, matrix.nrows())?;
                check_dim(n, matrix.ncols())?;
                if matrix.iter().any(|c| !is_finite(*c)) {
                    return Err(Error::InvalidStep("non-finite matrix entry".into()));
                }
                if !linear_is_invertible(matrix) {
                    return Err(Error::InvalidStep(
                        "linear step is singular (|det| below tolerance)".into(),
                    ));
                }
                Ok(())
            }
            GeneratorStep::Inversion { axis } => axis_ok(*axis),
        }
    }

    /// Applies the step in place. `index` only labels errors.
    fn apply(&self, index: usize, z: &mut [Complex64]) -> Result<()> {
        match self {
            GeneratorStep::Overshear { axis, f, g } => {
                let a = axis - 1;
                let fv = f.eval_unchecked(z);
                let gv = g.eval_unchecked(z);
                z[a] = fv + gv.exp() * z[a];
            }
            GeneratorStep::Permutation { perm } => {
                let src = z.to_vec();
                for (out, &p) in z.iter_mut().zip(perm) {
                    *out = src[p - 1];
                }
            }
            GeneratorStep::Diagonal { lambda } => {
                for (x, l) in z.iter_mut().zip(lambda) {
                    *x *= l;
                }
            }
            GeneratorStep::Linear { matrix } => {
                let src = z.to_vec();
                for (i, out) in z.iter_mut().enumerate() {
                    *out = src
                        .iter()
                        .enumerate()
                        .map(|(j, x)| matrix[(i, j)] * x)
                        .sum();
                }
            }
            GeneratorStep::Inversion { axis } => {
                let a = axis - 1;
                if z[a] == ZERO {
                    return Err(Error::SingularPoint {
                        step: index,
                        axis: *axis,
                    });
                }
                z[a] = z[a].inv();
            }
        }
        Ok(())
    }

    /// Jacobian determinant of the step at the incoming point `z`.
    fn jacobian_det(&self, index: usize, z: &[Complex64]) -> Result<Complex64> {
        Ok(match self {
            GeneratorStep::Overshear { g, .. } => g.eval_unchecked(z).exp(),
            GeneratorStep::Permutation { perm } => {
                if permutation_sign(perm) > 0 {
                    ONE
                } else {
                    -ONE
                }
            }
            GeneratorStep::Diagonal { lambda } => lambda.iter().product(),
            GeneratorStep::Linear { matrix } => matrix.clone().determinant(),
            GeneratorStep::Inversion { axis } => {
                let x = z[axis - 1];
                if x == ZERO {
                    return Err(Error::SingularPoint {
                        step: index,
                        axis: *axis,
                    });
                }
                -(x * x).inv()
            }
        })
    }

    /// Inverse as a short sequence of steps. An overshear inverts to the
    /// shear `z_axis ↦ z_axis − f` followed by the dilation
    /// `z_axis ↦ exp(−g)·z_axis`; either half is omitted when trivial.
    fn inverse(&self, index: usize) -> Result<Vec<GeneratorStep>> {
        Ok(match self {
            GeneratorStep::Overshear { axis, f, g } => {
                let n = f.n_vars();
                let mut out = Vec::with_capacity(2);
                if !f.is_zero() || g.is_zero() {
                    out.push(GeneratorStep::Overshear {
                        axis: *axis,
                        f: f.scale(-ONE),
                        g: PolynomialRepr::zero(n),
                    });
                }
                if !g.is_zero() {
                    out.push(GeneratorStep::Overshear {
                        axis: *axis,
                        f: PolynomialRepr::zero(n),
                        g: g.scale(-ONE),
                    });
                }
                out
            }
            GeneratorStep::Permutation { perm } => {
                let mut inv = vec![0; perm.len()];
                for (i, &p) in perm.iter().enumerate() {
                    inv[p - 1] = i + 1;
                }
                vec![GeneratorStep::Permutation { perm: inv }]
            }
            GeneratorStep::Diagonal { lambda } => vec![GeneratorStep::Diagonal {
                lambda: lambda.iter().map(|l| l.inv()).collect(),
            }],
            GeneratorStep::Linear { matrix } => {
                if !linear_is_invertible(matrix) {
                    return Err(Error::NonInvertibleStep { step: index });
                }
                let inv = matrix
                    .clone()
                    .try_inverse()
                    .ok_or(Error::NonInvertibleStep { step: index })?;
                vec![GeneratorStep::Linear { matrix: inv }]
            }
            GeneratorStep::Inversion { axis } => vec![GeneratorStep::Inversion { axis: *axis }],
        })
    }
}

fn is_finite(c: Complex64) -> bool {
    c.re.is_finite() && c.im.is_finite()
}

/// `|det|` after scaling every row to unit Euclidean norm.
pub fn scaled_abs_det(matrix: &DMatrix<Complex64>) -> f64 {
    let mut m = matrix.clone();
    for mut row in m.row_iter_mut() {
        let norm = row.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        row.iter_mut().for_each(|c| *c /= norm);
    }
    m.determinant().norm()
}

fn linear_is_invertible(matrix: &DMatrix<Complex64>) -> bool {
    scaled_abs_det(matrix) >= DET_TOLERANCE
}

/// Sign of a 1-based permutation, by cycle decomposition.
pub(crate) fn permutation_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i] - 1;
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// A finite composition of generator steps acting on `C^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct AutomorphismWord {
    n: usize,
    steps: Vec<GeneratorStep>,
}

impl AutomorphismWord {
    pub fn identity(n: usize) -> Self {
        AutomorphismWord { n, steps: Vec::new() }
    }

    pub fn new(n: usize, steps: Vec<GeneratorStep>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidStep("dimension must be positive".into()));
        }
        for step in &steps {
            step.validate(n)?;
        }
        Ok(AutomorphismWord { n, steps })
    }

    pub fn single(n: usize, step: GeneratorStep) -> Result<Self> {
        Self::new(n, vec![step])
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> &[GeneratorStep] {
        &self.steps
    }

    pub fn is_identity_word(&self) -> bool {
        self.steps.is_empty()
    }

    /// Image of `z`, applying steps in order.
    pub fn eval(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        check_dim(self.n, z.len())?;
        let mut w = z.to_vec();
        for (i, step) in self.steps.iter().enumerate() {
            step.apply(i, &mut w)?;
        }
        Ok(w)
    }

    /// The point entering each step, followed by the final image.
    pub fn orbit(&self, z: &[Complex64]) -> Result<Vec<Vec<Complex64>>> {
        check_dim(self.n, z.len())?;
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut w = z.to_vec();
        for (i, step) in self.steps.iter().enumerate() {
            out.push(w.clone());
            step.apply(i, &mut w)?;
        }
        out.push(w);
        Ok(out)
    }

    /// `z ↦ other(self(z))`.
    pub fn compose(&self, other: &AutomorphismWord) -> Result<AutomorphismWord> {
        check_dim(self.n, other.n)?;
        let mut steps = self.steps.clone();
        steps.extend(other.steps.iter().cloned());
        Ok(AutomorphismWord { n: self.n, steps })
    }

    /// Steps reversed, each replaced by its inverse.
    pub fn inverse(&self) -> Result<AutomorphismWord> {
        let mut steps = Vec::with_capacity(self.steps.len());
        for (i, step) in self.steps.iter().enumerate().rev() {
            steps.extend(step.inverse(i)?);
        }
        Ok(AutomorphismWord { n: self.n, steps })
    }

    /// Jacobian determinant at `z` by the chain rule along the orbit.
    pub fn jacobian_det(&self, z: &[Complex64]) -> Result<Complex64> {
        check_dim(self.n, z.len())?;
        let mut w = z.to_vec();
        let mut det = ONE;
        for (i, step) in self.steps.iter().enumerate() {
            det *= step.jacobian_det(i, &w)?;
            step.apply(i, &mut w)?;
        }
        Ok(det)
    }
}
