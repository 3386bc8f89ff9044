//! Winding index of a word's `s`-th component along a circle in the
//! complex line through `p` orthogonal to `{z_s = 0}`.
//!
//! The integer `(1/2πi)∮ f′/f dz_s` is computed by continuous argument
//! tracking rather than quadrature: sample the circle, bisect every interval
//! on which the argument moves by π/2 or more, then sum principal-value
//! increments. An interval is accepted only after its midpoint confirms the
//! increment, so whole-turn aliasing between samples is caught. The index is constant on connected components of the
//! automorphism group, and the inversion `z_s ↦ 1/z_s` has index −1 while
//! the identity has +1.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;

use crate::domain::{DomainKind, DomainSpec};
use crate::error::{check_dim, Error, Result};
use crate::word::AutomorphismWord;

pub const INITIAL_SAMPLES: usize = 64;
pub const SAMPLE_BUDGET: usize = 1 << 20;
pub const ZERO_THRESHOLD: f64 = 1e-13;

/// Circle `θ ↦ (p_1, …, R·e^{iθ}, …, p_n)` in slot `axis`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourSpec {
    domain: DomainSpec,
    axis: usize,
    base_point: Vec<Complex64>,
    radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexResult {
    pub index: i64,
    /// Total argument change divided by 2π, before rounding.
    pub raw: f64,
    pub samples_used: usize,
}

impl ContourSpec {
    pub fn new(domain: DomainSpec, axis: usize, base_point: Vec<Complex64>, radius: f64) -> Result<Self> {
        if domain.kind() != DomainKind::HyperplaneComplement {
            return Err(Error::InvalidDomain(format!(
                "contours need a hyperplane complement, got {domain}"
            )));
        }
        check_dim(domain.dim(), base_point.len())?;
        if !domain.is_deleted(axis) {
            return Err(Error::InvalidAxis { axis });
        }
        if !domain.contains(&base_point)? {
            return Err(Error::OutsideDomain);
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidArgument(format!("radius must be positive, got {radius}")));
        }
        if base_point.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::InvalidArgument("base point must be finite".into()));
        }
        Ok(ContourSpec {
            domain,
            axis,
            base_point,
            radius,
        })
    }

    pub fn domain(&self) -> &DomainSpec {
        &self.domain
    }

    pub fn axis(&self) -> usize {
        self.axis
    }

    pub fn base_point(&self) -> &[Complex64] {
        &self.base_point
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Same line and center with a different radius.
    pub fn with_radius(&self, radius: f64) -> Result<Self> {
        Self::new(self.domain.clone(), self.axis, self.base_point.clone(), radius)
    }

    pub fn point(&self, theta: f64) -> Vec<Complex64> {
        let mut z = self.base_point.clone();
        z[self.axis - 1] = Complex64::from_polar(self.radius, theta);
        z
    }
}

pub fn make_contour(d: &DomainSpec, s: usize, p: Vec<Complex64>, radius: f64) -> Result<ContourSpec> {
    ContourSpec::new(d.clone(), s, p, radius)
}

pub fn winding_index(w: &AutomorphismWord, c: &ContourSpec) -> Result<IndexResult> {
    winding_index_with_budget(w, c, SAMPLE_BUDGET)
}

struct Interval {
    a: f64,
    va: Complex64,
    b: f64,
    vb: Complex64,
}

pub fn winding_index_with_budget(w: &AutomorphismWord, c: &ContourSpec, budget: usize) -> Result<IndexResult> {
    check_dim(c.domain.dim(), w.dim())?;
    let slot = c.axis - 1;
    let mut samples = 0usize;
    let mut sample = |theta: f64| -> Result<Complex64> {
        if samples >= budget {
            return Err(Error::BudgetExhausted { samples });
        }
        samples += 1;
        let v = w.eval(&c.point(theta))?[slot];
        if v.norm() < ZERO_THRESHOLD || !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::ZeroOnContour { theta });
        }
        Ok(v)
    };

    let nodes: Vec<f64> = (0..INITIAL_SAMPLES)
        .map(|k| TAU * k as f64 / INITIAL_SAMPLES as f64)
        .collect();
    let values = nodes.iter().map(|&t| sample(t)).collect::<Result<Vec<_>>>()?;

    let mut total = 0.0;
    let mut stack: Vec<Interval> = Vec::new();
    for k in 0..INITIAL_SAMPLES {
        // the last interval closes on the first sample
        let (b, vb) = if k + 1 < INITIAL_SAMPLES {
            (nodes[k + 1], values[k + 1])
        } else {
            (TAU, values[0])
        };
        stack.push(Interval {
            a: nodes[k],
            va: values[k],
            b,
            vb,
        });
        while let Some(iv) = stack.pop() {
            let increment = (iv.vb * iv.va.conj()).arg();
            let mid = 0.5 * (iv.a + iv.b);
            if mid <= iv.a || mid >= iv.b {
                return Err(Error::BudgetExhausted { samples });
            }
            let vm = sample(mid)?;
            if increment.abs() < FRAC_PI_2 {
                // accept only if the midpoint confirms the increment; this
                // rejects intervals where the argument aliased by whole turns
                let left = (vm * iv.va.conj()).arg();
                let right = (iv.vb * vm.conj()).arg();
                if left.abs() < FRAC_PI_2
                    && right.abs() < FRAC_PI_2
                    && (left + right - increment).abs() < 1e-9
                {
                    total += left + right;
                    continue;
                }
            }
            stack.push(Interval {
                a: mid,
                va: vm,
                b: iv.b,
                vb: iv.vb,
            });
            stack.push(Interval {
                a: iv.a,
                va: iv.va,
                b: mid,
                vb: vm,
            });
        }
    }

    let raw = total / TAU;
    Ok(IndexResult {
        index: raw.round() as i64,
        raw,
        samples_used: samples,
    })
}

/// Membership in the set of automorphisms with negative winding index.
pub fn in_negative_component(w: &AutomorphismWord, c: &ContourSpec) -> Result<bool> {
    Ok(winding_index(w, c)?.index < 0)
}
