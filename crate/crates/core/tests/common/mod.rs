//! Independent oracles and seeded generators shared by the integration
//! tests. Nothing here calls into the code paths it is used to check.
#![allow(dead_code)]

use std::f64::consts::TAU;

use holoaut::{AutomorphismWord, Complex64, GeneratorStep, PolynomialRepr};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sup_dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn sup_norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn gauss_det(mut m: Vec<Vec<Complex64>>) -> Complex64 {
    let n = m.len();
    let mut det = c(1.0, 0.0);
    for k in 0..n {
        let p = (k..n)
            .max_by(|&a, &b| m[a][k].norm().partial_cmp(&m[b][k].norm()).unwrap())
            .unwrap();
        if m[p][k].norm() == 0.0 {
            return c(0.0, 0.0);
        }
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        det *= m[k][k];
        for i in k + 1..n {
            let factor = m[i][k] / m[k][k];
            for j in k..n {
                let v = m[k][j];
                m[i][j] -= factor * v;
            }
        }
    }
    det
}

/// Central finite-difference complex Jacobian of a holomorphic map, using
/// real steps along each coordinate.
pub fn fd_jacobian(w: &AutomorphismWord, z: &[Complex64], h: f64) -> Vec<Vec<Complex64>> {
    let n = z.len();
    let mut jac = vec![vec![c(0.0, 0.0); n]; n];
    for j in 0..n {
        let mut plus = z.to_vec();
        let mut minus = z.to_vec();
        plus[j] += h;
        minus[j] -= h;
        let wp = w.eval(&plus).unwrap();
        let wm = w.eval(&minus).unwrap();
        for i in 0..n {
            jac[i][j] = (wp[i] - wm[i]) / (2.0 * h);
        }
    }
    jac
}

pub fn fd_jacobian_det(w: &AutomorphismWord, z: &[Complex64]) -> Complex64 {
    let h = 1e-6 * sup_norm(z).max(1.0);
    gauss_det(fd_jacobian(w, z, h))
}

/// `(1/2πi)∮ f′/f dz_s` on the circle `z_s = R e^{iθ}` by the trapezoidal
/// rule with `nodes` nodes and a central-difference derivative of step
/// `1e-6·R`. Returns the real part.
pub fn log_derivative_winding(
    w: &AutomorphismWord,
    axis: usize,
    base: &[Complex64],
    radius: f64,
    nodes: usize,
) -> f64 {
    let s = axis - 1;
    let h = 1e-6 * radius;
    let f = |zs: Complex64| {
        let mut z = base.to_vec();
        z[s] = zs;
        w.eval(&z).unwrap()[s]
    };
    let mut acc = c(0.0, 0.0);
    for k in 0..nodes {
        let zs = Complex64::from_polar(radius, TAU * k as f64 / nodes as f64);
        let deriv = (f(zs + h) - f(zs - h)) / (2.0 * h);
        // dz = i z dθ, and the i cancels against 1/(2πi)
        acc += deriv / f(zs) * zs;
    }
    (acc / nodes as f64).re
}

pub fn random_complex<R: Rng>(r: &mut R, max_modulus: f64) -> Complex64 {
    Complex64::from_polar(max_modulus * r.random_range(0.0..=1.0f64), r.random_range(0.0..TAU))
}

pub fn annulus_complex<R: Rng>(r: &mut R, lo: f64, hi: f64) -> Complex64 {
    Complex64::from_polar(r.random_range(lo..=hi), r.random_range(0.0..TAU))
}

pub fn polydisc<R: Rng>(r: &mut R, n: usize, radius: f64) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::from_polar(radius * r.random_range(0.0..=1.0f64).sqrt(), r.random_range(0.0..TAU)))
        .collect()
}

/// Random polynomial in `n` variables avoiding `axis`, up to `max_terms`
/// terms of total degree ≤ `max_degree`, coefficient moduli ≤ `max_coeff`.
pub fn random_poly<R: Rng>(
    r: &mut R,
    n: usize,
    axis: usize,
    max_terms: usize,
    max_degree: u32,
    max_coeff: f64,
) -> PolynomialRepr {
    let terms = r.random_range(0..=max_terms);
    let mut out = Vec::new();
    for _ in 0..terms {
        let mut e = vec![0u32; n];
        let deg = r.random_range(0..=max_degree);
        for _ in 0..deg {
            let mut v = r.random_range(0..n);
            if v == axis - 1 {
                v = (v + 1) % n;
            }
            if n > 1 {
                e[v] += 1;
            }
        }
        out.push((e, random_complex(r, max_coeff)));
    }
    PolynomialRepr::from_terms(n, out).unwrap()
}

/// Random polynomial with at least one nonconstant term of modulus ≥ 0.5.
pub fn random_nonconstant_poly<R: Rng>(r: &mut R, n: usize, axis: usize) -> PolynomialRepr {
    let other = (0..n).find(|&i| i != axis - 1).expect("n ≥ 2");
    let mut e = vec![0u32; n];
    e[other] = r.random_range(1..=2);
    let lead = PolynomialRepr::from_terms(n, [(e, annulus_complex(r, 0.5, 2.0))]).unwrap();
    let rest = random_poly(r, n, axis, 2, 2, 2.0);
    let terms: Vec<_> = lead
        .terms()
        .chain(rest.terms())
        .map(|(e, c)| (e.clone(), *c))
        .collect();
    let p = PolynomialRepr::from_terms(n, terms).unwrap();
    if p.is_constant() {
        lead
    } else {
        p
    }
}

pub fn random_permutation<R: Rng>(r: &mut R, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        let j = r.random_range(0..=i);
        perm.swap(i, j);
    }
    perm
}

pub fn random_diagonal<R: Rng>(r: &mut R, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| annulus_complex(r, 0.5, 2.0)).collect()
}

/// Well-conditioned random matrix: identity plus a bounded perturbation.
pub fn random_linear<R: Rng>(r: &mut R, n: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(n, n, |i, j| {
        let base = if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) };
        base + random_complex(r, 0.6)
    })
}

/// Step drawn from the full generator mix.
pub fn random_step<R: Rng>(r: &mut R, n: usize) -> GeneratorStep {
    match r.random_range(0..5) {
        0 => {
            let axis = r.random_range(1..=n);
            GeneratorStep::Overshear {
                axis,
                f: random_poly(r, n, axis, 2, 2, 2.0),
                g: random_poly(r, n, axis, 2, 2, 0.5),
            }
        }
        1 => GeneratorStep::Permutation {
            perm: random_permutation(r, n),
        },
        2 => GeneratorStep::Diagonal {
            lambda: random_diagonal(r, n),
        },
        3 => GeneratorStep::Linear {
            matrix: random_linear(r, n),
        },
        _ => GeneratorStep::Inversion {
            axis: r.random_range(1..=n),
        },
    }
}

pub fn random_word<R: Rng>(r: &mut R, n: usize, max_steps: usize) -> AutomorphismWord {
    loop {
        let len = r.random_range(1..=max_steps);
        let steps = (0..len).map(|_| random_step(r, n)).collect();
        if let Ok(w) = AutomorphismWord::new(n, steps) {
            return w;
        }
    }
}

/// Whether every inversion along the orbit of `z` sees a coordinate of
/// modulus above `margin`, and the orbit stays bounded by `cap`.
pub fn well_inside(w: &AutomorphismWord, z: &[Complex64], margin: f64, cap: f64) -> bool {
    let mut cur = z.to_vec();
    for step in w.steps() {
        if let GeneratorStep::Inversion { axis } = step {
            if cur[axis - 1].norm() <= margin {
                return false;
            }
        }
        let single = AutomorphismWord::single(w.dim(), step.clone()).unwrap();
        cur = match single.eval(&cur) {
            Ok(v) => v,
            Err(_) => return false,
        };
        if sup_norm(&cur) > cap {
            return false;
        }
    }
    true
}

/// Admissible points of the radius-`radius` polydisc for `w`.
pub fn admissible_points<R: Rng>(r: &mut R, w: &AutomorphismWord, count: usize, radius: f64) -> Vec<Vec<Complex64>> {
    let mut out = Vec::with_capacity(count);
    let mut tries = 0;
    while out.len() < count && tries < 100_000 {
        tries += 1;
        let z = polydisc(r, w.dim(), radius);
        if well_inside(w, &z, 0.1, 1e6) {
            out.push(z);
        }
    }
    out
}

/// Word of Diagonal and Inversion steps.
pub fn random_diag_inversion_word<R: Rng>(r: &mut R, n: usize, max_steps: usize) -> AutomorphismWord {
    let len = r.random_range(1..=max_steps);
    let steps = (0..len)
        .map(|_| {
            if r.random_bool(0.5) {
                GeneratorStep::Inversion {
                    axis: r.random_range(1..=n),
                }
            } else {
                GeneratorStep::Diagonal {
                    lambda: random_diagonal(r, n),
                }
            }
        })
        .collect();
    AutomorphismWord::new(n, steps).unwrap()
}

/// Winding of coordinate `axis` for a Diagonal/Inversion word, read off
/// combinatorially: each inversion of that axis flips the orientation.
pub fn expected_diag_inversion_index(w: &AutomorphismWord, axis: usize) -> i64 {
    let flips = w
        .steps()
        .iter()
        .filter(|s| matches!(s, GeneratorStep::Inversion { axis: a } if *a == axis))
        .count();
    if flips % 2 == 0 {
        1
    } else {
        -1
    }
}
