//! Seeded point samplers shared by the randomized checks.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `r·e^{iθ}` with `r` uniform in `[r_min, r_max]` and `θ` uniform.
pub fn annulus_coordinate<R: Rng>(rng: &mut R, r_min: f64, r_max: f64) -> Complex64 {
    let r = rng.random_range(r_min..=r_max);
    let theta = rng.random_range(0.0..TAU);
    Complex64::from_polar(r, theta)
}

pub fn annulus_point<R: Rng>(rng: &mut R, n: usize, r_min: f64, r_max: f64) -> Vec<Complex64> {
    (0..n).map(|_| annulus_coordinate(rng, r_min, r_max)).collect()
}

/// Uniform point of the closed polydisc of the given radius.
pub fn polydisc_point<R: Rng>(rng: &mut R, n: usize, radius: f64) -> Vec<Complex64> {
    (0..n)
        .map(|_| {
            let r = radius * rng.random_range(0.0..=1.0f64).sqrt();
            let theta = rng.random_range(0.0..TAU);
            Complex64::from_polar(r, theta)
        })
        .collect()
}

pub fn angles<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(0.0..TAU)).collect()
}
