mod common;

use std::f64::consts::PI;

use common::*;
use holoaut::homotopy::{continuity_modulus, path_at, path_det};
use holoaut::{certify_path, BumpFunction, Complex64, HomotopyPath, PolynomialRepr};

fn shear_path() -> HomotopyPath {
    HomotopyPath::overshear(2, 2, PolynomialRepr::variable(2, 1).unwrap(), PolynomialRepr::zero(2)).unwrap()
}

fn swap_path() -> HomotopyPath {
    HomotopyPath::transposition(2, 1, 2, BumpFunction::Sin).unwrap()
}

#[test]
fn overshear_path_examples() {
    let p = shear_path();
    let z = [c(1.0, 0.0), c(2.0, 0.0)];
    assert_eq!(path_at(&p, 0.5).unwrap().eval(&z).unwrap(), vec![c(1.0, 0.0), c(2.5, 0.0)]);
    assert_eq!(path_at(&p, 1.0).unwrap().eval(&z).unwrap(), z.to_vec());
    assert_eq!(path_at(&p, 0.0).unwrap().eval(&z).unwrap(), vec![c(1.0, 0.0), c(3.0, 0.0)]);
}

#[test]
fn closed_form_never_vanishes() {
    let p = swap_path();
    let mut min = f64::INFINITY;
    for i in 0..=100_000 {
        let t = i as f64 / 100_000.0;
        min = min.min(path_det(&p, t).unwrap().norm());
    }
    assert!(min > 0.2, "min |det| = {min}");
    // real part vanishes only at t = 1/2, where the imaginary part is −1/2
    assert!((path_det(&p, 0.5).unwrap() - c(0.0, -0.5)).norm() < 1e-16);
}

#[test]
fn closed_form_matches_difference_quotients() {
    let p = swap_path();
    let origin = [c(0.0, 0.0), c(0.0, 0.0)];
    for i in 0..=1000 {
        let t = i as f64 / 1000.0;
        let gamma = path_at(&p, t).unwrap();
        let fd = gauss_det(fd_jacobian(&gamma, &origin, 1e-6));
        assert!((fd - path_det(&p, t).unwrap()).norm() < 1e-10, "t = {t}");
    }
}

#[test]
fn transposition_certificate_min_det_matches_grid_minimum() {
    let p = swap_path();
    let rep = certify_path(&p, 1001, 2.0, 42).unwrap();
    let oracle = (0..1001)
        .map(|i| {
            let t = i as f64 / 1000.0;
            Complex64::new(2.0 * t - 1.0, -(1.0 - t) * (PI * t).sin()).norm()
        })
        .fold(f64::INFINITY, f64::min);
    assert!((rep.min_abs_det - oracle).abs() < 1e-10);
    assert!(rep.endpoint_err0 < 1e-12 && rep.endpoint_err1 < 1e-12);
}

#[test]
fn overshear_certificate() {
    let rep = certify_path(&shear_path(), 1001, 2.0, 42).unwrap();
    assert!(rep.endpoint_err0 < 1e-12 && rep.endpoint_err1 < 1e-12);
    assert!(rep.min_abs_det > 0.0);
    assert!(rep.max_inverse_residual < 1e-9);
}

#[test]
fn table_bump_paths_certify() {
    let bump = BumpFunction::table(vec![0.0, 0.3, 1.0, -0.2, 0.0]).unwrap();
    let p = HomotopyPath::transposition(3, 2, 3, bump).unwrap();
    let rep = certify_path(&p, 201, 1.5, 3).unwrap();
    assert_eq!(rep.endpoint_err0, 0.0);
    assert_eq!(rep.endpoint_err1, 0.0);
    assert!(rep.min_abs_det > 0.0);
}

#[test]
fn continuity_is_linear_in_dt() {
    for p in [shear_path(), swap_path()] {
        for dt in [1e-2, 5e-3, 2.5e-3] {
            let ratio = continuity_modulus(&p, dt / 2.0, 2.0, 42).unwrap() / continuity_modulus(&p, dt, 2.0, 42).unwrap();
            assert!((0.4..=0.6).contains(&ratio), "dt {dt}: ratio {ratio}");
        }
    }
}

#[test]
fn shear_modulus_tracks_sup_of_f() {
    // with g = 0 the path moves z_2 by dt·z_1 per step
    let m = continuity_modulus(&shear_path(), 1e-3, 2.0, 42).unwrap();
    assert!(m <= 2.0 * 1e-3 * (1.0 + 1e-9));
    assert!(m > 0.5 * 2.0 * 1e-3);
}
