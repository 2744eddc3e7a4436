//! Closed-form densities against quadrature and finite differences.

use qcvol_core::analytic::*;
use qcvol_core::quad::integrate_with_seams;

const TOL: f64 = 1e-12;

#[test]
fn densities_are_nonnegative() {
    for i in 0..=200 {
        let x = i as f64 / 200.0;
        let z = 2.0 * x - 1.0;
        assert!(v_a(x).unwrap() >= 0.0);
        assert!(eta_z(z).unwrap() >= 0.0);
        assert!(kappa_mm(x).unwrap() >= 0.0);
        for r0 in [0.05, 0.3, 0.7, 1.0] {
            assert!(kappa_general(x, r0).unwrap() >= 0.0, "{x} {r0}");
            assert!(kappa_unital(x, r0).unwrap() >= 0.0);
            assert!(fz_general(z, r0).unwrap() >= 0.0);
            assert!(fz_unital(z, r0).unwrap() >= 0.0);
        }
        for j in 0..=20 {
            assert!(v_af(x, j as f64 / 20.0).unwrap() >= 0.0);
        }
    }
}

#[test]
fn z_marginals_normalize() {
    for r0 in [0.1, 0.5, 0.9, 1.0] {
        let g = integrate_with_seams(&|z| fz_general(z, r0).unwrap(), -1.0, 1.0, &[-r0, r0], TOL);
        assert!((g - 1.0).abs() < 1e-8, "{r0}: {g}");
        let u = integrate_with_seams(&|z| fz_unital(z, r0).unwrap(), -r0, r0, &[], TOL);
        assert!((u - 1.0).abs() < 1e-8, "{r0}: {u}");
    }
}

#[test]
fn v_af_seam_agreement() {
    for i in 0..100 {
        let a = (i as f64 + 0.5) / 100.0;
        let (lo, hi) = v_af_branches(a, 1.0 - a);
        assert!((lo - hi).abs() < 1e-12, "{a}");
    }
}

#[test]
fn kappa_general_seam_continuity() {
    for i in 0..100 {
        let r0 = (i as f64 + 1.0) / 101.0;
        let gap = (kappa_general_inner(r0, r0) - kappa_general_outer(r0, r0)).abs();
        assert!(gap < 1e-10, "{r0}: {gap}");
    }
}

#[test]
fn radial_laws_follow_from_z_marginals() {
    for r0 in [0.3, 0.7] {
        for i in 1..100 {
            let r = i as f64 / 100.0;
            if (r - r0).abs() < 2.0 * DIFF_STEP {
                continue;
            }
            let from_z = radial_from_marginal(|x| fz_general(x, r0).unwrap(), r).unwrap();
            let direct = kappa_general(r, r0).unwrap();
            assert!((from_z - direct).abs() < 1e-6, "r0 {r0}, r {r}: {from_z} vs {direct}");
        }
    }
    for i in 1..100 {
        let r = i as f64 / 100.0;
        let from_z = radial_from_marginal(|x| fz_unital(x, 1.0).unwrap(), r).unwrap();
        assert!((from_z - kappa_unital(r, 1.0).unwrap()).abs() < 1e-6);
    }
}

#[test]
fn cdfs_integrate_their_densities() {
    for r0 in [0.0, 0.25, 0.6] {
        for i in 0..=20 {
            let x = i as f64 / 20.0;
            let num = integrate_with_seams(&|r| kappa_general(r, r0).unwrap(), 0.0, x, &[r0], TOL);
            assert!((kappa_general_cdf(x, r0).unwrap() - num).abs() < 1e-9);
            let z = 2.0 * x - 1.0;
            let num = integrate_with_seams(&|t| fz_general(t, r0).unwrap(), -1.0, z, &[-r0, r0], TOL);
            assert!((cdf_z_general(z, r0).unwrap() - num).abs() < 1e-9);
        }
    }
    for i in 0..=20 {
        let x = i as f64 / 20.0;
        let num = integrate_with_seams(&|r| kappa_mm(r).unwrap(), 0.0, x, &[], TOL);
        assert!((kappa_mm_cdf(x).unwrap() - num).abs() < 1e-9);
        let num = integrate_with_seams(&|r| kappa_unital(r, 0.8).unwrap(), 0.0, x, &[0.8], TOL);
        assert!((kappa_unital_cdf(x, 0.8).unwrap() - num).abs() < 1e-9);
    }
}

#[test]
fn mean_radii() {
    assert!((mean_radius_mm() - 50.0 / 143.0).abs() < 1e-12);
    for r0 in [0.25, 0.5, 1.0] {
        assert!((mean_radius_unital(r0) - 63.0 / 128.0 * r0).abs() < 1e-12);
    }
    assert!((mean_radius_general(0.0).unwrap() - 50.0 / 143.0).abs() < 1e-9);
    assert!((mean_radius_general(1.0).unwrap() - 35.0 / 64.0).abs() < 1e-9);
}
