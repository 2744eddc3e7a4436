//! Oracles shared by the integration suites.
#![allow(dead_code)]

use qcvol_core::{Complex, HermitianMatrix, RngStream};

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations on its real
/// symmetric embedding `[[Re, −Im], [Im, Re]]`. Every eigenvalue appears
/// twice in the embedding; one copy of each is returned, ascending.
pub fn hermitian_eigenvalues<const N: usize>(m: &HermitianMatrix<N>) -> Vec<f64> {
    let n = 2 * N;
    let mut a = vec![vec![0.0; n]; n];
    for i in 0..N {
        for j in 0..N {
            let z = m.entry(i, j);
            a[i][j] = z.re;
            a[i + N][j + N] = z.re;
            a[i][j + N] = -z.im;
            a[i + N][j] = z.im;
        }
    }
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(f64::total_cmp);
    ev.into_iter().step_by(2).collect()
}

/// Random Hermitian matrix with entries of order one; `shift` is added to
/// the diagonal so that roughly half of the draws are positive definite.
pub fn random_hermitian<const N: usize>(rng: &mut RngStream, shift: f64) -> HermitianMatrix<N> {
    let mut m = HermitianMatrix::<N>::zeros();
    for i in 0..N {
        m.set(i, i, Complex::new(rng.normal() + shift, 0.0));
        for j in i + 1..N {
            m.set(i, j, Complex::new(rng.normal(), rng.normal()) * 0.5);
        }
    }
    m
}

/// `B*B + ε I`, always positive definite.
pub fn random_positive<const N: usize>(rng: &mut RngStream, eps: f64) -> HermitianMatrix<N> {
    let b: Vec<Vec<Complex>> = (0..N)
        .map(|_| (0..N).map(|_| Complex::new(rng.normal(), rng.normal())).collect())
        .collect();
    let mut m = HermitianMatrix::<N>::zeros();
    for i in 0..N {
        for j in i..N {
            let z: Complex = (0..N).map(|k| b[k][i].conj() * b[k][j]).sum();
            let z = if i == j { z + eps } else { z };
            m.set(i, j, z);
        }
    }
    m
}

/// `⟨x, Mx⟩` for a Hermitian matrix.
pub fn quadratic_form<const N: usize>(m: &HermitianMatrix<N>, x: &[Complex; N]) -> f64 {
    let mut s = Complex::new(0.0, 0.0);
    for i in 0..N {
        for j in 0..N {
            s += x[i].conj() * m.entry(i, j) * x[j];
        }
    }
    s.re
}
