//! Closed forms: channel-space volumes, the volume densities over classical
//! channels, and the marginal and radial laws of states pushed through
//! uniformly random channels.
//!
//! Throughout, `r0` is the Bloch radius of the input state and `ξ` (`xi`)
//! the z-coordinate of the output. Radial laws come from z-marginals through
//! `ρ(r) = −2r f′(r)`, which holds for any rotation-invariant law on the ball.

use std::f64::consts::PI;

use crate::choi::HermitianMatrix;
use crate::error::{check_domain, Error, Result};
use crate::quad::{integrate_with_seams, DEFAULT_TOL};

/// Central-difference step used by [`radial_from_marginal`].
pub const DIFF_STEP: f64 = 1e-5;

/// Volume of the general qubit channels, `2π⁵/4725`.
pub fn vol_general() -> f64 {
    2.0 * PI.powi(5) / 4725.0
}

/// Volume of the unital qubit channels, `8π⁴/945`.
pub fn vol_unital() -> f64 {
    8.0 * PI.powi(4) / 945.0
}

/// Volume density over classical channels `(a, f) ∈ [0,1]²`.
pub fn v_af(a: f64, f: f64) -> Result<f64> {
    check_domain("a", a, 0.0, 1.0)?;
    check_domain("f", f, 0.0, 1.0)?;
    Ok(v_af_unchecked(a, f))
}

/// `v_af` without domain checks, for sampler inner loops.
#[inline]
pub(crate) fn v_af_unchecked(a: f64, f: f64) -> f64 {
    16.0 * PI.powi(5) / 45.0 * v_af_shape(a, f)
}

/// The polynomial part of `v_af`; the branch on `a + f` keeps the smaller of
/// `af` and `(1−a)(1−f)` as the cubed factor.
#[inline]
fn v_af_shape(a: f64, f: f64) -> f64 {
    let (a2, f2) = (1.0 - a, 1.0 - f);
    let (lo, hi) = if a + f <= 1.0 { (a * f, a2 * f2) } else { (a2 * f2, a * f) };
    lo * lo * lo * (lo * lo - 5.0 * lo * hi + 10.0 * hi * hi)
}

/// Lower (`a + f ≤ 1`) and upper branch of `v_af` evaluated as written,
/// irrespective of which one applies. Used to check seam agreement.
pub fn v_af_branches(a: f64, f: f64) -> (f64, f64) {
    let (a2, f2) = (1.0 - a, 1.0 - f);
    let k = 16.0 * PI.powi(5) / 45.0;
    let lower = a.powi(3) * f.powi(3) * (a * a * f * f - 5.0 * a * a2 * f * f2 + 10.0 * a2 * a2 * f2 * f2);
    let upper = a2.powi(3) * f2.powi(3) * (a2 * a2 * f2 * f2 - 5.0 * a * a2 * f * f2 + 10.0 * a * a * f * f);
    (k * lower, k * upper)
}

/// Volume density of unital channels over `a`: `16π⁴/3 · a⁴(1−a)⁴`.
pub fn v_a(a: f64) -> Result<f64> {
    check_domain("a", a, 0.0, 1.0)?;
    let x = a * (1.0 - a);
    Ok(16.0 * PI.powi(4) / 3.0 * x.powi(4))
}

/// Density of the z-coordinate of the image of the maximally mixed state.
pub fn eta_z(z: f64) -> Result<f64> {
    check_domain("z", z, -1.0, 1.0)?;
    let t = z.abs();
    Ok(20.0 / 11.0 * horner(&[1.0, 7.0, 17.0, 7.0, 1.0], t) * (1.0 - t).powi(7))
}

/// Distribution function of [`eta_z`].
pub fn eta_cdf(z: f64) -> Result<f64> {
    check_domain("z", z, -1.0, 1.0)?;
    Ok(cdf_general_tail(z, 0.0))
}

/// Radial law of the image of the maximally mixed state under a uniformly
/// random general channel.
pub fn kappa_mm(r: f64) -> Result<f64> {
    check_domain("r", r, 0.0, 1.0)?;
    Ok(40.0 * r * r * (1.0 - r).powi(6) * horner(&[2.0, 12.0, 6.0, 1.0], r))
}

/// Distribution function of [`kappa_mm`].
pub fn kappa_mm_cdf(r: f64) -> Result<f64> {
    check_domain("r", r, 0.0, 1.0)?;
    Ok(radial_cdf(eta_cdf(r)?, eta_z(r)?, r))
}

/// Mean output radius for the maximally mixed input, `50/143`.
pub fn mean_radius_mm() -> f64 {
    50.0 / 143.0
}

/// z-marginal for a uniformly random unital channel applied to `(0,0,r0)`.
pub fn fz_unital(z: f64, r0: f64) -> Result<f64> {
    check_domain("z", z, -1.0, 1.0)?;
    check_r0_positive(r0)?;
    if z.abs() >= r0 {
        return Ok(0.0);
    }
    let w = r0 * r0 - z * z;
    Ok(315.0 / 256.0 * w.powi(4) / r0.powi(9))
}

/// Distribution function of [`fz_unital`]: the Beta(5,5) distribution
/// function at `(z + r0)/(2 r0)`.
pub fn cdf_z_unital(z: f64, r0: f64) -> Result<f64> {
    check_domain("z", z, -1.0, 1.0)?;
    check_r0_positive(r0)?;
    let x = ((z + r0) / (2.0 * r0)).clamp(0.0, 1.0);
    const BINOM9: [f64; 10] = [1.0, 9.0, 36.0, 84.0, 126.0, 126.0, 84.0, 36.0, 9.0, 1.0];
    Ok((5..=9).map(|j| BINOM9[j] * x.powi(j as i32) * (1.0 - x).powi(9 - j as i32)).sum())
}

/// Radial law after a uniformly random unital channel, input radius `r0`.
pub fn kappa_unital(r: f64, r0: f64) -> Result<f64> {
    check_domain("r", r, 0.0, 1.0)?;
    check_r0_positive(r0)?;
    if r >= r0 {
        return Ok(0.0);
    }
    let w = r0 * r0 - r * r;
    Ok(315.0 / 16.0 * r * r * w.powi(3) / r0.powi(9))
}

pub fn kappa_unital_cdf(r: f64, r0: f64) -> Result<f64> {
    check_domain("r", r, 0.0, 1.0)?;
    check_r0_positive(r0)?;
    Ok(radial_cdf(cdf_z_unital(r, r0)?, fz_unital(r, r0)?, r))
}

/// Mean output radius under unital channels, `63/128 · r0`.
pub fn mean_radius_unital(r0: f64) -> f64 {
    63.0 / 128.0 * r0
}

/// Radial law after a uniformly random general channel, input radius `r0`.
/// At `r0 = 0` this is the continuous extension [`kappa_mm`].
pub fn kappa_general(r: f64, r0: f64) -> Result<f64> {
    check_domain("r", r, 0.0, 1.0)?;
    check_domain("r0", r0, 0.0, 1.0)?;
    if r0 == 0.0 {
        return kappa_mm(r);
    }
    Ok(if r <= r0 {
        kappa_general_inner(r, r0)
    } else {
        kappa_general_outer(r, r0)
    })
}

/// Branch of [`kappa_general`] for `r ≤ r0`, evaluated anywhere.
pub fn kappa_general_inner(r: f64, r0: f64) -> f64 {
    let (r2, s) = (r * r, r0);
    let poly = 21.0 * r2 * r2 - 6.0 * r2 * s * s - 36.0 * r2 * s + s * (2.0 + s * (12.0 + s * (6.0 + s)));
    40.0 * r2 / (s * (1.0 + s).powi(6)) * poly
}

/// Branch of [`kappa_general`] for `r > r0`, evaluated anywhere.
pub fn kappa_general_outer(r: f64, r0: f64) -> f64 {
    let s2 = r0 * r0;
    let poly = 21.0 * s2 * s2 - 6.0 * r * r * s2 - 36.0 * r * s2 + r * (2.0 + r * (12.0 + r * (6.0 + r)));
    40.0 * r * (1.0 - r).powi(6) / (1.0 - s2).powi(6) * poly
}

pub fn kappa_general_cdf(r: f64, r0: f64) -> Result<f64> {
    check_domain("r", r, 0.0, 1.0)?;
    check_domain("r0", r0, 0.0, 1.0)?;
    Ok(radial_cdf(cdf_z_general(r, r0)?, fz_general(r, r0)?, r))
}

/// Mean output radius under general channels, `g(r0) = ∫ r κ(r, r0) dr`.
pub fn mean_radius_general(r0: f64) -> Result<f64> {
    check_domain("r0", r0, 0.0, 1.0)?;
    let integrand = |r: f64| r * kappa_general(r, r0).unwrap_or(0.0);
    Ok(integrate_with_seams(&integrand, 0.0, 1.0, &[r0], DEFAULT_TOL))
}

/// Even z-marginal for a uniformly random general channel applied to
/// `(0,0,r0)`. At `r0 = 0` it reduces to [`eta_z`].
pub fn fz_general(xi: f64, r0: f64) -> Result<f64> {
    check_domain("xi", xi, -1.0, 1.0)?;
    check_domain("r0", r0, 0.0, 1.0)?;
    if r0 == 0.0 {
        return eta_z(xi);
    }
    let x = xi.abs();
    let s = r0;
    let s2 = s * s;
    if x <= s {
        let poly = horner(
            &[
                -s * (6.0 + s * (36.0 + s * (82.0 + s * (72.0 + s * (30.0 + 5.0 * s))))),
                0.0,
                s * (66.0 + s * (396.0 + s * (198.0 + 33.0 * s))),
                0.0,
                -99.0 * s2 - 594.0 * s,
                0.0,
                231.0,
            ],
            x,
        );
        Ok(-10.0 / (33.0 * s * (1.0 + s).powi(6)) * poly)
    } else {
        let poly = horner(
            &[
                3.0 - 22.0 * s2 + 99.0 * s2 * s2,
                21.0 - 154.0 * s2,
                51.0 - 22.0 * s2,
                21.0,
                3.0,
            ],
            x,
        );
        Ok(20.0 * (1.0 - x).powi(7) / (33.0 * (1.0 - s2).powi(6)) * poly)
    }
}

/// `P(z′ < ξ)` for a uniformly random general channel and input `(0,0,r0)`,
/// from the three-region decomposition of the classical square.
pub fn cdf_z_general(xi: f64, r0: f64) -> Result<f64> {
    check_domain("xi", xi, -1.0, 1.0)?;
    check_domain("r0", r0, 0.0, 1.0)?;
    if r0 == 0.0 || xi < -r0 || xi > r0 {
        return Ok(cdf_general_tail(xi, r0));
    }
    Ok(cdf_general_middle(xi, r0))
}

/// CDF pieces for `ξ < −r0` and `ξ > r0`; the second is the reflection of
/// the first.
fn cdf_general_tail(xi: f64, r0: f64) -> f64 {
    if xi < 0.0 {
        cdf_lower_piece(xi, r0)
    } else {
        1.0 - cdf_lower_piece(-xi, r0)
    }
}

fn cdf_lower_piece(xi: f64, r0: f64) -> f64 {
    let s2 = r0 * r0;
    let poly = horner(
        &[33.0 - 198.0 * s2 + 495.0 * s2 * s2, 704.0 * s2 - 144.0, 228.0 - 88.0 * s2, -80.0, 10.0],
        xi,
    );
    poly * (1.0 + xi).powi(8) / (66.0 * (1.0 - s2).powi(6))
}

fn cdf_general_middle(xi: f64, r0: f64) -> f64 {
    let s = r0;
    let poly = horner(
        &[
            -33.0 * s * (1.0 + s).powi(6),
            -s * (120.0 + s * (720.0 + s * (1640.0 + s * (1440.0 + s * (600.0 + 100.0 * s))))),
            0.0,
            s * (440.0 + s * (2640.0 + s * (1320.0 + 220.0 * s))),
            0.0,
            -396.0 * s * s - 2376.0 * s,
            0.0,
            660.0,
        ],
        xi,
    );
    -poly / (66.0 * s * (1.0 + s).powi(6))
}

/// `P(z′ < ξ)` for each of the three regions, evaluated as written
/// regardless of which region `ξ` lies in.
pub fn cdf_z_general_pieces(xi: f64, r0: f64) -> [f64; 3] {
    [
        cdf_lower_piece(xi, r0),
        cdf_general_middle(xi, r0),
        1.0 - cdf_lower_piece(-xi, r0),
    ]
}

/// Radial distribution function from the z-marginal of a rotation-invariant
/// law: integrating `−2s f′(s)` by parts gives `2F(r) − 1 − 2r f(r)`.
pub fn radial_cdf(z_cdf: f64, z_density: f64, r: f64) -> f64 {
    (2.0 * z_cdf - 1.0 - 2.0 * r * z_density).clamp(0.0, 1.0)
}

/// `ρ(r) = −2r f′(r)` with a central difference of step [`DIFF_STEP`],
/// shrunk near the ends so the stencil stays inside `(−1, 1)`.
pub fn radial_from_marginal<F: Fn(f64) -> f64>(f: F, r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain {
            name: "r",
            value: r,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let h = DIFF_STEP.min(0.5 * (1.0 - r));
    let derivative = (f(r + h) - f(r - h)) / (2.0 * h);
    Ok(-2.0 * r * derivative)
}

/// `∫_{⟨x,Tx⟩<ρ} (ρ − ⟨x,Tx⟩)^k dλ_{2n}(x) = πⁿ ρ^{n+k} k! / ((n+k)! det T)`
/// over `x ∈ Cⁿ`, for `n ∈ {1, 2}`.
pub fn ellipsoid_integral<const N: usize>(t: &HermitianMatrix<N>, rho: f64, k: u32) -> Result<f64> {
    if !(1..=2).contains(&N) {
        return Err(Error::UnsupportedSize(N));
    }
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::InvalidArgument(format!("rho must be positive, got {rho}")));
    }
    if !t.is_positive_definite(0.0) {
        return Err(Error::InvalidArgument("T must be positive definite".into()));
    }
    let n = N as i32;
    let factorial = |m: u32| (1..=m).map(f64::from).product::<f64>();
    Ok(PI.powi(n) * rho.powi(n + k as i32) * factorial(k) / (factorial(N as u32 + k) * t.determinant()))
}

/// A density sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityCurve {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    /// Constant the raw formula was divided by.
    pub normalization: f64,
}

impl DensityCurve {
    /// `points` equally spaced abscissae on `[lo, hi]`, values `f(x)/normalization`.
    pub fn tabulate<F: Fn(f64) -> Result<f64>>(
        lo: f64,
        hi: f64,
        points: usize,
        normalization: f64,
        f: F,
    ) -> Result<Self> {
        if points < 2 || !(hi > lo) {
            return Err(Error::InvalidArgument("a curve needs at least two increasing grid points".into()));
        }
        let step = (hi - lo) / (points - 1) as f64;
        let grid: Vec<f64> = (0..points)
            .map(|i| if i + 1 == points { hi } else { lo + step * i as f64 })
            .collect();
        let values = grid
            .iter()
            .map(|&x| f(x).map(|y| y / normalization))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            grid,
            values,
            normalization,
        })
    }
}

fn check_r0_positive(r0: f64) -> Result<()> {
    if r0.is_finite() && r0 > 0.0 && r0 <= 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "r0",
            value: r0,
            lo: 0.0,
            hi: 1.0,
        })
    }
}

/// Polynomial with coefficients in increasing degree.
#[inline]
fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}
