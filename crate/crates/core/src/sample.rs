//! Lebesgue-uniform samplers for general and unital qubit channels.
//!
//! Two independent constructions per family:
//!
//! * **Rejection**: propose `(a, f)` uniformly on the unit square and every
//!   complex entry uniformly on a disk that contains its feasible range, keep
//!   the proposal iff all leading minors of the permuted Choi matrix are
//!   positive. Coordinates are drawn lazily so that hopeless proposals are
//!   discarded early; the accepted set is unchanged.
//! * **Sequential**: factor the uniform law along the bordered-determinant
//!   chain `A₂ → A₃ → A₄` and draw each stage from its exact conditional.
//!
//! For general channels (`A = U*QU`, `x = (b, ē)`, `y = (d, g)`):
//!
//! ```text
//! (a, f)        ∝ v_af(a, f)
//! |c|²  | a,f   ∝ (a₂f₂ − |c|²)² (af − |c|²)²      on |c|² ≤ min(af, a₂f₂)
//! x     | a,f,c ∝ R₂ − ⟨x, T₂x⟩                    on ⟨x, T₂x⟩ ≤ R₂
//! y′    | rest  uniform                            on ⟨y′, T₃y′⟩ ≤ R₃
//! ```
//!
//! and for unital channels (`w = (b̄, c̄)`):
//!
//! ```text
//! a           ~ Beta(5, 5)
//! |e|²  | a   ∝ a₂² − |e|²                         on |e| ≤ a₂
//! w     | a,e ∝ (R₂ − ⟨w, T₂w⟩)²                   on ⟨w, T₂w⟩ ≤ R₂
//! d′    | rest  uniform on |d′| ≤ det A₃ / det A₂
//! ```

use std::f64::consts::TAU;
use std::sync::OnceLock;

use rand_distr::Beta;

use crate::analytic::v_af_unchecked;
use crate::choi::{
    permute_general, permute_unital, Complex, GeneralChannelParams, HermitianMatrix4,
    UnitalChannelParams,
};
use crate::rng::RngStream;

const ZERO: Complex = Complex::new(0.0, 0.0);

/// Bisection tolerance for polynomial inverse CDFs.
pub const BISECTION_TOL: f64 = 1e-12;

/// Lebesgue measure `λ₁₂` of the general rejection proposal:
/// `[0,1]² × disk(½)³ × disk(1)²`.
pub fn general_box_volume() -> f64 {
    let quarter_disk = std::f64::consts::PI / 4.0;
    quarter_disk.powi(3) * std::f64::consts::PI.powi(2)
}

/// Lebesgue measure `λ₉` of the unital rejection proposal:
/// `[0,1] × disk(½)² × disk(1)²`.
pub fn unital_box_volume() -> f64 {
    let quarter_disk = std::f64::consts::PI / 4.0;
    quarter_disk.powi(2) * std::f64::consts::PI.powi(2)
}

/// One proposal of the general rejection sampler.
///
/// `(a, f)` uniform, `b, c, g` on disks of radius ½ and `d, e` on disks of
/// radius 1; returns the proposal if it is an interior point of the channel
/// body.
#[inline]
pub fn propose_general(rng: &mut RngStream) -> Option<GeneralChannelParams> {
    let a = rng.uniform();
    let f = rng.uniform();
    let c = rng.disk(0.5);
    let c2 = c.norm_sqr();
    // order-2 minor of A, and the complementary principal minor |c|² < a₂f₂
    if !(a * f > c2 && (1.0 - a) * (1.0 - f) > c2) {
        return None;
    }
    let b = rng.disk(0.5);
    let e = rng.disk(1.0);
    let mut p = GeneralChannelParams::new(a, f, b, c, ZERO, e, ZERO);
    if !(permute_general(&p.choi()).leading_minor(3) > 0.0) {
        return None;
    }
    p.d = rng.disk(1.0);
    p.g = rng.disk(0.5);
    let m = permute_general(&p.choi());
    (m.leading_minor(1) > 0.0 && m.leading_minor(4) > 0.0).then_some(p)
}

/// One proposal of the unital rejection sampler: `a` uniform, `b, c` on
/// disks of radius ½, `d, e` on disks of radius 1.
#[inline]
pub fn propose_unital(rng: &mut RngStream) -> Option<UnitalChannelParams> {
    let a = rng.uniform();
    let a2 = 1.0 - a;
    let e = rng.disk(1.0);
    if !(a2 * a2 > e.norm_sqr() && a2 > 0.0) {
        return None;
    }
    let b = rng.disk(0.5);
    let c = rng.disk(0.5);
    let mut p = UnitalChannelParams::new(a, b, c, ZERO, e);
    if !(permute_unital(&p.choi()).leading_minor(3) > 0.0) {
        return None;
    }
    p.d = rng.disk(1.0);
    let m = permute_unital(&p.choi());
    (m.leading_minor(4) > 0.0).then_some(p)
}

pub fn rejection_sample_general(rng: &mut RngStream) -> GeneralChannelParams {
    loop {
        if let Some(p) = propose_general(rng) {
            return p;
        }
    }
}

pub fn rejection_sample_unital(rng: &mut RngStream) -> UnitalChannelParams {
    loop {
        if let Some(p) = propose_unital(rng) {
            return p;
        }
    }
}

/// Exact sequential sampler for general channels.
pub fn sequential_sample_general(rng: &mut RngStream) -> GeneralChannelParams {
    loop {
        if let Some(p) = sequential_general_attempt(rng) {
            return p;
        }
    }
}

/// One pass through the conditional chain; `None` on a probability-zero
/// degenerate stage.
fn sequential_general_attempt(rng: &mut RngStream) -> Option<GeneralChannelParams> {
    let (a, f) = sample_classical_general(rng);
    let (a2, f2) = (1.0 - a, 1.0 - f);
    if !(a > 0.0 && a2 > 0.0 && f > 0.0 && f2 > 0.0) {
        return None;
    }

    // |c|² from (P − u)²(Q − u)² on [0, min(P, Q)]
    let (p_low, q_low) = (a * f, a2 * f2);
    let c_abs2 = sample_c_modulus_sq(p_low, q_low, rng.uniform());
    let c = Complex::from_polar(c_abs2.sqrt(), TAU * rng.uniform());
    let det_a2 = a * f - c.norm_sqr();
    if !(det_a2 > 0.0 && q_low - c.norm_sqr() > 0.0) {
        return None;
    }

    // x = (b, ē) with density ∝ (R₂ − ⟨x,T₂x⟩) on the T₂-ellipsoid
    let r2 = a2 * det_a2;
    let t2 = herm2(f, -c, a);
    let s = invert_monotone(|s| s * s * (3.0 - 2.0 * s), rng.uniform());
    let x = ellipsoid_point(&t2, r2 * s, rng)?;
    let (b, e) = (x[0], x[1].conj());
    let det_a3 = r2 - hermitian_form2(&t2, &x);
    if !(det_a3 > 0.0) {
        return None;
    }

    // y′ = (d′, g′) uniform on ⟨y′,T₃y′⟩ ≤ R₃, R₃ = det A₃ (f₂ − |c|²/a₂)
    let r3 = det_a3 * (f2 - c.norm_sqr() / a2);
    if !(r3 > 0.0) {
        return None;
    }
    let t3 = herm2(a2 * f - e.norm_sqr(), b * e - a2 * c, a * a2 - b.norm_sqr());
    let radius_sq = rng.uniform().sqrt(); // radius density ∝ ρ³ on the unit 4-ball
    let y = ellipsoid_point(&t3, r3 * radius_sq, rng)?;
    let d = y[0] - b * c / a2;
    let g = y[1] - c * e.conj() / a2;
    Some(GeneralChannelParams::new(a, f, b, c, d, e, g))
}

/// Exact sequential sampler for unital channels.
pub fn sequential_sample_unital(rng: &mut RngStream) -> UnitalChannelParams {
    loop {
        if let Some(p) = sequential_unital_attempt(rng) {
            return p;
        }
    }
}

fn sequential_unital_attempt(rng: &mut RngStream) -> Option<UnitalChannelParams> {
    let beta = Beta::new(5.0, 5.0).expect("valid Beta parameters");
    let a: f64 = rng.sample(beta);
    let a2 = 1.0 - a;
    if !(a > 0.0 && a2 > 0.0) {
        return None;
    }

    // |e|² with density ∝ (a₂² − u) on [0, a₂²]: closed-form inverse CDF
    let u = rng.uniform();
    let e_abs2 = a2 * a2 * (1.0 - (1.0 - u).sqrt());
    let e = Complex::from_polar(e_abs2.sqrt(), TAU * rng.uniform());
    let det_a2 = a2 * a2 - e.norm_sqr();
    if !(det_a2 > 0.0) {
        return None;
    }

    // w = (b̄, c̄) with density ∝ (R₂ − ⟨w,T₂w⟩)²
    let r2 = a * det_a2;
    let t2 = herm2(a2, -e, a2);
    let s = invert_monotone(|s| s * s * (6.0 - 8.0 * s + 3.0 * s * s), rng.uniform());
    let w = ellipsoid_point(&t2, r2 * s, rng)?;
    let (b, c) = (w[0].conj(), w[1].conj());
    let det_a3 = r2 - hermitian_form2(&t2, &w);
    if !(det_a3 > 0.0) {
        return None;
    }

    let d_shifted = rng.disk(det_a3 / det_a2);
    let shift = (2.0 * b * c * a2 - e.conj() * c * c - b * b * e) / det_a2;
    Some(UnitalChannelParams::new(a, b, c, d_shifted - shift, e))
}

/// Stage 1 of the general chain: `(a, f)` from the normalized `v_af` by
/// rejection under a constant majorant.
pub fn sample_classical_general(rng: &mut RngStream) -> (f64, f64) {
    let ceiling = v_af_majorant();
    loop {
        let a = rng.uniform();
        let f = rng.uniform();
        if ceiling * rng.uniform() < v_af_unchecked(a, f) {
            return (a, f);
        }
    }
}

/// Upper bound on `v_af` over the unit square, located once by a grid
/// search and a shrinking pattern search, with a small relative margin.
pub fn v_af_majorant() -> f64 {
    static CEILING: OnceLock<f64> = OnceLock::new();
    *CEILING.get_or_init(|| {
        const GRID: usize = 200;
        let mut best = (0.0, 0.5, 0.5);
        for i in 0..=GRID {
            for j in 0..=GRID {
                let (a, f) = (i as f64 / GRID as f64, j as f64 / GRID as f64);
                let v = v_af_unchecked(a, f);
                if v > best.0 {
                    best = (v, a, f);
                }
            }
        }
        let (mut v, mut a, mut f) = best;
        let mut step = 1.0 / GRID as f64;
        while step > 1e-12 {
            let mut moved = false;
            for (da, df) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
                let (na, nf) = ((a + da).clamp(0.0, 1.0), (f + df).clamp(0.0, 1.0));
                let nv = v_af_unchecked(na, nf);
                if nv > v {
                    (v, a, f, moved) = (nv, na, nf, true);
                }
            }
            if !moved {
                step *= 0.5;
            }
        }
        v * (1.0 + 1e-9)
    })
}

/// `u = |c|²` for stage 2: inverts `F(u) = ∫₀ᵘ (P−t)²(Q−t)² dt` normalized
/// on `[0, min(P, Q)]`.
pub fn sample_c_modulus_sq(p: f64, q: f64, uniform: f64) -> f64 {
    let m = p.min(q);
    let (s, prod) = (p + q, p * q);
    let antiderivative = |u: f64| {
        u * (prod * prod
            + u * (-prod * s + u * ((s * s + 2.0 * prod) / 3.0 + u * (-s / 2.0 + u / 5.0))))
    };
    let total = antiderivative(m);
    m * invert_monotone(|x| antiderivative(m * x) / total, uniform)
}

/// Bisection for `F(x) = target` with `F` nondecreasing on `[0, 1]`,
/// `F(0) = 0`, `F(1) = 1`.
pub fn invert_monotone<F: Fn(f64) -> f64>(cdf: F, target: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, 1.0);
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if cdf(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// A point `x ∈ C²` with `⟨x, Tx⟩ = level` in a uniformly random direction
/// of the whitened ball. `t = [t11, t12, t22]` is Hermitian positive
/// definite; with `T = LL*`, the point is `L^{-*} (√level · ω)`.
fn ellipsoid_point(t: &[Complex; 3], level: f64, rng: &mut RngStream) -> Option<[Complex; 2]> {
    let (t11, t12, t22) = (t[0].re, t[1], t[2].re);
    if !(t11 > 0.0) {
        return None;
    }
    let l11 = t11.sqrt();
    let l21 = t12.conj() / l11;
    let schur = t22 - l21.norm_sqr();
    if !(schur > 0.0) {
        return None;
    }
    let l22 = schur.sqrt();
    let omega = rng.unit_c2();
    let scale = level.max(0.0).sqrt();
    let w = [omega[0] * scale, omega[1] * scale];
    // L* = [[l11, conj(l21)], [0, l22]]
    let x1 = w[1] / l22;
    let x0 = (w[0] - l21.conj() * x1) / l11;
    Some([x0, x1])
}

#[inline]
fn herm2(t11: f64, t12: Complex, t22: f64) -> [Complex; 3] {
    [Complex::new(t11, 0.0), t12, Complex::new(t22, 0.0)]
}

/// `⟨x, Tx⟩` for a 2×2 Hermitian `t = [t11, t12, t22]`.
#[inline]
fn hermitian_form2(t: &[Complex; 3], x: &[Complex; 2]) -> f64 {
    t[0].re * x[0].norm_sqr() + t[2].re * x[1].norm_sqr() + 2.0 * (x[0].conj() * t[1] * x[1]).re
}

/// Permuted Choi matrix of a general sample, the matrix whose leading
/// minors decide acceptance.
pub fn general_sylvester_matrix(p: &GeneralChannelParams) -> HermitianMatrix4 {
    permute_general(&p.choi())
}

pub fn unital_sylvester_matrix(p: &UnitalChannelParams) -> HermitianMatrix4 {
    permute_unital(&p.choi())
}
