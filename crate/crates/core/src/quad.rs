//! Adaptive Simpson quadrature.
//!
//! The densities in this crate are piecewise polynomials; callers pass the
//! seams as breakpoints so that every panel is smooth.

/// Default absolute tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

const MAX_DEPTH: u32 = 48;

/// `∫_lo^hi f` to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, tol: f64) -> f64 {
    if hi == lo {
        return 0.0;
    }
    let mid = 0.5 * (lo + hi);
    let (flo, fmid, fhi) = (f(lo), f(mid), f(hi));
    let whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    recurse(f, lo, hi, flo, fmid, fhi, whole, tol, MAX_DEPTH)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    flo: f64,
    fmid: f64,
    fhi: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let mid = 0.5 * (lo + hi);
    let lm = 0.5 * (lo + mid);
    let rm = 0.5 * (mid + hi);
    let (flm, frm) = (f(lm), f(rm));
    let left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    let right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    recurse(f, lo, mid, flo, flm, fmid, left, 0.5 * tol, depth - 1)
        + recurse(f, mid, hi, fmid, frm, fhi, right, 0.5 * tol, depth - 1)
}

/// Integrates over `[lo, hi]` with a panel boundary at every breakpoint
/// strictly inside the interval. The tolerance is split evenly over panels.
pub fn integrate_with_seams<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, seams: &[f64], tol: f64) -> f64 {
    let mut knots: Vec<f64> = std::iter::once(lo)
        .chain(seams.iter().copied().filter(|&s| s > lo && s < hi))
        .chain(std::iter::once(hi))
        .collect();
    knots.sort_by(|a, b| a.partial_cmp(b).expect("finite knots"));
    knots.dedup();
    let panels = (knots.len() - 1).max(1) as f64;
    knots
        .windows(2)
        .map(|w| adaptive_simpson(f, w[0], w[1], tol / panels))
        .sum()
}
