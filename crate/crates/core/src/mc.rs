//! Monte Carlo estimators and goodness-of-fit tests.
//!
//! Parallel estimators give worker `i` the stream `(seed, i)` and merge
//! integer counts and sums, so a run is a pure function of
//! `(seed, workers, n)`.

use std::fmt;
use std::str::FromStr;

use crate::analytic::mean_radius_general;
use crate::error::{Error, Result};
use crate::repr::{compose_rotation_post, compose_rotation_pre, to_affine, unital_to_affine, AffineMap, Rotation3};
use crate::rng::RngStream;
use crate::sample::{
    general_box_volume, propose_general, propose_unital, sequential_sample_general, sequential_sample_unital,
    unital_box_volume,
};

/// Smallest sample for which asymptotic Kolmogorov p-values are reported.
pub const KS_MIN_SAMPLE: usize = 100;

/// Number of terms kept in the Kolmogorov series.
pub const KOLMOGOROV_TERMS: usize = 100;

/// Factor between the channel measure `2⁷ dλ` and plain `λ`.
pub const MEASURE_FACTOR: f64 = 128.0;

/// Initial Bloch radius of the `β` leg of [`invariance_test`].
pub const INVARIANCE_R0: f64 = 0.7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    General,
    Unital,
}

impl ChannelKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ChannelKind::General => "general",
            ChannelKind::Unital => "unital",
        }
    }

    /// `λ`-volume of the rejection proposal region.
    pub fn box_volume(&self) -> f64 {
        match self {
            ChannelKind::General => general_box_volume(),
            ChannelKind::Unital => unital_box_volume(),
        }
    }

    /// Draws one channel from the exact sequential sampler and returns its
    /// affine Bloch map.
    pub fn sample_affine(&self, rng: &mut RngStream) -> AffineMap {
        match self {
            ChannelKind::General => to_affine(&sequential_sample_general(rng)),
            ChannelKind::Unital => unital_to_affine(&sequential_sample_unital(rng)),
        }
    }

    fn propose(&self, rng: &mut RngStream) -> bool {
        match self {
            ChannelKind::General => propose_general(rng).is_some(),
            ChannelKind::Unital => propose_unital(rng).is_some(),
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "general" => Ok(ChannelKind::General),
            "unital" => Ok(ChannelKind::Unital),
            other => Err(Error::InvalidArgument(format!("unknown channel kind '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeEstimate {
    /// Volume in the channel measure `2⁷ dλ`.
    pub value: f64,
    pub std_error: f64,
    pub n_trials: u64,
    pub n_accepted: u64,
    /// Volume in plain Lebesgue measure `λ`.
    pub lambda_volume: f64,
}

impl VolumeEstimate {
    pub fn from_counts(kind: ChannelKind, n_trials: u64, n_accepted: u64) -> Result<Self> {
        if n_trials == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        let n = n_trials as f64;
        let p = n_accepted as f64 / n;
        let lambda_volume = kind.box_volume() * p;
        let value = MEASURE_FACTOR * lambda_volume;
        let std_error = value * ((1.0 - p) / (n * p).max(1.0)).sqrt();
        Ok(Self {
            value,
            std_error,
            n_trials,
            n_accepted,
            lambda_volume,
        })
    }

    pub fn acceptance(&self) -> f64 {
        self.n_accepted as f64 / self.n_trials as f64
    }

    /// `(value − target) / std_error`; infinite if the error is zero and the
    /// value is off target.
    pub fn z_score(&self, target: f64) -> f64 {
        let diff = self.value - target;
        if self.std_error > 0.0 {
            diff / self.std_error
        } else if diff == 0.0 {
            0.0
        } else {
            diff.signum() * f64::INFINITY
        }
    }
}

/// Serial volume estimate from `n` rejection proposals on one stream.
pub fn estimate_volume(kind: ChannelKind, n: u64, rng: &mut RngStream) -> Result<VolumeEstimate> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let accepted = (0..n).filter(|_| kind.propose(rng)).count() as u64;
    VolumeEstimate::from_counts(kind, n, accepted)
}

/// Volume estimate split over `workers` threads; worker `i` runs on stream
/// `(seed, i)`.
pub fn estimate_volume_parallel(kind: ChannelKind, n: u64, seed: u64, workers: usize) -> Result<VolumeEstimate> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if workers == 0 {
        return Err(Error::InvalidArgument("workers must be at least 1".into()));
    }
    let shares = split(n, workers);
    let accepted: u64 = std::thread::scope(|scope| {
        let handles: Vec<_> = shares
            .iter()
            .enumerate()
            .map(|(i, &share)| {
                scope.spawn(move || {
                    let mut rng = RngStream::new(seed, i as u64);
                    (0..share).filter(|_| kind.propose(&mut rng)).count() as u64
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).sum()
    });
    VolumeEstimate::from_counts(kind, n, accepted)
}

/// Draws `n` items with `draw`, worker `i` on stream `(seed, i)`; the
/// output is the concatenation in worker order.
pub fn collect_parallel<T, F>(n: usize, seed: u64, workers: usize, draw: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut RngStream) -> T + Sync,
{
    if workers == 0 {
        return Err(Error::InvalidArgument("workers must be at least 1".into()));
    }
    let shares = split(n as u64, workers);
    let draw = &draw;
    Ok(std::thread::scope(|scope| {
        let handles: Vec<_> = shares
            .iter()
            .enumerate()
            .map(|(i, &share)| {
                scope.spawn(move || {
                    let mut rng = RngStream::new(seed, i as u64);
                    (0..share).map(|_| draw(&mut rng)).collect::<Vec<T>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    }))
}

fn split(n: u64, workers: usize) -> Vec<u64> {
    let w = workers as u64;
    (0..w).map(|i| n / w + u64::from(i < n % w)).collect()
}

/// Histogram with `counts.len() + 1` edges.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn bin_width(&self, i: usize) -> f64 {
        self.edges[i + 1] - self.edges[i]
    }

    pub fn centers(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }

    /// Counts normalized to a probability density.
    pub fn densities(&self) -> Vec<f64> {
        let total: u64 = self.counts.iter().sum();
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| c as f64 / (total as f64 * self.bin_width(i)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDistribution {
    values: Vec<f64>,
    histogram: Option<Histogram>,
}

impl EmpiricalDistribution {
    /// Sorts the values; NaN is rejected.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::InvalidArgument("sample contains NaN".into()));
        }
        values.sort_by(f64::total_cmp);
        Ok(Self { values, histogram: None })
    }

    /// Adds a histogram with `bins` equal bins on `[lo, hi]`; values outside
    /// the range are counted in the end bins.
    pub fn with_histogram(mut self, bins: usize, lo: f64, hi: f64) -> Result<Self> {
        if bins == 0 || !(hi > lo) {
            return Err(Error::InvalidArgument(format!("bad histogram range [{lo}, {hi}] with {bins} bins")));
        }
        let width = (hi - lo) / bins as f64;
        let edges = (0..=bins).map(|i| lo + width * i as f64).collect();
        let mut counts = vec![0u64; bins];
        for &v in &self.values {
            let i = ((v - lo) / width).floor().clamp(0.0, (bins - 1) as f64) as usize;
            counts[i] += 1;
        }
        self.histogram = Some(Histogram { edges, counts });
        Ok(self)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn histogram(&self) -> Option<&Histogram> {
        self.histogram.as_ref()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Standard error of the mean.
    pub fn std_error(&self) -> f64 {
        let n = self.values.len() as f64;
        if n < 2.0 {
            return 0.0;
        }
        let m = self.mean();
        let var = self.values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (n - 1.0);
        (var / n).sqrt()
    }

    /// Fraction of values `≤ x`.
    pub fn ecdf(&self, x: f64) -> f64 {
        self.values.partition_point(|&v| v <= x) as f64 / self.values.len() as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsResult {
    pub d_statistic: f64,
    pub p_value: f64,
    /// Sample size, or the effective size `n₁n₂/(n₁+n₂)` for two samples.
    pub n: usize,
}

/// `P(K > λ)` for the Kolmogorov distribution.
pub fn kolmogorov_survival(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    let p = if lambda < 1.0 {
        // P(K ≤ λ) = √(2π)/λ Σ exp(−(2k−1)²π²/(8λ²))
        let c = std::f64::consts::PI.powi(2) / (8.0 * lambda * lambda);
        let s: f64 = (1..=KOLMOGOROV_TERMS)
            .map(|k| {
                let m = (2 * k - 1) as f64;
                (-m * m * c).exp()
            })
            .sum();
        1.0 - (std::f64::consts::TAU).sqrt() / lambda * s
    } else {
        // 2 Σ (−1)^{k−1} exp(−2k²λ²)
        2.0 * (1..=KOLMOGOROV_TERMS)
            .map(|k| {
                let k = k as f64;
                let sign = if k as usize % 2 == 1 { 1.0 } else { -1.0 };
                sign * (-2.0 * k * k * lambda * lambda).exp()
            })
            .sum::<f64>()
    };
    p.clamp(0.0, 1.0)
}

/// One-sample Kolmogorov-Smirnov test against a CDF.
pub fn ks_test<F: Fn(f64) -> f64>(e: &EmpiricalDistribution, cdf: F) -> Result<KsResult> {
    let n = e.len();
    if n == 0 {
        return Err(Error::EmptySample);
    }
    if n < KS_MIN_SAMPLE {
        return Err(Error::SampleTooSmall(n));
    }
    let nf = n as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in e.values().iter().enumerate() {
        let f = cdf(x);
        d = d.max((i + 1) as f64 / nf - f).max(f - i as f64 / nf);
    }
    let d = d.clamp(0.0, 1.0);
    Ok(KsResult {
        d_statistic: d,
        p_value: kolmogorov_survival(nf.sqrt() * d),
        n,
    })
}

/// Two-sample Kolmogorov-Smirnov test.
pub fn ks_two_sample(x: &EmpiricalDistribution, y: &EmpiricalDistribution) -> Result<KsResult> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptySample);
    }
    let small = x.len().min(y.len());
    if small < KS_MIN_SAMPLE {
        return Err(Error::SampleTooSmall(small));
    }
    let (xs, ys) = (x.values(), y.values());
    let (n1, n2) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < xs.len() && j < ys.len() {
        let t = xs[i].min(ys[j]);
        while i < xs.len() && xs[i] <= t {
            i += 1;
        }
        while j < ys.len() && ys[j] <= t {
            j += 1;
        }
        d = d.max((i as f64 / n1 - j as f64 / n2).abs());
    }
    let n_eff = n1 * n2 / (n1 + n2);
    Ok(KsResult {
        d_statistic: d,
        p_value: kolmogorov_survival(n_eff.sqrt() * d),
        n: n_eff.round() as usize,
    })
}

/// Bloch radii of `n` uniformly random channels applied to `(0, 0, r0)`.
pub fn pushforward_radii(kind: ChannelKind, r0: f64, n: usize, rng: &mut RngStream) -> Result<EmpiricalDistribution> {
    crate::error::check_domain("r0", r0, 0.0, 1.0)?;
    let s = [0.0, 0.0, r0];
    let radii = (0..n).map(|_| norm(&kind.sample_affine(rng).image(&s))).collect();
    EmpiricalDistribution::new(radii)
}

/// Two-sample KS tests of rotation invariance for general channels.
///
/// For each of `rotation_count` random rotations `O` two results are
/// returned, in order:
///
/// 1. z-components of `α_O(Q)` and `Q` applied to the maximally mixed state;
/// 2. z-components of `β_O(Q)` and `Q` applied to `(0, 0, 0.7)`.
///
/// Each comparison uses two independent batches of `n` channels. With
/// `scale = Some(s)` the whole affine map of the transformed batch is
/// multiplied by `s`, which does not preserve the measure.
pub fn invariance_test(
    rotation_count: usize,
    n: usize,
    rng: &mut RngStream,
    scale: Option<f64>,
) -> Result<Vec<KsResult>> {
    let mixed = [0.0, 0.0, 0.0];
    let pure = [0.0, 0.0, INVARIANCE_R0];
    let mut out = Vec::with_capacity(2 * rotation_count);
    for _ in 0..rotation_count {
        let rotation = Rotation3::random(rng);
        for (state, post) in [(mixed, true), (pure, false)] {
            let mut moved = Vec::with_capacity(n);
            let mut plain = Vec::with_capacity(n);
            for _ in 0..n {
                let q = sequential_sample_general(rng);
                let q = if post {
                    compose_rotation_post(&q, &rotation)
                } else {
                    compose_rotation_pre(&q, &rotation)
                };
                let mut map = to_affine(&q);
                if let Some(s) = scale {
                    map = map.scaled(s);
                }
                moved.push(map.image(&state)[2]);
            }
            for _ in 0..n {
                plain.push(to_affine(&sequential_sample_general(rng)).image(&state)[2]);
            }
            out.push(ks_two_sample(&EmpiricalDistribution::new(moved)?, &EmpiricalDistribution::new(plain)?)?);
        }
    }
    Ok(out)
}

/// Per-step ensemble statistics of repeated channel application.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DynamicsStep {
    pub step: usize,
    pub mean_radius: f64,
    pub std_error: f64,
}

/// Applies a fresh uniformly random channel at every step to each of
/// `ensemble` trajectories started at `(0, 0, r0)`.
pub fn iterate_dynamics(
    kind: ChannelKind,
    r0: f64,
    steps: usize,
    ensemble: usize,
    rng: &mut RngStream,
) -> Result<Vec<DynamicsStep>> {
    crate::error::check_domain("r0", r0, 0.0, 1.0)?;
    if steps == 0 || ensemble == 0 {
        return Err(Error::InvalidArgument("steps and ensemble must be at least 1".into()));
    }
    let mut states = vec![[0.0, 0.0, r0]; ensemble];
    let mut out = Vec::with_capacity(steps);
    for step in 1..=steps {
        for s in states.iter_mut() {
            *s = kind.sample_affine(rng).image(s);
        }
        let radii = EmpiricalDistribution::new(states.iter().map(norm).collect())?;
        out.push(DynamicsStep {
            step,
            mean_radius: radii.mean(),
            std_error: radii.std_error(),
        });
    }
    Ok(out)
}

/// Solution of `g(r) = r` on `[0.2, 0.5]`, where `g(r0)` is the mean Bloch
/// radius after one general channel.
pub fn fixed_point_radius() -> f64 {
    let h = |r: f64| mean_radius_general(r).expect("radius in range") - r;
    let (mut lo, mut hi) = (0.2, 0.5);
    debug_assert!(h(lo) > 0.0 && h(hi) < 0.0);
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if h(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn norm(x: &[f64; 3]) -> f64 {
    (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{kappa_mm_cdf, kappa_unital_cdf, mean_radius_mm};
    use approx::assert_abs_diff_eq;

    #[test]
    fn degenerate_std_error() {
        let e = VolumeEstimate::from_counts(ChannelKind::General, 1, 0).unwrap();
        assert_eq!((e.value, e.std_error), (0.0, 0.0));
        let e = VolumeEstimate::from_counts(ChannelKind::Unital, 1, 1).unwrap();
        assert_eq!(e.std_error, 0.0);
        assert_abs_diff_eq!(e.value, 128.0 * unital_box_volume(), epsilon = 1e-12);
        assert!(VolumeEstimate::from_counts(ChannelKind::General, 0, 0).is_err());
        let mut rng = RngStream::new(1, 0);
        assert!(estimate_volume(ChannelKind::General, 0, &mut rng).is_err());
    }

    #[test]
    fn parallel_split_is_deterministic() {
        let a = estimate_volume_parallel(ChannelKind::Unital, 20_001, 5, 3).unwrap();
        let b = estimate_volume_parallel(ChannelKind::Unital, 20_001, 5, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.n_trials, 20_001);
        assert_eq!(split(10, 3), vec![4, 3, 3]);
        // a single worker reproduces the serial estimate on stream 0
        let serial = estimate_volume(ChannelKind::Unital, 5000, &mut RngStream::new(5, 0)).unwrap();
        assert_eq!(serial, estimate_volume_parallel(ChannelKind::Unital, 5000, 5, 1).unwrap());
    }

    #[test]
    fn parallel_collection_order() {
        let a = collect_parallel(11, 3, 4, |r| r.uniform()).unwrap();
        assert_eq!(a, collect_parallel(11, 3, 4, |r| r.uniform()).unwrap());
        let mut first = RngStream::new(3, 0);
        assert_eq!(a[..3], [first.uniform(), first.uniform(), first.uniform()]);
        let serial = collect_parallel(5, 3, 1, |r| r.uniform()).unwrap();
        assert_eq!(serial[0], a[0]);
        assert!(collect_parallel(5, 3, 0, |r| r.uniform()).is_err());
    }

    #[test]
    fn unital_volume_rough() {
        let e = estimate_volume_parallel(ChannelKind::Unital, 2_000_000, 17, 2).unwrap();
        assert!(e.z_score(crate::analytic::vol_unital()).abs() < 4.0, "{e:?}");
    }

    #[test]
    fn quantile_lattice_gives_half_step() {
        let n = 1000;
        let e = EmpiricalDistribution::new((0..n).map(|i| (i as f64 + 0.5) / n as f64).collect()).unwrap();
        let r = ks_test(&e, |x| x).unwrap();
        assert_abs_diff_eq!(r.d_statistic, 0.5 / n as f64, epsilon = 1e-12);
        assert!(r.p_value > 0.999);
    }

    #[test]
    fn ks_refuses_small_samples() {
        let e = EmpiricalDistribution::new(vec![0.5; 10]).unwrap();
        assert!(matches!(ks_test(&e, |x| x), Err(Error::SampleTooSmall(10))));
        let empty = EmpiricalDistribution::new(vec![]).unwrap();
        assert!(matches!(ks_test(&empty, |x| x), Err(Error::EmptySample)));
        assert!(EmpiricalDistribution::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn kolmogorov_series_agree() {
        // both branches near the switch point, and known quantiles
        assert_abs_diff_eq!(kolmogorov_survival(1.0 - 1e-12), kolmogorov_survival(1.0), epsilon = 1e-9);
        assert_abs_diff_eq!(kolmogorov_survival(1.3581), 0.05, epsilon = 1e-4);
        assert_abs_diff_eq!(kolmogorov_survival(1.6276), 0.01, epsilon = 1e-4);
        assert_abs_diff_eq!(kolmogorov_survival(0.8276), 0.5, epsilon = 1e-3);
        assert_eq!(kolmogorov_survival(0.0), 1.0);
    }

    #[test]
    fn uniform_pvalues_are_uniform() {
        let mut small = 0;
        let mut below_half = 0;
        for seed in 0..100 {
            let mut rng = RngStream::new(seed, 0);
            let e = EmpiricalDistribution::new((0..2000).map(|_| rng.uniform()).collect()).unwrap();
            let p = ks_test(&e, |x| x.clamp(0.0, 1.0)).unwrap().p_value;
            small += usize::from(p < 0.05);
            below_half += usize::from(p < 0.5);
        }
        assert!(small <= 12, "{small}");
        assert!((30..=70).contains(&below_half), "{below_half}");
    }

    #[test]
    fn two_sample_identical_is_zero() {
        let mut rng = RngStream::new(2, 0);
        let v: Vec<f64> = (0..500).map(|_| rng.uniform()).collect();
        let a = EmpiricalDistribution::new(v.clone()).unwrap();
        let b = EmpiricalDistribution::new(v).unwrap();
        let r = ks_two_sample(&a, &b).unwrap();
        assert_eq!(r.d_statistic, 0.0);
        assert_eq!(r.p_value, 1.0);
        let shifted = EmpiricalDistribution::new(a.values().iter().map(|x| x + 0.2).collect()).unwrap();
        assert!(ks_two_sample(&a, &shifted).unwrap().p_value < 1e-6);
    }

    #[test]
    fn histogram_counts_everything() {
        let e = EmpiricalDistribution::new(vec![-1.0, 0.0, 0.3, 0.5, 0.99, 1.0, 2.0])
            .unwrap()
            .with_histogram(4, 0.0, 1.0)
            .unwrap();
        let h = e.histogram().unwrap();
        assert_eq!(h.counts, vec![2, 1, 1, 3]);
        assert_eq!(h.counts.iter().sum::<u64>(), 7);
        assert_abs_diff_eq!(h.densities().iter().sum::<f64>() * 0.25, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn pushforward_smoke() {
        let mut rng = RngStream::new(8, 0);
        let e = pushforward_radii(ChannelKind::General, 0.0, 3000, &mut rng).unwrap();
        assert!(ks_test(&e, |r| kappa_mm_cdf(r.clamp(0.0, 1.0)).unwrap()).unwrap().p_value > 0.001);
        assert!((e.mean() - mean_radius_mm()).abs() < 4.0 * e.std_error());
        let e = pushforward_radii(ChannelKind::Unital, 0.8, 3000, &mut rng).unwrap();
        assert!(e.values().last().unwrap() <= &0.8);
        assert!(ks_test(&e, |r| kappa_unital_cdf(r.clamp(0.0, 0.8), 0.8).unwrap()).unwrap().p_value > 0.001);
        assert!(pushforward_radii(ChannelKind::General, 1.5, 10, &mut rng).is_err());
    }

    #[test]
    fn identity_rotation_matches_in_distribution() {
        let mut rng = RngStream::new(4, 0);
        let r = invariance_test(1, 1000, &mut rng, None).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|k| (0.0..=1.0).contains(&k.p_value)));
    }

    #[test]
    fn fixed_point() {
        let r = fixed_point_radius();
        assert!((0.383..=0.393).contains(&r), "{r}");
        assert!((mean_radius_general(r).unwrap() - r).abs() < 1e-7);
    }

    #[test]
    fn dynamics_first_step() {
        let mut rng = RngStream::new(12, 0);
        let steps = iterate_dynamics(ChannelKind::Unital, 1.0, 3, 4000, &mut rng).unwrap();
        assert_eq!(steps.len(), 3);
        let target = 63.0 / 128.0;
        assert!((steps[0].mean_radius - target).abs() < 4.0 * steps[0].std_error);
        assert!(iterate_dynamics(ChannelKind::Unital, 1.0, 0, 10, &mut rng).is_err());
    }

    #[test]
    fn kind_round_trip() {
        for k in [ChannelKind::General, ChannelKind::Unital] {
            assert_eq!(k.to_string().parse::<ChannelKind>().unwrap(), k);
        }
        assert!("mixed".parse::<ChannelKind>().is_err());
    }
}
