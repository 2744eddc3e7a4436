//! Seekable, stream-separated random numbers.
//!
//! Every Monte Carlo worker owns one [`RngStream`]. A stream is keyed by
//! `(seed, stream_id)` and backed by ChaCha8, whose 64-bit stream selector
//! gives independent, non-overlapping sequences for distinct ids. Results are
//! therefore a pure function of the seed and the partition into streams.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::choi::Complex;

/// Documented default seed for reproducible runs.
pub const DEFAULT_SEED: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        Self {
            seed,
            stream_id,
            rng,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Number of 32-bit words consumed so far.
    pub fn word_position(&self) -> u128 {
        self.rng.get_word_pos()
    }

    /// A sibling stream with the same seed.
    pub fn sibling(&self, stream_id: u64) -> Self {
        Self::new(self.seed, stream_id)
    }

    /// Uniform on `[0, 1)`.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// Uniform on `(0, 1)`.
    #[inline]
    pub fn uniform_open(&mut self) -> f64 {
        loop {
            let u = self.uniform();
            if u > 0.0 {
                return u;
            }
        }
    }

    #[inline]
    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Uniform point in the complex disk `|z| ≤ radius` (polar method).
    #[inline]
    pub fn disk(&mut self, radius: f64) -> Complex {
        let r = radius * self.uniform().sqrt();
        let (s, c) = (TAU * self.uniform()).sin_cos();
        Complex::new(r * c, r * s)
    }

    /// Uniform direction on the unit sphere of `C² ≅ R⁴`.
    pub fn unit_c2(&mut self) -> [Complex; 2] {
        loop {
            let x = [self.normal(), self.normal(), self.normal(), self.normal()];
            let n = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            if n > 1e-300 {
                return [Complex::new(x[0] / n, x[1] / n), Complex::new(x[2] / n, x[3] / n)];
            }
        }
    }

    /// Uniform direction on the unit sphere of `R³`.
    pub fn unit_r3(&mut self) -> [f64; 3] {
        loop {
            let x = [self.normal(), self.normal(), self.normal()];
            let n = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            if n > 1e-300 {
                return [x[0] / n, x[1] / n, x[2] / n];
            }
        }
    }

    pub(crate) fn sample<T, D: rand_distr::Distribution<T>>(&mut self, dist: D) -> T {
        self.rng.sample(dist)
    }
}
