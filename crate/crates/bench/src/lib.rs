//! Benchmark fixtures. The benchmarks themselves live in `benches/`.

use qcvol_core::{GeneralChannelParams, RngStream};

/// A fixed batch of uniformly random general channels.
pub fn channel_batch(n: usize, seed: u64) -> Vec<GeneralChannelParams> {
    let mut rng = RngStream::new(seed, 0);
    (0..n).map(|_| qcvol_core::sample::sequential_sample_general(&mut rng)).collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn batch_is_reproducible() {
        assert_eq!(super::channel_batch(4, 1), super::channel_batch(4, 1));
    }
}
