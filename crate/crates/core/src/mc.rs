//! Counter-based Monte Carlo.
//!
//! Samples are grouped into fixed-size chunks; chunk `c` draws from a ChaCha
//! stream selected by `c`, so an estimate depends only on the seed and the
//! sample count, never on how many threads evaluated it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

const CHUNK: u64 = 4096;

/// Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Estimate { value, std_error: 0.0 }
    }

    pub fn scale(self, t: f64) -> Self {
        Estimate { value: self.value * t, std_error: self.std_error * t.abs() }
    }

    pub fn within_sigmas(&self, target: f64, sigmas: f64) -> bool {
        (self.value - target).abs() <= sigmas * self.std_error
    }
}

/// Sum of independent estimates.
impl std::ops::Add for Estimate {
    type Output = Estimate;

    fn add(self, other: Estimate) -> Estimate {
        Estimate { value: self.value + other.value, std_error: self.std_error.hypot(other.std_error) }
    }
}

pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Mixes a sub-stream tag into a seed (splitmix64 finalizer).
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    let mut z = seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mean of `f` over `samples` draws, with standard error.
pub fn mean<F>(seed: u64, samples: u64, f: F) -> Estimate
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    assert!(samples >= 1, "need at least one sample");
    let chunks = samples.div_ceil(CHUNK);
    let sums: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream_rng(seed, c);
            let n = CHUNK.min(samples - c * CHUNK);
            let (mut s, mut s2) = (0.0, 0.0);
            for _ in 0..n {
                let x = f(&mut rng);
                s += x;
                s2 += x * x;
            }
            (s, s2)
        })
        .collect();
    let (s, s2) = sums.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let n = samples as f64;
    let m = s / n;
    let var = if samples > 1 { ((s2 - n * m * m) / (n - 1.0)).max(0.0) } else { 0.0 };
    Estimate { value: m, std_error: (var / n).sqrt() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn deterministic_across_thread_counts() {
        let f = |r: &mut ChaCha8Rng| r.gen::<f64>();
        let a = mean(7, 50_000, f);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| mean(7, 50_000, f));
        assert_eq!(a, b);
        assert!(a.within_sigmas(0.5, 4.0));
        assert_ne!(mean(8, 50_000, f), a);
    }
}
