use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

use crate::error::{Error, Result};

/// Counter-based random stream addressed by `(seed, stream_id)`.
///
/// The same pair always reproduces the same draw sequence, and distinct
/// stream ids are statistically independent, so Monte Carlo trials can be
/// assigned one stream each and executed in any order (or in parallel)
/// without changing results.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha12Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        RngStream {
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

    /// Uniform draw in [0, 1).
    pub fn uniform(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }

    /// Standard normal draw (mean 0, variance 1).
    pub fn standard_normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.rng)
    }

    /// Gamma(shape, 1) draw. With `shape = k` this is the squared norm of a
    /// k-dimensional circularly symmetric unit-variance complex Gaussian
    /// vector (the chi-square law of mean k in the convention used here).
    pub fn gamma(&mut self, shape: f64) -> f64 {
        debug_assert!(shape > 0.0);
        Gamma::new(shape, 1.0)
            .expect("gamma shape must be positive")
            .sample(&mut self.rng)
    }
}

/// Samples a vector of `n` i.i.d. circularly symmetric complex normal
/// entries with mean 0 and unit variance (real and imaginary parts each of
/// variance 1/2).
pub fn sample_complex_gaussian(n: usize, rng: &mut RngStream) -> Result<Vec<Complex64>> {
    if n == 0 {
        return Err(Error::invalid("sample_complex_gaussian: n must be >= 1"));
    }
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    Ok((0..n)
        .map(|_| {
            let re = scale * rng.standard_normal();
            let im = scale * rng.standard_normal();
            Complex64::new(re, im)
        })
        .collect())
}
