//! Shared Monte Carlo machinery: trial-parallel execution with per-trial
//! random streams and order-insensitive reductions.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::numerics::RngStream;

/// Summary of a normalized sum-rate Monte Carlo run.
#[derive(Debug, Clone, Serialize)]
pub struct ThroughputEstimate {
    /// Mean normalized sum-rate (bits per channel use per antenna).
    pub mean: f64,
    /// Standard error of the mean over outer trials.
    pub std_err: f64,
    /// Mean rate of each active user by encoding index.
    pub per_user: Vec<f64>,
    /// Number of outer trials.
    pub trials: usize,
    /// Base seed of the run.
    pub seed: u64,
    /// Largest zeroforcing residual observed on any realization (the
    /// magnitude of a quantized-direction / beamformer inner product that
    /// the construction forces to zero).
    pub zf_residual: f64,
}

/// Per-trial output collected by the parallel runner.
#[derive(Debug, Clone)]
pub struct TrialOutcome {
    pub throughput: f64,
    pub per_user: Vec<f64>,
    pub zf_residual: f64,
}

/// Runs `trials` independent trials, trial `t` drawing from
/// `RngStream::new(seed, t)`, and reduces in trial order so the estimate is
/// identical for any thread count.
pub fn run_trials<F>(trials: usize, seed: u64, trial_fn: F) -> Result<ThroughputEstimate>
where
    F: Fn(&mut RngStream) -> Result<TrialOutcome> + Sync,
{
    let outcomes: Vec<Result<TrialOutcome>> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = RngStream::new(seed, t);
            trial_fn(&mut rng)
        })
        .collect();
    let mut values = Vec::with_capacity(trials);
    let mut per_user_sum: Vec<f64> = Vec::new();
    let mut residual: f64 = 0.0;
    for outcome in outcomes {
        let o = outcome?;
        if per_user_sum.is_empty() {
            per_user_sum = vec![0.0; o.per_user.len()];
        }
        for (acc, v) in per_user_sum.iter_mut().zip(&o.per_user) {
            *acc += v;
        }
        residual = residual.max(o.zf_residual);
        values.push(o.throughput);
    }
    let (mean, std_err) = mean_stderr(&values);
    let n = values.len().max(1) as f64;
    for v in &mut per_user_sum {
        *v /= n;
    }
    Ok(ThroughputEstimate {
        mean,
        std_err,
        per_user: per_user_sum,
        trials,
        seed,
        zf_residual: residual,
    })
}

/// Compensated sum (Kahan with the Neumaier correction, which also covers
/// terms larger than the running sum).
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            c += (sum - t) + v;
        } else {
            c += (v - t) + sum;
        }
        sum = t;
    }
    sum + c
}

/// Sample mean and standard error of the mean.
pub fn mean_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (0.0, 0.0);
    }
    let mean = compensated_sum(values.iter().copied()) / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let ss = compensated_sum(values.iter().map(|v| (v - mean) * (v - mean)));
    let var = ss / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_handles_cancellation() {
        let values = vec![1e16, 1.0, -1e16];
        assert_eq!(compensated_sum(values), 1.0);
    }

    #[test]
    fn mean_stderr_basics() {
        let (m, se) = mean_stderr(&[2.0, 4.0, 6.0, 8.0]);
        assert_eq!(m, 5.0);
        // sample var = 20/3, se = sqrt(20/12)
        assert!((se - (20.0f64 / 36.0 * 3.0).sqrt()).abs() < 1e-12);
        assert_eq!(mean_stderr(&[]), (0.0, 0.0));
        assert_eq!(mean_stderr(&[3.0]).1, 0.0);
    }

    #[test]
    fn run_trials_bitwise_identical_across_pool_sizes() {
        let job = |rng: &mut crate::numerics::RngStream| {
            let v: f64 = (0..100).map(|_| rng.uniform()).sum();
            Ok(TrialOutcome {
                throughput: v,
                per_user: vec![v, v * 0.5],
                zf_residual: 0.0,
            })
        };
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| run_trials(64, 9, job).unwrap())
        };
        let a = run(1);
        let b = run(4);
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert_eq!(a.std_err.to_bits(), b.std_err.to_bits());
        for (x, y) in a.per_user.iter().zip(&b.per_user) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }
}
