//! Zero-forcing beamforming comparator.
//!
//! Beamformers are the normalized columns of the pseudo-inverse of the
//! active quantized-direction matrix, so every user is nulled on every
//! other user's quantized direction. Rates follow the standard SINR form
//! with residual interference caused by the quantization error.

use num_complex::Complex64;

use crate::channel::{sample_channel, SystemConfig};
use crate::error::{Error, Result};
use crate::mc::{run_trials, ThroughputEstimate, TrialOutcome};
use crate::numerics::{dot_conj, ComplexMatrix};
use crate::zfdpc::{csit_model, McOptions};

/// Unit-norm zero-forcing beamformers for the active quantized directions:
/// the normalized columns of Hhat_on (Hhat_on^* Hhat_on)^{-1}.
pub fn zfbf_vectors(hhat_on: &ComplexMatrix) -> Result<ComplexMatrix> {
    let s = hhat_on.cols();
    if s == 0 || s > hhat_on.rows() {
        return Err(Error::invalid(format!(
            "zfbf_vectors: need 1 <= s <= K, got s = {}, K = {}",
            s,
            hhat_on.rows()
        )));
    }
    let gram = hhat_on.hermitian().mul(hhat_on);
    let inv = gram
        .solve(&ComplexMatrix::identity(s))
        .map_err(|e| match e {
            Error::NumericDomain(m) | Error::SingularMatrix(m) => Error::singular(m),
            other => other,
        })?;
    let mut w = hhat_on.mul(&inv);
    for j in 0..s {
        let col = w.column(j);
        let norm = col.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::singular("zfbf_vectors: zero beamformer column"));
        }
        let scaled: Vec<Complex64> = col.iter().map(|&x| x / norm).collect();
        w.set_column(j, &scaled);
    }
    Ok(w)
}

/// Monte Carlo estimate of the ZFBF throughput with per-user SINR rates
/// R_i = log2(1 + (P/s)|h_i^* w_i|^2 / (1 + (P/s) sum_{j != i} |h_i^* w_j|^2)).
pub fn zfbf_throughput_mc_with(cfg: &SystemConfig, opts: &McOptions) -> Result<ThroughputEstimate> {
    cfg.validate()?;
    if opts.trials == 0 {
        return Err(Error::invalid("zfbf_throughput_mc: trials must be >= 1"));
    }
    let model = csit_model(cfg, opts.perfect_csit)?;
    let s = cfg.active;
    let p_per = cfg.per_user_power();
    let ln2 = std::f64::consts::LN_2;
    run_trials(opts.trials, opts.seed, |rng| {
        let h = sample_channel(cfg, rng)?;
        let csit = model.quantize(&h, rng)?;
        let w = zfbf_vectors(&csit.hhat.leading_columns(s))?;
        let mut zf_residual: f64 = 0.0;
        for i in 0..s {
            let hh = csit.hhat.column(i);
            for j in 0..s {
                if j != i {
                    zf_residual = zf_residual.max(dot_conj(&hh, &w.column(j)).norm());
                }
            }
        }
        let mut per_user = Vec::with_capacity(s);
        for i in 0..s {
            let hi = h.user_channel(i);
            let mut want = 0.0;
            let mut interference = 0.0;
            for j in 0..s {
                let v = dot_conj(&w.column(j), &hi).norm_sqr();
                if j == i {
                    want = v;
                } else {
                    interference += v;
                }
            }
            let sinr = p_per * want / (1.0 + p_per * interference);
            per_user.push((1.0 + sinr).ln() / ln2);
        }
        let throughput = per_user.iter().sum::<f64>() / cfg.users as f64;
        Ok(TrialOutcome {
            throughput,
            per_user,
            zf_residual,
        })
    })
}

/// [`zfbf_throughput_mc_with`] under the quantized-feedback model.
pub fn zfbf_throughput_mc(
    cfg: &SystemConfig,
    n_outer: usize,
    seed: u64,
) -> Result<ThroughputEstimate> {
    zfbf_throughput_mc_with(
        cfg,
        &McOptions {
            trials: n_outer,
            inner: 1,
            seed,
            perfect_csit: false,
        },
    )
}
