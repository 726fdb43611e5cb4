//! Gaussian broadcast channel model: one K-antenna transmitter, K
//! single-antenna users, unit-variance noise. SNR is set by the total
//! transmit power alone.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{sample_complex_gaussian, ComplexMatrix, RngStream};

/// System parameters for one finite-dimensional broadcast-channel instance.
///
/// Under the on-off power policy the first `active` users each get symbol
/// power `power / active` and the rest are off. The active set is the first
/// `active` users: the channel statistics are i.i.d. across users, so any
/// fixed choice is equivalent in distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SystemConfig {
    /// Number of transmit antennas = number of users (K).
    pub users: usize,
    /// Total transmit power, linear scale (the SNR).
    pub power: f64,
    /// Number of "on" users (s), 1 <= s <= K.
    pub active: usize,
    /// Feedback budget in bits per user (r).
    pub feedback_bits: usize,
}

impl SystemConfig {
    pub fn new(users: usize, power: f64, active: usize, feedback_bits: usize) -> Result<Self> {
        let cfg = SystemConfig {
            users,
            power,
            active,
            feedback_bits,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.users == 0 {
            return Err(Error::invalid("SystemConfig: users must be >= 1"));
        }
        if self.active == 0 || self.active > self.users {
            return Err(Error::invalid(format!(
                "SystemConfig: active users must satisfy 1 <= s <= K, got s = {}, K = {}",
                self.active, self.users
            )));
        }
        if !self.power.is_finite() || self.power < 0.0 {
            return Err(Error::invalid(format!(
                "SystemConfig: power must be finite and >= 0, got {}",
                self.power
            )));
        }
        Ok(())
    }

    /// Per-user symbol power P/s under the on-off policy.
    pub fn per_user_power(&self) -> f64 {
        self.power / self.active as f64
    }

    /// Normalized feedback rate r/K.
    pub fn rbar(&self) -> f64 {
        self.feedback_bits as f64 / self.users as f64
    }

    /// Normalized number of on users s/K.
    pub fn sbar(&self) -> f64 {
        self.active as f64 / self.users as f64
    }
}

/// One draw of the K x K channel matrix; the i-th column is user i's
/// channel vector.
#[derive(Debug, Clone)]
pub struct ChannelRealization {
    pub matrix: ComplexMatrix,
}

impl ChannelRealization {
    pub fn users(&self) -> usize {
        self.matrix.cols()
    }

    pub fn user_channel(&self, i: usize) -> Vec<num_complex::Complex64> {
        self.matrix.column(i)
    }
}

/// Draws a channel realization with i.i.d. CN(K) columns.
pub fn sample_channel(cfg: &SystemConfig, rng: &mut RngStream) -> Result<ChannelRealization> {
    cfg.validate()?;
    let k = cfg.users;
    let cols: Vec<_> = (0..k)
        .map(|_| sample_complex_gaussian(k, rng))
        .collect::<Result<_>>()?;
    Ok(ChannelRealization {
        matrix: ComplexMatrix::from_columns(&cols)?,
    })
}
