//! Finite-rate feedback model.
//!
//! Each user feeds back r bits describing its channel direction. The
//! quantization cell around each codeword is modeled as a spherical cap
//! covering a 2^(-r) fraction of the unit sphere, and the codebook is drawn
//! from the rotation-invariant ensemble, so quantized directions are
//! isotropic and the quantization error admits the decomposition
//!
//!   h_dir = sqrt(1 - d^2) * hhat + sqrt(d^2) * edir
//!
//! with `edir` a unit vector isotropic in the orthogonal complement of
//! `hhat` and independent of `d^2`. Sampling this geometry directly avoids
//! materializing the (exponentially large) codebooks; explicit nearest-
//! codeword search is kept for small-instance cross-validation.

use num_complex::Complex64;
use serde::Serialize;

use crate::channel::ChannelRealization;
use crate::error::{Error, Result};
use crate::numerics::{dot_conj, norm_sq, sample_complex_gaussian, ComplexMatrix, RngStream};

/// Spherical-cap quantization-cell model for one (K, r) pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QubModel {
    /// Vector dimension (number of antennas), K >= 2.
    pub users: usize,
    /// Feedback bits per user.
    pub feedback_bits: usize,
}

impl QubModel {
    pub fn new(users: usize, feedback_bits: usize) -> Result<Self> {
        if users < 2 {
            return Err(Error::invalid(
                "QubModel: need K >= 2 (no perpendicular space in dimension 1)",
            ));
        }
        Ok(QubModel {
            users,
            feedback_bits,
        })
    }

    /// Cell boundary delta = 2^(-r/(K-1)); sampled errors never exceed it.
    pub fn cell_boundary(&self) -> f64 {
        let k = self.users as f64;
        let r = self.feedback_bits as f64;
        (-r / (k - 1.0)).exp2()
    }

    /// Draws d^2 from the cell law F(x) = 2^r x^(K-1) on [0, delta] by
    /// inverse transform.
    pub fn sample_distortion(&self, rng: &mut RngStream) -> f64 {
        let k = self.users as f64;
        let u = rng.uniform();
        self.cell_boundary() * u.powf(1.0 / (k - 1.0))
    }
}

/// Mean quantization error D = E d^2 = (K-1)/K * 2^(-r/(K-1)) under the
/// cell distribution.
pub fn expected_distortion(model: &QubModel) -> f64 {
    let k = model.users as f64;
    (k - 1.0) / k * model.cell_boundary()
}

/// Channel-state model at the transmitter: quantized through a cap-model
/// codebook, or perfect (zero quantization error).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum CsitModel {
    Qub(QubModel),
    Perfect,
}

impl CsitModel {
    pub fn expected_distortion(&self) -> f64 {
        match self {
            CsitModel::Qub(m) => expected_distortion(m),
            CsitModel::Perfect => 0.0,
        }
    }

    pub fn quantize(&self, h: &ChannelRealization, rng: &mut RngStream) -> Result<QuantizedCsit> {
        match self {
            CsitModel::Qub(m) => quantize_channel(h, m, rng),
            CsitModel::Perfect => perfect_csit(h, rng),
        }
    }

    /// Draws a channel vector from the conditional law given a quantized
    /// direction.
    pub fn sample_conditional(&self, hhat: &[Complex64], rng: &mut RngStream) -> Vec<Complex64> {
        match self {
            CsitModel::Qub(m) => sample_conditional_channel(hhat, m, rng),
            CsitModel::Perfect => {
                let k = hhat.len();
                let norm = rng.gamma(k as f64).sqrt();
                hhat.iter().map(|&x| x * norm).collect()
            }
        }
    }
}

/// Transmitter-side view of one channel realization.
#[derive(Debug, Clone)]
pub struct QuantizedCsit {
    /// The model the feedback was generated under.
    pub model: CsitModel,
    /// K x K matrix of unit-norm quantized directions (column per user).
    pub hhat: ComplexMatrix,
    /// Per-user quantization errors d_c^2(i) in [0, 1].
    pub dc2: Vec<f64>,
    /// Per-user error directions, unit vectors orthogonal to the matching
    /// `hhat` column (column per user). Inert where dc2 = 0; the all-zero
    /// column stands in when no perpendicular space exists (K = 1).
    pub edir: ComplexMatrix,
    /// Per-user realized channel norms ||h_i||^2.
    pub channel_norms: Vec<f64>,
}

impl QuantizedCsit {
    pub fn users(&self) -> usize {
        self.hhat.cols()
    }

    pub fn quantized_direction(&self, i: usize) -> Vec<Complex64> {
        self.hhat.column(i)
    }
}

/// Samples a unit vector isotropically distributed in the orthogonal
/// complement of the unit vector `axis`.
fn isotropic_perp(axis: &[Complex64], rng: &mut RngStream) -> Result<Vec<Complex64>> {
    let k = axis.len();
    if k < 2 {
        return Err(Error::invalid(
            "isotropic_perp: no perpendicular space in dimension 1",
        ));
    }
    loop {
        let u = sample_complex_gaussian(k, rng)?;
        let along = dot_conj(axis, &u);
        let mut v: Vec<Complex64> = u
            .iter()
            .zip(axis)
            .map(|(&ui, &ai)| ui - along * ai)
            .collect();
        let n = norm_sq(&v).sqrt();
        // Vanishing residual has probability zero; resample to stay safe.
        if n > 1e-9 {
            for x in &mut v {
                *x /= n;
            }
            return Ok(v);
        }
    }
}

/// Statistically generates the cap-model quantization outcome for every
/// user of a channel realization.
///
/// For each user the error d^2 is drawn from the cell law and the pair
/// (hhat, edir) is constructed by rotating the sampled error geometry onto
/// the realized direction, so the reconstruction identity holds exactly and
/// the marginals match the codebook-ensemble model.
pub fn quantize_channel(
    h: &ChannelRealization,
    model: &QubModel,
    rng: &mut RngStream,
) -> Result<QuantizedCsit> {
    let k = h.matrix.rows();
    if k < 2 {
        return Err(Error::invalid("quantize_channel: need K >= 2"));
    }
    if model.users != k {
        return Err(Error::invalid(format!(
            "quantize_channel: model dimension {} != channel dimension {}",
            model.users, k
        )));
    }
    let users = h.users();
    let mut hhat = ComplexMatrix::zeros(k, users);
    let mut edir = ComplexMatrix::zeros(k, users);
    let mut dc2 = Vec::with_capacity(users);
    let mut channel_norms = Vec::with_capacity(users);
    for i in 0..users {
        let hi = h.user_channel(i);
        let nsq = norm_sq(&hi);
        if nsq == 0.0 {
            return Err(Error::domain("quantize_channel: zero channel vector"));
        }
        let dir: Vec<Complex64> = hi.iter().map(|&x| x / nsq.sqrt()).collect();
        let d2 = model.sample_distortion(rng);
        let v = isotropic_perp(&dir, rng)?;
        let (c, s) = ((1.0 - d2).sqrt(), d2.sqrt());
        // hhat = c*dir + s*v and e = s*dir - c*v satisfy e orthogonal to hhat and
        // dir = c*hhat + s*e.
        let hh: Vec<Complex64> = dir.iter().zip(&v).map(|(&d, &vv)| c * d + s * vv).collect();
        let ee: Vec<Complex64> = dir.iter().zip(&v).map(|(&d, &vv)| s * d - c * vv).collect();
        hhat.set_column(i, &hh);
        edir.set_column(i, &ee);
        dc2.push(d2);
        channel_norms.push(nsq);
    }
    Ok(QuantizedCsit {
        model: CsitModel::Qub(*model),
        hhat,
        dc2,
        edir,
        channel_norms,
    })
}

/// Perfect-CSIT counterpart of [`quantize_channel`]: the fed-back direction
/// is the true one and the error is zero.
pub fn perfect_csit(h: &ChannelRealization, rng: &mut RngStream) -> Result<QuantizedCsit> {
    let k = h.matrix.rows();
    let users = h.users();
    let mut hhat = ComplexMatrix::zeros(k, users);
    let mut edir = ComplexMatrix::zeros(k, users);
    let mut channel_norms = Vec::with_capacity(users);
    for i in 0..users {
        let hi = h.user_channel(i);
        let nsq = norm_sq(&hi);
        if nsq == 0.0 {
            return Err(Error::domain("perfect_csit: zero channel vector"));
        }
        let dir: Vec<Complex64> = hi.iter().map(|&x| x / nsq.sqrt()).collect();
        if k >= 2 {
            let v = isotropic_perp(&dir, rng)?;
            edir.set_column(i, &v);
        }
        hhat.set_column(i, &dir);
        channel_norms.push(nsq);
    }
    Ok(QuantizedCsit {
        model: CsitModel::Perfect,
        hhat,
        dc2: vec![0.0; users],
        edir,
        channel_norms,
    })
}

/// Brute-force nearest-codeword quantization of a single channel vector;
/// returns the winning index and the achieved error sin^2 of the angle.
pub fn quantize_explicit(h: &[Complex64], codebook: &[Vec<Complex64>]) -> Result<(usize, f64)> {
    if codebook.is_empty() {
        return Err(Error::invalid("quantize_explicit: empty codebook"));
    }
    let nsq = norm_sq(h);
    if nsq == 0.0 {
        return Err(Error::invalid("quantize_explicit: zero channel vector"));
    }
    for (j, q) in codebook.iter().enumerate() {
        if q.len() != h.len() {
            return Err(Error::invalid(format!(
                "quantize_explicit: codeword {j} has dimension {} != {}",
                q.len(),
                h.len()
            )));
        }
        if (norm_sq(q) - 1.0).abs() > 1e-6 {
            return Err(Error::invalid(format!(
                "quantize_explicit: codeword {j} is not unit norm"
            )));
        }
    }
    let mut best = (0usize, f64::INFINITY);
    for (j, q) in codebook.iter().enumerate() {
        let align = dot_conj(h, q).norm_sqr() / nsq;
        let d2 = (1.0 - align).max(0.0);
        if d2 < best.1 {
            best = (j, d2);
        }
    }
    Ok(best)
}

/// Draws a channel vector from the conditional distribution given the
/// quantized direction `hhat`: the norm is chi-square of mean K, the error
/// magnitude follows the cell law, and the error direction is isotropic in
/// the complement of `hhat`.
pub fn sample_conditional_channel(
    hhat: &[Complex64],
    model: &QubModel,
    rng: &mut RngStream,
) -> Vec<Complex64> {
    let k = hhat.len();
    debug_assert!(k >= 2);
    debug_assert_eq!(model.users, k);
    let norm = rng.gamma(k as f64).sqrt();
    let d2 = model.sample_distortion(rng);
    let e = isotropic_perp(hhat, rng).expect("K >= 2 has a perpendicular space");
    let (c, s) = ((1.0 - d2).sqrt(), d2.sqrt());
    hhat.iter()
        .zip(&e)
        .map(|(&hh, &ee)| norm * (c * hh + s * ee))
        .collect()
}
