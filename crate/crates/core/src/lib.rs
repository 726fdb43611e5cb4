//! Throughput of the finite-rate-feedback Gaussian broadcast channel under
//! zero-forcing dirty-paper coding: closed-form large-system limits,
//! finite-dimensional Monte Carlo simulation, a zero-forcing beamforming
//! comparator, and optimization of the number of served users.

pub mod asymptotic;
pub mod channel;
pub mod error;
pub mod mc;
pub mod numerics;
pub mod quantization;
pub mod selection;
pub mod zfbf;
pub mod zfdpc;

pub use asymptotic::{c_inf, rho, rho_perfect, x_inf, AsymptoticParams};
pub use channel::{sample_channel, ChannelRealization, SystemConfig};
pub use error::{Error, Result};
pub use mc::ThroughputEstimate;
pub use numerics::{integrate_01, qr_factor, sample_complex_gaussian, ComplexMatrix, RngStream};
pub use quantization::{
    expected_distortion, perfect_csit, quantize_channel, quantize_explicit,
    sample_conditional_channel, CsitModel, QuantizedCsit, QubModel,
};
pub use selection::{s_opt_finite, sbar_opt};
pub use zfbf::{zfbf_throughput_mc, zfbf_throughput_mc_with, zfbf_vectors};
pub use zfdpc::{
    build_moments, conditional_outer_product, inflation_closed_form, inflation_generic, rate_user,
    throughput_mc, throughput_mc_with, BeamformingPlan, ConditionalMoments, InflationFactor,
    McOptions,
};
