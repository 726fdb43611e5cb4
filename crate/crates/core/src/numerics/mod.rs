//! Complex linear algebra, seeded random streams, and quadrature shared by
//! the channel, quantization, and throughput modules.

pub mod matrix;
pub mod qr;
pub mod quadrature;
pub mod rng;

pub use matrix::{dot_conj, norm_sq, ComplexMatrix};
pub use qr::qr_factor;
pub use quadrature::integrate_01;
pub use rng::{sample_complex_gaussian, RngStream};
