//! Benchmark helpers: canned inputs shared by the criterion targets.

use zfdpc_core::{
    quantize_channel, sample_channel, BeamformingPlan, ComplexMatrix, QuantizedCsit, QubModel,
    RngStream, SystemConfig,
};

pub fn random_square(n: usize, seed: u64) -> ComplexMatrix {
    let cfg = SystemConfig::new(n, 1.0, n, 0).unwrap();
    sample_channel(&cfg, &mut RngStream::new(seed, 0))
        .unwrap()
        .matrix
}

pub fn quantized_instance(k: usize, seed: u64) -> (SystemConfig, QuantizedCsit, BeamformingPlan) {
    let cfg = SystemConfig::new(k, 10.0, k, k).unwrap();
    let mut rng = RngStream::new(seed, 0);
    let h = sample_channel(&cfg, &mut rng).unwrap();
    let model = QubModel::new(k, k).unwrap();
    let csit = quantize_channel(&h, &model, &mut rng).unwrap();
    let plan = BeamformingPlan::from_quantized(&csit, k).unwrap();
    (cfg, csit, plan)
}
