//! Shared fixtures for the benchmarks.

use laee_core::{evolve, Deployment, DeploymentConfig, Graph, LaeeParams};

/// First standard-size deployment, by increasing seed, on which LAEE can
/// seed its topology.
pub fn standard_deployment() -> (Deployment, u64) {
    let cfg = DeploymentConfig::default();
    (0u64..)
        .find_map(|seed| {
            let dep = Deployment::generate(&cfg, 0.5, 1.0, seed).ok()?;
            evolve(&dep, &LaeeParams::with_m(3), seed).ok()?;
            Some((dep, seed))
        })
        .expect("some seed supports the seed topology")
}

pub fn laee_graph(dep: &Deployment, m: usize, seed: u64) -> Graph {
    evolve(dep, &LaeeParams::with_m(m), seed)
        .expect("evolution")
        .0
}
