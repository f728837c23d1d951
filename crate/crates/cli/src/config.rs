//! Experiment configuration: a JSON document whose defaults reproduce the
//! standard simulation setup (1000 nodes on 1000 m x 1000 m, r = 100 m, sink
//! at the origin corner, m0 = e0 = 10, m in {3, 5, 8}, k_max = 30, energy
//! uniform on [0.5, 1] J). Any field may be omitted; command-line flags
//! override file values.

use std::path::{Path, PathBuf};

use laee_core::baselines::leach::DEFAULT_P_HEAD;
use laee_core::{AttachmentDraw, DeploymentConfig, EnergyWeight, LaeeParams};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EnergyBounds {
    pub min: f64,
    pub max: f64,
}

impl Default for EnergyBounds {
    fn default() -> Self {
        Self { min: 0.5, max: 1.0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LaeeSection {
    pub m0: usize,
    pub e0: usize,
    pub m: Vec<usize>,
    pub k_max: usize,
    pub f_kind: EnergyWeight,
    pub draw: AttachmentDraw,
}

impl Default for LaeeSection {
    fn default() -> Self {
        Self {
            m0: 10,
            e0: 10,
            m: vec![3, 5, 8],
            k_max: 30,
            f_kind: EnergyWeight::Identity,
            draw: AttachmentDraw::Independent,
        }
    }
}

impl LaeeSection {
    pub fn params(&self, m: usize) -> LaeeParams {
        LaeeParams {
            m0: self.m0,
            e0: self.e0,
            m,
            k_max: self.k_max,
            f_kind: self.f_kind,
            draw: self.draw,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BaselineSection {
    pub knn_k: usize,
    pub p_head: f64,
    /// Links per node for the BA reference graph.
    pub ba_m: usize,
}

impl Default for BaselineSection {
    fn default() -> Self {
        Self {
            knn_k: 6,
            p_head: DEFAULT_P_HEAD,
            ba_m: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisSection {
    pub fractions: Vec<f64>,
    pub trials: usize,
}

impl Default for AnalysisSection {
    fn default() -> Self {
        Self {
            fractions: (0..10).map(|i| i as f64 / 10.0).collect(),
            trials: 20,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub deployment: DeploymentConfig,
    pub energy: EnergyBounds,
    pub laee: LaeeSection,
    pub baselines: BaselineSection,
    pub analysis: AnalysisSection,
    pub seed: u64,
    pub replicates: usize,
    pub out_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            deployment: DeploymentConfig::default(),
            energy: EnergyBounds::default(),
            laee: LaeeSection::default(),
            baselines: BaselineSection::default(),
            analysis: AnalysisSection::default(),
            seed: 1,
            replicates: 20,
            out_dir: PathBuf::from("out"),
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.deployment.validate()?;
        let EnergyBounds { min, max } = self.energy;
        if !(min > 0.0 && min <= max && max.is_finite()) {
            return Err(CliError::Config(format!(
                "energy bounds must satisfy 0 < min <= max, got [{min}, {max}]"
            )));
        }
        if self.laee.m.is_empty() {
            return Err(CliError::Config("laee.m needs at least one value".into()));
        }
        for &m in &self.laee.m {
            self.laee.params(m).validate()?;
        }
        if self.baselines.knn_k == 0 {
            return Err(CliError::Config("baselines.knn_k must be >= 1".into()));
        }
        let p = self.baselines.p_head;
        if !(p > 0.0 && p < 1.0) {
            return Err(CliError::Config(format!(
                "baselines.p_head must lie in (0, 1), got {p}"
            )));
        }
        let ba_m = self.baselines.ba_m;
        if ba_m == 0 || ba_m > self.laee.m0 || self.laee.m0 >= self.deployment.n {
            return Err(CliError::Config(format!(
                "baselines.ba_m must satisfy 1 <= ba_m <= m0 < n, got ba_m={ba_m}"
            )));
        }
        if self.analysis.trials == 0 {
            return Err(CliError::Config("analysis.trials must be >= 1".into()));
        }
        let f = &self.analysis.fractions;
        if f.iter().any(|p| !(0.0..=1.0).contains(p)) || f.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CliError::Config(
                "analysis.fractions must be strictly increasing within [0, 1]".into(),
            ));
        }
        if self.replicates == 0 {
            return Err(CliError::Config("replicates must be >= 1".into()));
        }
        Ok(())
    }
}
