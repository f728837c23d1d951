//! Replicated experiments over shared deployments.
//!
//! Replicate `i` of base seed `s` gets the seed `derive_seed(s,
//! REPLICATE_BASE + i)`. Its deployment is drawn from `derive_seed(rep,
//! ATTEMPT_BASE + j)` for the first attempt `j` whose LAEE seed topology can
//! be built for every configured `m`; the same value seeds LAEE growth,
//! LEACH election, BA growth and the failure sweeps, so every model in a
//! replicate sees the same sensors and the same removal sets.

use std::fmt;
use std::str::FromStr;

use laee_core::analysis::{
    degree_stats, failure_outcomes, ks_distance, mean_std, summarize_outcomes, DegreeHistogram,
    DegreeStats, RobustnessCurve, TheoreticalModel,
};
use laee_core::baselines::{ba_graph, dtg_topology, knn_topology, leach_composite, IntraCluster};
use laee_core::rng::{derive_seed, stream};
use laee_core::{evolve, Deployment, Error, EvolutionReport, Graph, SimRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::error::CliError;

pub const MAX_DEPLOY_ATTEMPTS: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Model {
    Udg,
    Laee(usize),
    Knn,
    Dtg,
    LeachKnn,
    LeachDtg,
    Ba,
}

impl Model {
    /// Rows of the degree table and curves of the robustness figure.
    pub fn table_models(cfg: &ExperimentConfig) -> Vec<Model> {
        let mut models = vec![Model::Udg];
        models.extend(cfg.laee.m.iter().map(|&m| Model::Laee(m)));
        models.extend([Model::Knn, Model::Dtg, Model::LeachKnn, Model::LeachDtg]);
        models
    }

    pub fn label(&self, cfg: &ExperimentConfig) -> String {
        match self {
            Model::Udg => "UDG".into(),
            Model::Laee(m) => format!("LAEE(m={m})"),
            Model::Knn => format!("KNN(k={})", cfg.baselines.knn_k),
            Model::Dtg => "DTG".into(),
            Model::LeachKnn => "LEACH+KNN".into(),
            Model::LeachDtg => "LEACH+DTG".into(),
            Model::Ba => format!("BA(m={})", cfg.baselines.ba_m),
        }
    }

    /// Short identifier used in file names.
    pub fn slug(&self) -> String {
        match self {
            Model::Udg => "udg".into(),
            Model::Laee(m) => format!("laee_m{m}"),
            Model::Knn => "knn".into(),
            Model::Dtg => "dtg".into(),
            Model::LeachKnn => "leach_knn".into(),
            Model::LeachDtg => "leach_dtg".into(),
            Model::Ba => "ba".into(),
        }
    }
}

/// Model family as named on the command line; LAEE takes its `m` separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Laee,
    Udg,
    Knn,
    Dtg,
    LeachKnn,
    LeachDtg,
    Ba,
}

impl ModelKind {
    pub fn with_m(self, m: usize) -> Model {
        match self {
            ModelKind::Laee => Model::Laee(m),
            ModelKind::Udg => Model::Udg,
            ModelKind::Knn => Model::Knn,
            ModelKind::Dtg => Model::Dtg,
            ModelKind::LeachKnn => Model::LeachKnn,
            ModelKind::LeachDtg => Model::LeachDtg,
            ModelKind::Ba => Model::Ba,
        }
    }
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "laee" => ModelKind::Laee,
            "udg" => ModelKind::Udg,
            "knn" => ModelKind::Knn,
            "dtg" => ModelKind::Dtg,
            "leach+knn" => ModelKind::LeachKnn,
            "leach+dtg" => ModelKind::LeachDtg,
            "ba" => ModelKind::Ba,
            other => {
                return Err(format!(
                    "unknown model '{other}' (expected laee, udg, knn, dtg, leach+knn, leach+dtg or ba)"
                ))
            }
        })
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Laee => "laee",
            ModelKind::Udg => "udg",
            ModelKind::Knn => "knn",
            ModelKind::Dtg => "dtg",
            ModelKind::LeachKnn => "leach+knn",
            ModelKind::LeachDtg => "leach+dtg",
            ModelKind::Ba => "ba",
        })
    }
}

/// One replicate: a deployment on which LAEE grows for every configured `m`.
#[derive(Clone, Debug)]
pub struct Replicate {
    pub index: usize,
    pub seed: u64,
    /// Seed of the accepted deployment; also drives every model built on it.
    pub deploy_seed: u64,
    /// Deployments drawn, including the accepted one.
    pub attempts: usize,
    pub deployment: Deployment,
    pub laee: Vec<(usize, Graph, EvolutionReport)>,
}

impl Replicate {
    pub fn prepare(cfg: &ExperimentConfig, index: usize) -> Result<Self, CliError> {
        let seed = derive_seed(cfg.seed, stream::REPLICATE_BASE + index as u64);
        for attempt in 0..MAX_DEPLOY_ATTEMPTS {
            let deploy_seed = derive_seed(seed, stream::ATTEMPT_BASE + attempt as u64);
            let dep =
                Deployment::generate(&cfg.deployment, cfg.energy.min, cfg.energy.max, deploy_seed)?;
            let grown: Result<Vec<_>, Error> = cfg
                .laee
                .m
                .iter()
                .map(|&m| evolve(&dep, &cfg.laee.params(m), deploy_seed).map(|(g, r)| (m, g, r)))
                .collect();
            match grown {
                Ok(laee) => {
                    return Ok(Self {
                        index,
                        seed,
                        deploy_seed,
                        attempts: attempt + 1,
                        deployment: dep,
                        laee,
                    })
                }
                Err(Error::Seed(_)) => continue,
                Err(e) => return Err(e.into()),
            }
        }
        Err(CliError::Runtime(format!(
            "replicate {index}: no deployment in {MAX_DEPLOY_ATTEMPTS} attempts supports the LAEE seed topology \
             (sink needs at least m0-1 = {} neighbors in range)",
            cfg.laee.m0 - 1
        )))
    }

    pub fn laee_graph(&self, m: usize) -> Option<&Graph> {
        self.laee
            .iter()
            .find(|(mm, _, _)| *mm == m)
            .map(|(_, g, _)| g)
    }

    pub fn build(&self, cfg: &ExperimentConfig, model: Model) -> Result<Graph, CliError> {
        let dep = &self.deployment;
        let leach = |intra| -> Result<Graph, CliError> {
            let mut rng = SimRng::new(self.deploy_seed, stream::LEACH);
            Ok(leach_composite(dep, cfg.baselines.p_head, intra, &mut rng)?.graph)
        };
        Ok(match model {
            Model::Udg => dep.udg_graph(),
            Model::Laee(m) => match self.laee_graph(m) {
                Some(g) => g.clone(),
                None => evolve(dep, &cfg.laee.params(m), self.deploy_seed)?.0,
            },
            Model::Knn => knn_topology(dep, cfg.baselines.knn_k),
            Model::Dtg => dtg_topology(dep),
            Model::LeachKnn => leach(IntraCluster::Knn(cfg.baselines.knn_k))?,
            Model::LeachDtg => leach(IntraCluster::Dtg)?,
            Model::Ba => ba_graph(
                cfg.deployment.n,
                cfg.laee.m0,
                cfg.baselines.ba_m,
                self.deploy_seed,
            )?,
        })
    }
}

/// Prepares all replicates in parallel; the result is in replicate order.
pub fn prepare_replicates(cfg: &ExperimentConfig) -> Result<Vec<Replicate>, CliError> {
    (0..cfg.replicates)
        .into_par_iter()
        .map(|i| Replicate::prepare(cfg, i))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MeanStd {
    pub mean: f64,
    pub std: f64,
}

impl MeanStd {
    pub fn of(values: &[f64]) -> Self {
        let (mean, std) = mean_std(values);
        Self { mean, std }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeRow {
    pub model: Model,
    pub label: String,
    pub avg: MeanStd,
    pub min: MeanStd,
    pub max: MeanStd,
    pub per_replicate: Vec<DegreeStats>,
}

pub fn table2(cfg: &ExperimentConfig, reps: &[Replicate]) -> Result<Vec<DegreeRow>, CliError> {
    Model::table_models(cfg)
        .into_iter()
        .map(|model| {
            let per_replicate: Vec<DegreeStats> = reps
                .par_iter()
                .map(|rep| Ok(degree_stats(&rep.build(cfg, model)?)?))
                .collect::<Result<_, CliError>>()?;
            let pick = |f: fn(&DegreeStats) -> f64| -> MeanStd {
                MeanStd::of(&per_replicate.iter().map(f).collect::<Vec<_>>())
            };
            Ok(DegreeRow {
                model,
                label: model.label(cfg),
                avg: pick(|s| s.avg),
                min: pick(|s| s.min as f64),
                max: pick(|s| s.max as f64),
                per_replicate,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeFit {
    pub m: usize,
    /// Degree histogram pooled over replicates.
    pub pooled: Vec<usize>,
    pub ks: Vec<f64>,
    pub below_m: Vec<f64>,
    pub max_degree: Vec<usize>,
}

impl DegreeFit {
    pub fn ks_mean(&self) -> f64 {
        MeanStd::of(&self.ks).mean
    }

    pub fn below_m_mean(&self) -> f64 {
        MeanStd::of(&self.below_m).mean
    }
}

pub fn theory_model(cfg: &ExperimentConfig, m: usize) -> Result<TheoreticalModel, CliError> {
    Ok(TheoreticalModel::uniform(
        m,
        cfg.energy.min,
        cfg.energy.max,
    )?)
}

/// Per-`m` degree distributions and their KS distance to the theoretical
/// curve, one KS value per replicate.
pub fn fig2(cfg: &ExperimentConfig, reps: &[Replicate]) -> Result<Vec<DegreeFit>, CliError> {
    cfg.laee
        .m
        .iter()
        .map(|&m| {
            let model = theory_model(cfg, m)?;
            let hists: Vec<DegreeHistogram> = reps
                .iter()
                .map(|rep| {
                    let g = rep.laee_graph(m).ok_or_else(|| {
                        CliError::Runtime(format!(
                            "replicate {} has no LAEE graph for m={m}",
                            rep.index
                        ))
                    })?;
                    Ok(DegreeHistogram::from_graph(g)?)
                })
                .collect::<Result<_, CliError>>()?;
            let ks = hists
                .par_iter()
                .map(|h| ks_distance(&h.pmf(), &model))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(DegreeFit {
                m,
                pooled: DegreeHistogram::merge(&hists)?.counts().to_vec(),
                ks,
                below_m: hists.iter().map(|h| h.fraction_below(m)).collect(),
                max_degree: hists.iter().map(DegreeHistogram::max_degree).collect(),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RobustnessRow {
    pub model: Model,
    pub label: String,
    /// Pooled over replicates; `trials` counts replicates times trials.
    pub curve: RobustnessCurve,
}

/// Random-failure curves for every table model. Within a replicate all
/// models share the sweep seed, so they lose the same nodes.
pub fn fig3(cfg: &ExperimentConfig, reps: &[Replicate]) -> Result<Vec<RobustnessRow>, CliError> {
    let fractions = &cfg.analysis.fractions;
    Model::table_models(cfg)
        .into_iter()
        .map(|model| {
            let per_rep: Vec<Vec<Vec<(f64, f64)>>> = reps
                .par_iter()
                .map(|rep| {
                    let g = rep.build(cfg, model)?;
                    Ok(failure_outcomes(
                        &g,
                        rep.deployment.sink,
                        fractions,
                        cfg.analysis.trials,
                        rep.deploy_seed,
                    )?)
                })
                .collect::<Result<_, CliError>>()?;
            let pooled: Vec<Vec<(f64, f64)>> = (0..fractions.len())
                .map(|i| per_rep.iter().flat_map(|r| r[i].iter().copied()).collect())
                .collect();
            Ok(RobustnessRow {
                model,
                label: model.label(cfg),
                curve: summarize_outcomes(fractions, &pooled, cfg.seed),
            })
        })
        .collect()
}
