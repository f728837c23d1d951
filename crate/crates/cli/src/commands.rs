//! Command implementations. Each command renders its files and stdout
//! summary in memory first, so the output is a pure function of the
//! configuration; [`Report::write`] then commits the files atomically.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use laee_core::analysis::{degree_stats, fit_power_law, giant_components, DegreeHistogram};
use laee_core::{Graph, GraphDocument};
use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::error::CliError;
use crate::experiments::{self, prepare_replicates, theory_model, Model, ModelKind, Replicate};
use crate::output::{fmt_g9, write_atomic, Csv};

#[derive(Debug, Default, PartialEq)]
pub struct Report {
    /// File contents keyed by path relative to the output directory.
    pub files: Vec<(PathBuf, String)>,
    pub stdout: String,
}

impl Report {
    pub fn write(&self, out_dir: &Path) -> Result<(), CliError> {
        for (name, text) in &self.files {
            write_atomic(&out_dir.join(name), text.as_bytes())?;
        }
        Ok(())
    }

    fn file(&mut self, name: impl Into<PathBuf>, text: String) {
        self.files.push((name.into(), text));
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Runtime(format!("serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn g(x: f64) -> String {
    fmt_g9(x)
}

/// Builds one model per replicate and writes the deployment and graph JSON.
pub fn generate(
    cfg: &ExperimentConfig,
    kind: ModelKind,
    m: Option<usize>,
) -> Result<Report, CliError> {
    let model = match kind {
        ModelKind::Laee => {
            let m = m.unwrap_or(cfg.laee.m[0]);
            cfg.laee.params(m).validate()?;
            Model::Laee(m)
        }
        other => other.with_m(0),
    };
    let mut run_cfg = cfg.clone();
    if let Model::Laee(m) = model {
        run_cfg.laee.m = vec![m];
    }
    let reps = prepare_replicates(&run_cfg)?;
    let mut report = Report::default();
    for rep in &reps {
        let graph = rep.build(&run_cfg, model)?;
        let stats = degree_stats(&graph)?;
        report.file(
            format!("deployment_r{}.json", rep.index),
            to_json(&rep.deployment)?,
        );
        report.file(
            format!("{}_r{}.json", model.slug(), rep.index),
            to_json(&graph.to_document())?,
        );
        writeln!(
            report.stdout,
            "replicate {} seed {} attempts {}: {} nodes {} edges, degree avg {} min {} max {}",
            rep.index,
            rep.deploy_seed,
            rep.attempts,
            graph.node_count(),
            graph.edge_count(),
            g(stats.avg),
            stats.min,
            stats.max
        )
        .unwrap();
    }
    Ok(report)
}

pub fn table2_from(cfg: &ExperimentConfig, reps: &[Replicate]) -> Result<Report, CliError> {
    let rows = experiments::table2(cfg, reps)?;
    let mut csv = Csv::new(&[
        "model",
        "avg_mean",
        "avg_std",
        "min_mean",
        "min_std",
        "max_mean",
        "max_std",
        "replicates",
    ]);
    let mut report = Report::default();
    for row in &rows {
        csv.row(&[
            row.label.clone(),
            g(row.avg.mean),
            g(row.avg.std),
            g(row.min.mean),
            g(row.min.std),
            g(row.max.mean),
            g(row.max.std),
            reps.len().to_string(),
        ]);
        writeln!(
            report.stdout,
            "{:<12} avg {:>9} +- {:<9} min {:>6} max {:>6}",
            row.label,
            format!("{:.2}", row.avg.mean),
            format!("{:.2}", row.avg.std),
            format!("{:.1}", row.min.mean),
            format!("{:.1}", row.max.mean)
        )
        .unwrap();
    }
    report.file("table2.csv", csv.into_string());
    Ok(report)
}

pub fn table2(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    table2_from(cfg, &prepare_replicates(cfg)?)
}

pub fn fig2_from(cfg: &ExperimentConfig, reps: &[Replicate]) -> Result<Report, CliError> {
    let fits = experiments::fig2(cfg, reps)?;
    let mut report = Report::default();
    let mut ks_csv = Csv::new(&["m", "replicate", "ks", "below_m_fraction", "max_degree"]);
    for fit in &fits {
        let m = fit.m;
        let hist = DegreeHistogram::from_degrees(&expand(&fit.pooled))?;
        let pmf = hist.pmf();
        let ccdf = hist.ccdf();
        let model = theory_model(cfg, m)?;
        let k_hi = hist.max_degree();
        let tail: f64 = pmf.iter().skip(m).sum();
        let binned = if k_hi >= m && tail > 0.0 {
            model.binned_pmf(k_hi)?
        } else {
            Vec::new()
        };
        let mut csv = Csv::new(&["k", "count", "pmf", "ccdf", "theory_pk", "theory_bin"]);
        for k in 0..=k_hi {
            let (pk, bin) = if k >= m && !binned.is_empty() {
                (g(model.pk(k)?), g(binned[k - m] * tail))
            } else {
                (String::new(), String::new())
            };
            csv.row(&[
                k.to_string(),
                fit.pooled[k].to_string(),
                g(pmf[k]),
                g(ccdf[k]),
                pk,
                bin,
            ]);
        }
        report.file(format!("fig2_m{m}.csv"), csv.into_string());
        for (i, rep) in reps.iter().enumerate() {
            ks_csv.row(&[
                m.to_string(),
                rep.index.to_string(),
                g(fit.ks[i]),
                g(fit.below_m[i]),
                fit.max_degree[i].to_string(),
            ]);
        }
        writeln!(
            report.stdout,
            "m={m}: mean KS {:.4}, degree < m {:.2}%, max degree {}",
            fit.ks_mean(),
            100.0 * fit.below_m_mean(),
            fit.max_degree.iter().max().copied().unwrap_or(0)
        )
        .unwrap();
    }
    report.file("fig2_ks.csv", ks_csv.into_string());
    Ok(report)
}

fn expand(counts: &[usize]) -> Vec<usize> {
    counts
        .iter()
        .enumerate()
        .flat_map(|(k, &c)| std::iter::repeat_n(k, c))
        .collect()
}

pub fn fig2(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    fig2_from(cfg, &prepare_replicates(cfg)?)
}

pub fn fig3_from(cfg: &ExperimentConfig, reps: &[Replicate]) -> Result<Report, CliError> {
    let rows = experiments::fig3(cfg, reps)?;
    let mut csv = Csv::new(&[
        "model",
        "fraction",
        "gc_mean",
        "gc_std",
        "sink_gc_mean",
        "sink_gc_std",
        "trials",
    ]);
    let mut report = Report::default();
    for row in &rows {
        let c = &row.curve;
        for i in 0..c.removal_fractions.len() {
            csv.row(&[
                row.label.clone(),
                g(c.removal_fractions[i]),
                g(c.gc_fraction_mean[i]),
                g(c.gc_fraction_std[i]),
                g(c.sink_gc_fraction_mean[i]),
                g(c.sink_gc_fraction_std[i]),
                c.trials.to_string(),
            ]);
        }
        let curve: Vec<String> = c
            .gc_fraction_mean
            .iter()
            .map(|x| format!("{x:.3}"))
            .collect();
        writeln!(report.stdout, "{:<12} {}", row.label, curve.join(" ")).unwrap();
    }
    report.file("fig3.csv", csv.into_string());
    Ok(report)
}

pub fn fig3(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    fig3_from(cfg, &prepare_replicates(cfg)?)
}

/// Statistics for a graph file written by `generate`. Everything goes to
/// stdout: a summary, then the degree histogram as CSV.
pub fn analyze(path: &Path, sink: usize, fit_k_min: Option<usize>) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Runtime(format!("cannot read {}: {e}", path.display())))?;
    let doc: GraphDocument = serde_json::from_str(&text).map_err(|e| {
        CliError::Runtime(format!("{} is not a graph document: {e}", path.display()))
    })?;
    let graph = Graph::from_document(&doc)?;
    if sink >= graph.node_count() {
        return Err(CliError::Config(format!(
            "sink {sink} is not a node of a {}-node graph",
            graph.node_count()
        )));
    }
    let stats = degree_stats(&graph)?;
    let (gc, sink_gc) = giant_components(&graph, sink);
    let mut out = String::new();
    writeln!(
        out,
        "nodes {} edges {} directed {}",
        graph.node_count(),
        graph.edge_count(),
        graph.is_directed()
    )
    .unwrap();
    writeln!(
        out,
        "degree avg {} min {} max {}",
        g(stats.avg),
        stats.min,
        stats.max
    )
    .unwrap();
    writeln!(out, "giant component {gc} sink component {sink_gc}").unwrap();
    if let Some(k_min) = fit_k_min {
        let fit = fit_power_law(&graph.degrees(), k_min)?;
        writeln!(
            out,
            "power-law fit k >= {}: gamma {} stderr {} samples {}",
            fit.k_min,
            g(fit.gamma),
            g(fit.stderr),
            fit.samples
        )
        .unwrap();
    }
    let hist = DegreeHistogram::from_graph(&graph)?;
    let mut csv = Csv::new(&["k", "count", "pmf", "ccdf"]);
    let (pmf, ccdf) = (hist.pmf(), hist.ccdf());
    for (k, &c) in hist.counts().iter().enumerate() {
        csv.row(&[k.to_string(), c.to_string(), g(pmf[k]), g(ccdf[k])]);
    }
    out.push_str(csv.as_str());
    Ok(Report {
        files: Vec::new(),
        stdout: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> ExperimentConfig {
        let mut cfg = ExperimentConfig::default();
        cfg.deployment.n = 150;
        cfg.deployment.side = 350.0;
        cfg.laee.m = vec![3, 5];
        cfg.replicates = 2;
        cfg.analysis.trials = 2;
        cfg
    }

    #[test]
    fn table2_has_one_row_per_model() {
        let report = table2(&small()).unwrap();
        let (name, csv) = &report.files[0];
        assert_eq!(name, Path::new("table2.csv"));
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(
            lines[0],
            "model,avg_mean,avg_std,min_mean,min_std,max_mean,max_std,replicates"
        );
        assert_eq!(lines.len(), 1 + 7);
        assert!(lines[2].starts_with("LAEE(m=3),"));
    }

    #[test]
    fn fig2_pmf_column_sums_to_one() {
        let cfg = small();
        let report = fig2(&cfg).unwrap();
        for (name, csv) in report
            .files
            .iter()
            .filter(|(n, _)| n.to_string_lossy().starts_with("fig2_m"))
        {
            let sum: f64 = csv
                .lines()
                .skip(1)
                .map(|l| l.split(',').nth(2).unwrap().parse::<f64>().unwrap())
                .sum();
            assert!((sum - 1.0).abs() < 1e-7, "{name:?}: {sum}");
        }
    }

    #[test]
    fn fig2_theory_column_matches_direct_calls() {
        let cfg = small();
        let report = fig2(&cfg).unwrap();
        let csv = &report.files[0].1;
        let model = theory_model(&cfg, 3).unwrap();
        for line in csv.lines().skip(1) {
            let cells: Vec<&str> = line.split(',').collect();
            let k: usize = cells[0].parse().unwrap();
            if k < 3 {
                assert_eq!(cells[4], "");
            } else {
                assert_eq!(cells[4], fmt_g9(model.pk(k).unwrap()));
            }
        }
    }

    #[test]
    fn generate_writes_deployment_and_graph() {
        let mut cfg = small();
        cfg.replicates = 1;
        let report = generate(&cfg, ModelKind::Laee, Some(5)).unwrap();
        let names: Vec<String> = report
            .files
            .iter()
            .map(|(n, _)| n.display().to_string())
            .collect();
        assert_eq!(names, vec!["deployment_r0.json", "laee_m5_r0.json"]);
        let doc: GraphDocument = serde_json::from_str(&report.files[1].1).unwrap();
        assert_eq!(doc.node_count, 150);
        assert!(report.stdout.starts_with("replicate 0 seed "));
    }

    #[test]
    fn generate_rejects_m_above_m0() {
        let err = generate(&small(), ModelKind::Laee, Some(11)).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn analyze_round_trips_a_generated_graph() {
        let mut cfg = small();
        cfg.replicates = 1;
        let report = generate(&cfg, ModelKind::Dtg, None).unwrap();
        let dir = tempfile::tempdir().unwrap();
        report.write(dir.path()).unwrap();
        let out = analyze(&dir.path().join("dtg_r0.json"), 0, Some(3))
            .unwrap()
            .stdout;
        assert!(out.starts_with("nodes 150 edges "));
        assert!(out.contains("power-law fit k >= 3"));
        assert!(out.contains("k,count,pmf,ccdf\n"));
        assert!(analyze(&dir.path().join("dtg_r0.json"), 999, None).is_err());
    }
}
