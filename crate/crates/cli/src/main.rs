use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use laee_cli::commands;
use laee_cli::experiments::ModelKind;
use laee_cli::{CliError, ExperimentConfig, Report};
use laee_core::{AttachmentDraw, EnergyWeight};

/// Scale-free sensor network topology experiments.
#[derive(Parser)]
#[command(name = "laee", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build one model per replicate and write deployment and graph JSON.
    Generate {
        #[command(flatten)]
        common: Common,
        /// laee, udg, knn, dtg, leach+knn, leach+dtg or ba.
        #[arg(long, default_value = "laee")]
        model: ModelKind,
    },
    /// Average/min/max degree per model, mean and std over replicates.
    Table2(Common),
    /// LAEE degree distributions against the theoretical curve.
    Fig2(Common),
    /// Giant component under random node failure.
    Fig3(Common),
    /// Statistics for an existing graph JSON file.
    Analyze {
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        sink: usize,
        /// Fit a discrete power law to degrees >= K.
        #[arg(long, value_name = "K")]
        fit_k_min: Option<usize>,
    },
}

#[derive(Args)]
struct Common {
    /// JSON configuration file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    replicates: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Node count, sink included.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    side: Option<f64>,
    /// Transmission range.
    #[arg(long)]
    range: Option<f64>,
    /// Links per joining node; repeat or comma-separate for several.
    #[arg(long, value_delimiter = ',')]
    m: Vec<usize>,
    #[arg(long)]
    m0: Option<usize>,
    #[arg(long)]
    e0: Option<usize>,
    #[arg(long)]
    k_max: Option<usize>,
    #[arg(long)]
    energy_min: Option<f64>,
    #[arg(long)]
    energy_max: Option<f64>,
    /// identity, square or sqrt.
    #[arg(long)]
    f_kind: Option<String>,
    /// independent or distinct.
    #[arg(long)]
    draw: Option<String>,
    #[arg(long)]
    knn_k: Option<usize>,
    #[arg(long)]
    p_head: Option<f64>,
    #[arg(long)]
    trials: Option<usize>,
}

fn parse_enum<T: serde::de::DeserializeOwned>(flag: &str, value: &str) -> Result<T, CliError> {
    serde_json::from_value(serde_json::Value::String(value.to_ascii_lowercase()))
        .map_err(|_| CliError::Config(format!("invalid --{flag} value '{value}'")))
}

impl Common {
    fn resolve(&self) -> Result<ExperimentConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig::default(),
        };
        macro_rules! set {
            ($flag:expr => $($field:tt)+) => {
                if let Some(v) = $flag.clone() {
                    cfg.$($field)+ = v;
                }
            };
        }
        set!(self.seed => seed);
        set!(self.replicates => replicates);
        set!(self.out => out_dir);
        set!(self.n => deployment.n);
        set!(self.side => deployment.side);
        set!(self.range => deployment.r);
        set!(self.m0 => laee.m0);
        set!(self.e0 => laee.e0);
        set!(self.k_max => laee.k_max);
        set!(self.energy_min => energy.min);
        set!(self.energy_max => energy.max);
        set!(self.knn_k => baselines.knn_k);
        set!(self.p_head => baselines.p_head);
        set!(self.trials => analysis.trials);
        if !self.m.is_empty() {
            cfg.laee.m = self.m.clone();
        }
        if let Some(f) = &self.f_kind {
            cfg.laee.f_kind = parse_enum::<EnergyWeight>("f-kind", f)?;
        }
        if let Some(d) = &self.draw {
            cfg.laee.draw = parse_enum::<AttachmentDraw>("draw", d)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn run(cli: Cli) -> Result<(Report, Option<PathBuf>), CliError> {
    Ok(match cli.command {
        Command::Generate { common, model } => {
            let cfg = common.resolve()?;
            let m = common.m.first().copied();
            (commands::generate(&cfg, model, m)?, Some(cfg.out_dir))
        }
        Command::Table2(common) => {
            let cfg = common.resolve()?;
            (commands::table2(&cfg)?, Some(cfg.out_dir))
        }
        Command::Fig2(common) => {
            let cfg = common.resolve()?;
            (commands::fig2(&cfg)?, Some(cfg.out_dir))
        }
        Command::Fig3(common) => {
            let cfg = common.resolve()?;
            (commands::fig3(&cfg)?, Some(cfg.out_dir))
        }
        Command::Analyze {
            graph,
            sink,
            fit_k_min,
        } => (commands::analyze(&graph, sink, fit_k_min)?, None),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = run(cli).and_then(|(report, out_dir)| {
        if let Some(dir) = out_dir {
            report.write(&dir)?;
        }
        Ok(report)
    });
    match result {
        Ok(report) => {
            print!("{}", report.stdout);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("laee: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
