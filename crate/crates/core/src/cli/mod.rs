//! Command-line front end. Every subcommand shares the global flags and the
//! layered configuration; the binary only forwards to [`run`].

pub mod config;
pub mod stages;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::{Meta, RunConfig, SensitivityConfig};
pub use stages::{Stage, StageOptions, Summary};

use crate::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "theory-shift", version, about = "Obstruction diagnostics for theory-shift benchmarks")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Benchmark directory of transition cards.
    #[arg(long, global = true)]
    pub benchmark: Option<PathBuf>,
    /// Master seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Obstruction weights file (TOML or JSON).
    #[arg(long, global = true)]
    pub weights: Option<PathBuf>,
    /// Output directory for artifacts.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// TOML run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a synthetic benchmark.
    Generate {
        #[arg(long)]
        variants: Option<usize>,
        #[arg(long)]
        noise_sigma: Option<f64>,
    },
    /// Rank candidates by the selection obstruction.
    Rank,
    /// Compare the obstruction with simpler scores.
    Baselines,
    /// Drop one term at a time.
    Ablate,
    /// Add wrong-formula, randomized and matched-cost candidates.
    Stress {
        #[arg(long)]
        n_incorrect: Option<usize>,
        #[arg(long)]
        n_randomized: Option<usize>,
        #[arg(long)]
        n_matched_cost: Option<usize>,
        #[arg(long)]
        perturbation_scale: Option<f64>,
    },
    /// Rescale weight blocks.
    Sensitivity {
        /// Comma-separated multipliers; must include 1.
        #[arg(long, value_delimiter = ',')]
        multipliers: Option<Vec<f64>>,
        #[arg(long)]
        per_term: bool,
    },
    /// Perturb observations and subsample records.
    Robustness {
        #[arg(long, value_delimiter = ',')]
        noise_levels: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        record_fractions: Option<Vec<f64>>,
        #[arg(long)]
        repeats: Option<usize>,
    },
    /// Learned kernel probe over obstruction signatures.
    Kernel {
        /// Reuse a signature table written by `rank`.
        #[arg(long)]
        signatures: Option<PathBuf>,
        #[arg(long)]
        ridge: Option<f64>,
        /// Sets every RBF block bandwidth.
        #[arg(long)]
        bandwidth: Option<f64>,
    },
    /// Run or reuse every stage and write the summary report.
    Report,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Generate { .. } => "generate",
            Command::Rank => "rank",
            Command::Baselines => "baselines",
            Command::Ablate => "ablate",
            Command::Stress { .. } => "stress",
            Command::Sensitivity { .. } => "sensitivity",
            Command::Robustness { .. } => "robustness",
            Command::Kernel { .. } => "kernel",
            Command::Report => "report",
        }
    }
}

/// Layers defaults, the config file and flags into a checked config.
pub fn resolve_config(cli: &Cli) -> Result<(RunConfig, StageOptions)> {
    let g = &cli.global;
    let mut cfg = match &g.config {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    };
    if let Some(p) = &g.weights {
        cfg.load_weights(p)?;
    }
    if let Some(v) = &g.benchmark {
        cfg.benchmark = v.clone();
    }
    if let Some(v) = g.seed {
        cfg.seed = v;
    }
    if let Some(v) = &g.out {
        cfg.out = v.clone();
    }
    if let Some(v) = g.jobs {
        cfg.jobs = v;
    }
    let mut opts = StageOptions::default();
    match &cli.command {
        Command::Generate { variants, noise_sigma } => {
            if let Some(v) = variants {
                cfg.generator.variants = *v;
            }
            if let Some(v) = noise_sigma {
                cfg.generator.noise_sigma = *v;
            }
        }
        Command::Stress {
            n_incorrect,
            n_randomized,
            n_matched_cost,
            perturbation_scale,
        } => {
            let s = &mut cfg.stress;
            s.n_incorrect_formulas = n_incorrect.unwrap_or(s.n_incorrect_formulas);
            s.n_randomized = n_randomized.unwrap_or(s.n_randomized);
            s.n_matched_cost = n_matched_cost.unwrap_or(s.n_matched_cost);
            s.perturbation_scale = perturbation_scale.unwrap_or(s.perturbation_scale);
        }
        Command::Sensitivity { multipliers, per_term } => {
            if let Some(m) = multipliers {
                cfg.sensitivity.multipliers = m.clone();
            }
            cfg.sensitivity.per_term |= per_term;
        }
        Command::Robustness {
            noise_levels,
            record_fractions,
            repeats,
        } => {
            let r = &mut cfg.robustness;
            if let Some(v) = noise_levels {
                r.noise_levels = v.clone();
            }
            if let Some(v) = record_fractions {
                r.record_fractions = v.clone();
            }
            r.repeats = repeats.unwrap_or(r.repeats);
        }
        Command::Kernel {
            signatures,
            ridge,
            bandwidth,
        } => {
            opts.signatures = signatures.clone();
            let k = &mut cfg.kernel;
            k.ridge = ridge.unwrap_or(k.ridge);
            if let Some(b) = bandwidth {
                k.sigma_res = *b;
                k.sigma_glue = *b;
                k.sigma_con = *b;
                k.sigma_lim = *b;
            }
        }
        Command::Rank | Command::Baselines | Command::Ablate | Command::Report => {}
    }
    Ok((cfg.finalize()?, opts))
}

/// Exit code for a failed run: 2 for bad configuration, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::UnknownTerm(_) => 2,
        _ => 1,
    }
}

fn execute(cli: &Cli) -> Result<String> {
    let (cfg, opts) = resolve_config(cli)?;
    let stage = Stage { cfg: &cfg, opts };
    let out = cfg.out.display();
    Ok(match cli.command {
        Command::Generate { .. } => {
            let s = stage.generate()?;
            format!("wrote {} cards to {}", s.body.n_cards, s.body.benchmark)
        }
        Command::Rank => {
            let m = stage.rank()?.body.metrics;
            format!("top1 {:.3} mrr {:.3} type_accuracy {:.3}; artifacts in {out}", m.top1, m.mrr, m.type_accuracy)
        }
        Command::Baselines => {
            stage.baselines()?;
            format!("wrote {out}/baselines.tsv")
        }
        Command::Ablate => {
            stage.ablate()?;
            format!("wrote {out}/ablate.tsv")
        }
        Command::Stress { .. } => {
            let m = stage.stress()?.body.report.metrics;
            format!("stress top1 {:.3} type_accuracy {:.3}; wrote {out}/stress.tsv", m.top1, m.type_accuracy)
        }
        Command::Sensitivity { .. } => {
            stage.sensitivity()?;
            format!("wrote {out}/sensitivity.tsv")
        }
        Command::Robustness { .. } => {
            stage.robustness()?;
            format!("wrote {out}/robustness.tsv")
        }
        Command::Kernel { .. } => {
            let s = stage.kernel()?;
            format!(
                "leave-family-out top1 {:.3} (random {:.3}); wrote {out}/kernel_summary.json",
                s.body.lofo.aggregate.top1, s.body.random_baseline
            )
        }
        Command::Report => {
            let s = stage.report()?;
            let mut text = s.body.checks.iter().map(|c| c.line()).collect::<Vec<_>>().join("\n");
            text += &format!("\nwrote {out}/report.md");
            text
        }
    })
}

/// Parses arguments, runs one subcommand and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(msg) => {
            println!("{msg}");
            0
        }
        Err(e) => {
            eprintln!("error ({}): {e}", cli.command.name());
            exit_code(&e)
        }
    }
}
