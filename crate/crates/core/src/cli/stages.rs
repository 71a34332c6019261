//! One function per subcommand. Each reads its inputs from disk, writes a
//! tidy TSV plus a JSON summary, and returns the summary.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::config::{Meta, RunConfig, SensitivityConfig};
use crate::benchmark::generate_benchmark;
use crate::card::io::{read_benchmark, read_manifest, to_canonical_json, write_benchmark};
use crate::card::{validate_card, TransitionCard};
use crate::checks::{self, Check};
use crate::error::{Error, Result};
use crate::kernel::{
    candidate_rows, kernel_ablation_suite, leave_family_out_eval, random_baseline, variant_suite_eval, AblationRow,
    KernelConfig, LofoReport, VariantSuite,
};
use crate::obstruction::{
    baseline_score, benchmark_metrics, evaluate_with, obstruction_score, score_benchmark, Baseline, CardSignatures,
    Metrics, ObstructionWeights, RankOptions, RankingResult, Term,
};
use crate::stress::{
    robustness_sweep, run_stress, validation_diagnostics, weight_sensitivity, RobustnessGrid, RobustnessReport,
    SensitivityReport, StressConfig, StressReport, ValidationDiagnostics,
};

/// An artifact body with its reproducibility block.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Summary<T> {
    pub meta: Meta,
    #[serde(flatten)]
    pub body: T,
}

fn fmt(v: f64) -> String {
    format!("{v}")
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, to_canonical_json(value)?)?;
    Ok(())
}

fn write_tsv(path: &Path, meta: &Meta, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut buf = format!("{}\n", meta.tsv_header()).into_bytes();
    {
        let mut w = csv::WriterBuilder::new().delimiter(b'\t').from_writer(&mut buf);
        w.write_record(header)?;
        for r in rows {
            w.write_record(r)?;
        }
        w.flush()?;
    }
    fs::write(path, buf)?;
    Ok(())
}

/// Per-subcommand overrides that do not live in the config file.
#[derive(Clone, Debug, Default)]
pub struct StageOptions {
    /// Signature table to reuse instead of refitting.
    pub signatures: Option<PathBuf>,
}

pub struct Stage<'a> {
    pub cfg: &'a RunConfig,
    pub opts: StageOptions,
}

impl Stage<'_> {
    fn out(&self, file: &str) -> PathBuf {
        self.cfg.out.join(file)
    }

    fn benchmark_seed(&self) -> Result<Option<u64>> {
        Ok(read_manifest(&self.cfg.benchmark)?.map(|m| m.master_seed))
    }

    fn meta(&self, command: &str) -> Result<Meta> {
        Ok(Meta::new(command, self.cfg, self.benchmark_seed()?))
    }

    /// Reads and validates every card; all violations are listed together.
    pub fn load_cards(&self) -> Result<Vec<TransitionCard>> {
        let cards = read_benchmark(&self.cfg.benchmark)?;
        let invalid: Vec<_> = cards.iter().map(validate_card).filter(|r| !r.is_valid()).collect();
        match invalid.len() {
            0 => Ok(cards),
            1 => invalid.into_iter().next().expect("one report").into_result().map(|_| cards),
            n => Err(Error::InvalidCard {
                card_id: format!("{n} cards"),
                violations: invalid
                    .iter()
                    .flat_map(|r| r.violations.iter().map(move |v| format!("{}: {}", r.card_id, v.message)))
                    .collect(),
            }),
        }
    }

    fn signatures(&self, cards: &[TransitionCard]) -> Result<Vec<CardSignatures>> {
        score_benchmark(cards, &RankOptions::default(), self.cfg.jobs)
    }

    pub fn generate(&self) -> Result<Summary<GenerateSummary>> {
        let cards = generate_benchmark(&self.cfg.generator);
        write_benchmark(&self.cfg.benchmark, self.cfg.seed, &cards)?;
        let mut families: Vec<String> = cards.iter().map(|c| c.family_id.clone()).collect();
        families.dedup();
        let s = Summary {
            meta: self.meta("generate")?,
            body: GenerateSummary {
                benchmark: self.cfg.benchmark.display().to_string(),
                n_cards: cards.len(),
                families,
            },
        };
        write_json(&self.out("generate_summary.json"), &s)?;
        Ok(s)
    }

    pub fn rank(&self) -> Result<Summary<RankSummary>> {
        let cards = self.load_cards()?;
        let sigs = self.signatures(&cards)?;
        let w = self.cfg.weights;
        let results = evaluate_with(&cards, &sigs, |s| obstruction_score(s, &w))?;
        let meta = self.meta("rank")?;

        let mut rows = Vec::new();
        for r in &results {
            for (i, row) in r.rows.iter().enumerate() {
                let g = &row.signature;
                rows.push(vec![
                    r.card_id.clone(),
                    r.family_id.clone(),
                    r.transition_type.as_str().into(),
                    row.candidate_id.clone(),
                    row.role.map_or("", |x| x.as_str()).into(),
                    row.move_type.as_str().into(),
                    (i + 1).to_string(),
                    fmt(row.obs),
                    fmt(g.r_s),
                    fmt(g.r_o),
                    fmt(g.r_t),
                    fmt(g.r_v),
                    fmt(g.g_glue),
                    fmt(g.c_viol),
                    fmt(g.p_limit),
                    fmt(g.cost),
                    (row.candidate_id == r.selected_id).to_string(),
                ]);
            }
        }
        write_tsv(
            &self.out("rank.tsv"),
            &meta,
            &[
                "card_id", "family_id", "transition_type", "candidate_id", "role", "move_type", "rank", "obs", "r_s",
                "r_o", "r_t", "r_v", "g_glue", "c_viol", "p_limit", "cost", "selected",
            ],
            &rows,
        )?;
        write_json(
            &self.out("signatures.json"),
            &Summary {
                meta: meta.clone(),
                body: SignatureTable { cards: sigs },
            },
        )?;

        let mut per_family = Vec::new();
        for r in &results {
            if !per_family.iter().any(|f: &FamilyMetrics| f.family_id == r.family_id) {
                let fam: Vec<_> = results.iter().filter(|x| x.family_id == r.family_id).cloned().collect();
                per_family.push(FamilyMetrics {
                    family_id: r.family_id.clone(),
                    metrics: benchmark_metrics(&fam),
                });
            }
        }
        let validation = validation_diagnostics(&results, &cards);
        if validation.is_none() {
            eprintln!("warning: no card has validation data; validation diagnostics skipped");
        }
        let s = Summary {
            meta,
            body: RankSummary {
                metrics: benchmark_metrics(&results),
                per_family,
                validation,
                results,
            },
        };
        write_json(&self.out("rank_summary.json"), &s)?;
        Ok(s)
    }

    pub fn baselines(&self) -> Result<Summary<MetricsTable>> {
        let cards = self.load_cards()?;
        let sigs = self.signatures(&cards)?;
        let w = self.cfg.weights;
        let rows = Baseline::ALL
            .iter()
            .map(|&b| {
                let results = evaluate_with(&cards, &sigs, |s| baseline_score(s, b, &w))?;
                Ok(NamedMetrics {
                    name: b.as_str().into(),
                    metrics: benchmark_metrics(&results),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        self.metrics_table("baselines", "baseline", rows)
    }

    pub fn ablate(&self) -> Result<Summary<MetricsTable>> {
        let cards = self.load_cards()?;
        let sigs = self.signatures(&cards)?;
        let w = self.cfg.weights;
        let mut variants: Vec<(String, ObstructionWeights)> = vec![("full".into(), w)];
        for t in Term::ALL {
            let mut x = w;
            *x.get_mut(t) = 0.0;
            variants.push((format!("no_{}", t.as_str()), x));
        }
        let residual_only = ObstructionWeights {
            w_g: 0.0,
            w_c: 0.0,
            w_l: 0.0,
            lambda: 0.0,
            ..w
        };
        variants.push(("residual_only".into(), residual_only));
        variants.push((
            "residual_cost".into(),
            ObstructionWeights {
                lambda: w.lambda,
                ..residual_only
            },
        ));
        let rows = variants
            .iter()
            .map(|(name, x)| {
                let results = evaluate_with(&cards, &sigs, |s| obstruction_score(s, x))?;
                Ok(NamedMetrics {
                    name: name.clone(),
                    metrics: benchmark_metrics(&results),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        self.metrics_table("ablate", "ablation", rows)
    }

    fn metrics_table(&self, command: &str, label: &str, rows: Vec<NamedMetrics>) -> Result<Summary<MetricsTable>> {
        let meta = self.meta(command)?;
        let tsv: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                vec![
                    r.name.clone(),
                    fmt(r.metrics.top1),
                    fmt(r.metrics.mrr),
                    fmt(r.metrics.type_accuracy),
                    r.metrics.n_cards.to_string(),
                ]
            })
            .collect();
        write_tsv(
            &self.out(&format!("{command}.tsv")),
            &meta,
            &[label, "top1", "mrr", "type_accuracy", "n_cards"],
            &tsv,
        )?;
        let s = Summary {
            meta,
            body: MetricsTable { rows },
        };
        write_json(&self.out(&format!("{command}_summary.json")), &s)?;
        Ok(s)
    }

    pub fn stress(&self) -> Result<Summary<StressSummary>> {
        let cards = self.load_cards()?;
        let run = run_stress(&cards, &self.cfg.stress, &self.cfg.weights, &RankOptions::default(), self.cfg.jobs)?;
        let meta = self.meta("stress")?;
        let rows: Vec<Vec<String>> = run
            .report
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.card_id.clone(),
                    r.family_id.clone(),
                    r.transition_type.as_str().into(),
                    r.intended_id.clone(),
                    r.selected_id.clone(),
                    r.top1.to_string(),
                    fmt(r.margin),
                    r.best_incorrect_id.clone(),
                    r.best_incorrect_kind.map_or("original", |k| k.as_str()).into(),
                    r.matched_cost_beats_intended.to_string(),
                ]
            })
            .collect();
        write_tsv(
            &self.out("stress.tsv"),
            &meta,
            &[
                "card_id", "family_id", "transition_type", "intended_id", "selected_id", "top1", "margin",
                "best_incorrect_id", "best_incorrect_kind", "matched_cost_beats_intended",
            ],
            &rows,
        )?;
        let s = Summary {
            meta,
            body: StressSummary {
                config: self.cfg.stress.clone(),
                report: run.report,
            },
        };
        write_json(&self.out("stress_summary.json"), &s)?;
        Ok(s)
    }

    pub fn sensitivity(&self) -> Result<Summary<SensitivitySummary>> {
        let cards = self.load_cards()?;
        let sigs = self.signatures(&cards)?;
        let sc = &self.cfg.sensitivity;
        let report = weight_sensitivity(&cards, &sigs, &self.cfg.weights, &sc.multipliers, sc.per_term)?;
        let meta = self.meta("sensitivity")?;
        let rows: Vec<Vec<String>> = report
            .points
            .iter()
            .map(|p| {
                vec![
                    p.block.clone(),
                    fmt(p.multiplier),
                    fmt(p.metrics.top1),
                    fmt(p.metrics.mrr),
                    fmt(p.metrics.type_accuracy),
                    p.selection_changes.to_string(),
                    p.extension_flips.to_string(),
                ]
            })
            .collect();
        write_tsv(
            &self.out("sensitivity.tsv"),
            &meta,
            &["block", "multiplier", "top1", "mrr", "type_accuracy", "selection_changes", "extension_flips"],
            &rows,
        )?;
        let s = Summary {
            meta,
            body: SensitivitySummary {
                config: sc.clone(),
                report,
            },
        };
        write_json(&self.out("sensitivity_summary.json"), &s)?;
        Ok(s)
    }

    pub fn robustness(&self) -> Result<Summary<RobustnessSummary>> {
        let cards = self.load_cards()?;
        let opts = RankOptions::default();
        let sigs = self.signatures(&cards)?;
        let w = self.cfg.weights;
        let unperturbed = benchmark_metrics(&evaluate_with(&cards, &sigs, |s| obstruction_score(s, &w))?);
        let report = robustness_sweep(&cards, &self.cfg.robustness, &w, &opts, self.cfg.jobs)?;
        let meta = self.meta("robustness")?;
        let rows: Vec<Vec<String>> = report
            .cells
            .iter()
            .map(|c| {
                vec![
                    fmt(c.noise),
                    fmt(c.fraction),
                    c.repeat.to_string(),
                    fmt(c.metrics.top1),
                    fmt(c.metrics.mrr),
                    fmt(c.metrics.type_accuracy),
                    c.flagged_cards.len().to_string(),
                ]
            })
            .collect();
        write_tsv(
            &self.out("robustness.tsv"),
            &meta,
            &["noise", "record_fraction", "repeat", "top1", "mrr", "type_accuracy", "flagged_cards"],
            &rows,
        )?;
        let s = Summary {
            meta,
            body: RobustnessSummary {
                grid: self.cfg.robustness.clone(),
                unperturbed,
                report,
            },
        };
        write_json(&self.out("robustness_summary.json"), &s)?;
        Ok(s)
    }

    pub fn kernel(&self) -> Result<Summary<KernelSummary>> {
        let cards = self.load_cards()?;
        let sigs = match &self.opts.signatures {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| Error::Config(format!("cannot read signatures {}: {e}", path.display())))?;
                serde_json::from_str::<Summary<SignatureTable>>(&text)
                    .map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?
                    .body
                    .cards
            }
            None => self.signatures(&cards)?,
        };
        let rows = candidate_rows(&cards, &sigs)?;
        let kc = &self.cfg.kernel;
        let lofo = leave_family_out_eval(&rows, kc)?;
        let ablation = kernel_ablation_suite(&rows, kc)?;
        let suite = variant_suite_eval(&rows, kc)?;
        for w in &suite.warnings {
            eprintln!("warning: {w}");
        }
        let meta = self.meta("kernel")?;
        let metric_cols = |m: &crate::kernel::KernelMetrics| {
            vec![
                fmt(m.top1),
                fmt(m.mrr),
                fmt(m.type_accuracy),
                fmt(m.retrieval),
                fmt(m.preference),
                m.n_cards.to_string(),
            ]
        };
        let tail = ["top1", "mrr", "type_accuracy", "retrieval", "preference", "n_cards"];
        let mut fold_rows: Vec<Vec<String>> = lofo
            .folds
            .iter()
            .map(|f| [vec![f.held_out.clone()], metric_cols(&f.metrics)].concat())
            .collect();
        fold_rows.push([vec!["aggregate".into()], metric_cols(&lofo.aggregate)].concat());
        write_tsv(&self.out("kernel_folds.tsv"), &meta, &[&["held_out_family"][..], &tail].concat(), &fold_rows)?;
        let abl_rows: Vec<Vec<String>> = ablation
            .iter()
            .map(|a| [vec![a.ablation.clone()], metric_cols(&a.metrics)].concat())
            .collect();
        write_tsv(&self.out("kernel_ablation.tsv"), &meta, &[&["ablation"][..], &tail].concat(), &abl_rows)?;
        let suite_rows: Vec<Vec<String>> = suite
            .rows
            .iter()
            .map(|r| [vec![r.protocol.as_str().into(), r.task.as_str().into()], metric_cols(&r.metrics)].concat())
            .collect();
        write_tsv(&self.out("kernel_suite.tsv"), &meta, &[&["protocol", "task"][..], &tail].concat(), &suite_rows)?;
        let s = Summary {
            meta,
            body: KernelSummary {
                config: *kc,
                random_baseline: random_baseline(&rows),
                lofo,
                ablation,
                suite,
            },
        };
        write_json(&self.out("kernel_summary.json"), &s)?;
        Ok(s)
    }

    /// Loads a stage summary produced under the current config, rerunning
    /// the stage when it is missing or stale.
    fn ensure<T, F>(&self, file: &str, run: F) -> Result<Summary<T>>
    where
        T: DeserializeOwned,
        F: FnOnce() -> Result<Summary<T>>,
    {
        let path = self.out(file);
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(s) = serde_json::from_str::<Summary<T>>(&text) {
                if s.meta.config_hash == self.cfg.hash() && s.meta.benchmark_seed == self.benchmark_seed()? {
                    return Ok(s);
                }
            }
        }
        run()
    }

    pub fn report(&self) -> Result<Summary<ReportSummary>> {
        let rank = self.ensure("rank_summary.json", || self.rank())?;
        let baselines = self.ensure("baselines_summary.json", || self.baselines())?;
        let ablate = self.ensure("ablate_summary.json", || self.ablate())?;
        let stress = self.ensure("stress_summary.json", || self.stress())?;
        let sensitivity = self.ensure("sensitivity_summary.json", || self.sensitivity())?;
        let robustness = self.ensure("robustness_summary.json", || self.robustness())?;
        let kernel = self.ensure("kernel_summary.json", || self.kernel())?;

        let baseline_rows: Vec<(Baseline, Metrics)> = baselines
            .body
            .rows
            .iter()
            .filter_map(|r| Baseline::ALL.into_iter().find(|b| b.as_str() == r.name).map(|b| (b, r.metrics)))
            .collect();
        let k = &kernel.body;
        let checks = vec![
            checks::default_ranking(&rank.body.metrics, None),
            checks::family_ordering(&rank.body.results),
            checks::deformation_selection(&rank.body.results),
            checks::baseline_separation(&baseline_rows),
            checks::stress(&stress.body.report),
            checks::sensitivity(&sensitivity.body.report),
            checks::robustness(&robustness.body.report, &robustness.body.unperturbed),
            checks::validation_ordering(rank.body.validation.as_ref()),
            checks::kernel_probe(&k.lofo.aggregate, k.random_baseline, &k.suite, &k.ablation),
            Check::skipped(10, "property suites", "exercised by the test suite, not by the CLI"),
            checks::obstruction_arithmetic(),
        ];

        let meta = self.meta("report")?;
        let md = render_markdown(&meta, &checks, &rank.body, &baselines.body, &ablate.body, &stress.body, &sensitivity.body, &robustness.body, k);
        fs::create_dir_all(&self.cfg.out)?;
        fs::write(self.out("report.md"), md)?;
        let s = Summary {
            meta,
            body: ReportSummary {
                checks,
                artifacts: ARTIFACTS.iter().map(|s| s.to_string()).collect(),
            },
        };
        write_json(&self.out("report.json"), &s)?;
        Ok(s)
    }
}

const ARTIFACTS: [&str; 20] = [
    "rank.tsv",
    "rank_summary.json",
    "signatures.json",
    "baselines.tsv",
    "baselines_summary.json",
    "ablate.tsv",
    "ablate_summary.json",
    "stress.tsv",
    "stress_summary.json",
    "sensitivity.tsv",
    "sensitivity_summary.json",
    "robustness.tsv",
    "robustness_summary.json",
    "kernel_folds.tsv",
    "kernel_ablation.tsv",
    "kernel_suite.tsv",
    "kernel_summary.json",
    "report.md",
    "report.json",
    "generate_summary.json",
];

#[allow(clippy::too_many_arguments)]
fn render_markdown(
    meta: &Meta,
    checks: &[Check],
    rank: &RankSummary,
    baselines: &MetricsTable,
    ablate: &MetricsTable,
    stress: &StressSummary,
    sensitivity: &SensitivitySummary,
    robustness: &RobustnessSummary,
    kernel: &KernelSummary,
) -> String {
    let mut s = String::from("# Theory-shift run report\n\n");
    s += &format!(
        "seed {} | config hash `{}` | schema version {}{}\n\n",
        meta.seed,
        meta.config_hash,
        meta.schema_version,
        meta.benchmark_seed.map_or(String::new(), |b| format!(" | benchmark seed {b}"))
    );
    s += "## Checks\n\n| # | Check | Status | Detail |\n|---|---|---|---|\n";
    for c in checks {
        s += &format!("| {} | {} | {} | {} |\n", c.id, c.name, c.status(), c.detail.replace('|', "/"));
    }
    let metric_table = |title: &str, label: &str, rows: &[(String, Metrics)]| {
        let mut t = format!("\n## {title}\n\n| {label} | Top-1 | MRR | Type accuracy |\n|---|---|---|---|\n");
        for (n, m) in rows {
            t += &format!("| {n} | {:.3} | {:.3} | {:.3} |\n", m.top1, m.mrr, m.type_accuracy);
        }
        t
    };
    let mut ranking = vec![("all".to_string(), rank.metrics)];
    ranking.extend(rank.per_family.iter().map(|f| (f.family_id.clone(), f.metrics)));
    s += &metric_table("Obstruction ranking", "Families", &ranking);
    let named = |t: &MetricsTable| t.rows.iter().map(|r| (r.name.clone(), r.metrics)).collect::<Vec<_>>();
    s += &metric_table("Baselines", "Baseline", &named(baselines));
    s += &metric_table("Direct ablations", "Ablation", &named(ablate));

    if let Some(v) = &rank.validation {
        s += &format!(
            "\n## Validation residuals\n\n| Intended | Selected | Best incorrect | Base |\n|---|---|---|---|\n| {:.3} | {:.3} | {:.3} | {:.3} |\n",
            v.intended, v.selected, v.best_incorrect, v.base
        );
    }

    let st = &stress.report;
    s += &format!(
        "\n## Stress expansion\n\nTop-1 {:.3}, MRR {:.3}, type accuracy {:.3}.\n\n| Card | Margin | Best incorrect |\n|---|---|---|\n",
        st.metrics.top1, st.metrics.mrr, st.metrics.type_accuracy
    );
    for r in &st.rows {
        s += &format!("| {} | {:.3} | {} |\n", r.card_id, r.margin, r.best_incorrect_id);
    }

    s += "\n## Weight sensitivity\n\n| Block | Multiplier | Top-1 | Changes |\n|---|---|---|---|\n";
    for p in &sensitivity.report.points {
        s += &format!("| {} | {} | {:.3} | {} |\n", p.block, p.multiplier, p.metrics.top1, p.selection_changes);
    }

    s += "\n## Robustness\n\n| Noise | Mean top-1 |\n|---|---|\n";
    for c in &robustness.report.noise_curve {
        s += &format!("| {} | {:.3} |\n", c.noise, c.metrics.top1);
    }
    s += "\n| Record fraction | Mean top-1 |\n|---|---|\n";
    for c in &robustness.report.fraction_curve {
        s += &format!("| {} | {:.3} |\n", c.fraction, c.metrics.top1);
    }

    s += &format!(
        "\n## Kernel probe\n\nRandom baseline {:.3}.\n\n| Ablation | Top-1 | MRR | Type |\n|---|---|---|---|\n",
        kernel.random_baseline
    );
    for a in &kernel.ablation {
        s += &format!("| {} | {:.3} | {:.3} | {:.3} |\n", a.ablation, a.metrics.top1, a.metrics.mrr, a.metrics.type_accuracy);
    }
    s += "\n| Protocol | Task | Top-1 | MRR | Type | Retrieval | Preference |\n|---|---|---|---|---|---|---|\n";
    for r in &kernel.suite.rows {
        let m = &r.metrics;
        s += &format!(
            "| {} | {} | {:.3} | {:.3} | {:.3} | {:.3} | {:.3} |\n",
            r.protocol.as_str(),
            r.task.as_str(),
            m.top1,
            m.mrr,
            m.type_accuracy,
            m.retrieval,
            m.preference
        );
    }
    s
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GenerateSummary {
    pub benchmark: String,
    pub n_cards: usize,
    pub families: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SignatureTable {
    pub cards: Vec<CardSignatures>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyMetrics {
    pub family_id: String,
    pub metrics: Metrics,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RankSummary {
    pub metrics: Metrics,
    pub per_family: Vec<FamilyMetrics>,
    pub validation: Option<ValidationDiagnostics>,
    pub results: Vec<RankingResult>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NamedMetrics {
    pub name: String,
    pub metrics: Metrics,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MetricsTable {
    pub rows: Vec<NamedMetrics>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StressSummary {
    pub config: StressConfig,
    pub report: StressReport,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SensitivitySummary {
    pub config: SensitivityConfig,
    pub report: SensitivityReport,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RobustnessSummary {
    pub grid: RobustnessGrid,
    pub unperturbed: Metrics,
    pub report: RobustnessReport,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KernelSummary {
    pub config: KernelConfig,
    pub random_baseline: f64,
    pub lofo: LofoReport,
    pub ablation: Vec<AblationRow>,
    pub suite: VariantSuite,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportSummary {
    pub checks: Vec<Check>,
    pub artifacts: Vec<String>,
}
