//! Constellation-kernel probe: an additive block kernel over candidate
//! signatures, a kernel ridge scorer trained on relevance labels, and the
//! held-out evaluation protocols built on them.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::card::{MoveType, TransitionCard};
use crate::error::{Error, Result};
use crate::obstruction::CardSignatures;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KernelConfig {
    pub alpha_res: f64,
    pub alpha_glue: f64,
    pub alpha_con: f64,
    pub alpha_lim: f64,
    pub alpha_graph: f64,
    pub sigma_res: f64,
    pub sigma_glue: f64,
    pub sigma_con: f64,
    pub sigma_lim: f64,
    pub epsilon: f64,
    pub ridge: f64,
}

impl Default for KernelConfig {
    fn default() -> Self {
        Self {
            alpha_res: 1.0,
            alpha_glue: 1.0,
            alpha_con: 1.0,
            alpha_lim: 1.0,
            alpha_graph: 1.0,
            sigma_res: 1.0,
            sigma_glue: 1.0,
            sigma_con: 1.0,
            sigma_lim: 1.0,
            epsilon: 1e-9,
            ridge: 1e-3,
        }
    }
}

impl KernelConfig {
    pub fn validate(&self) -> Result<()> {
        let alphas = [self.alpha_res, self.alpha_glue, self.alpha_con, self.alpha_lim, self.alpha_graph];
        if alphas.iter().any(|a| !(a.is_finite() && *a >= 0.0)) {
            return Err(Error::Config("kernel alphas must be nonnegative".into()));
        }
        let positive = [
            ("sigma_res", self.sigma_res),
            ("sigma_glue", self.sigma_glue),
            ("sigma_con", self.sigma_con),
            ("sigma_lim", self.sigma_lim),
            ("epsilon", self.epsilon),
            ("ridge", self.ridge),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("kernel {name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    /// Copy with one block switched off.
    pub fn without(&self, block: KernelBlock) -> Self {
        let mut c = *self;
        match block {
            KernelBlock::Residual => c.alpha_res = 0.0,
            KernelBlock::Gluing => c.alpha_glue = 0.0,
            KernelBlock::Constraints => c.alpha_con = 0.0,
            KernelBlock::Limits => c.alpha_lim = 0.0,
            KernelBlock::Graph => c.alpha_graph = 0.0,
        }
        c
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelBlock {
    Residual,
    Gluing,
    Constraints,
    Limits,
    Graph,
}

impl KernelBlock {
    pub fn as_str(self) -> &'static str {
        match self {
            KernelBlock::Residual => "residual",
            KernelBlock::Gluing => "gluing",
            KernelBlock::Constraints => "constraints",
            KernelBlock::Limits => "limits",
            KernelBlock::Graph => "graph",
        }
    }
}

/// One candidate's raw signature with its labels. Cost is carried for
/// reporting and never enters the kernel.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateRow {
    pub card_id: String,
    pub candidate_id: String,
    pub family_id: String,
    pub variant: usize,
    /// `[R_s, R_o, R_t, R_v]`.
    pub residuals: [f64; 4],
    pub glue: f64,
    pub con: f64,
    pub lim: f64,
    pub cost: f64,
    pub psi: Vec<f64>,
    pub relevant: bool,
    pub move_type: MoveType,
    pub required_move: MoveType,
}

impl CandidateRow {
    fn numeric(&self) -> [f64; 7] {
        let r = self.residuals;
        [r[0], r[1], r[2], r[3], self.glue, self.con, self.lim]
    }
}

/// Joins signatures with their cards' labels, one row per candidate.
pub fn candidate_rows(cards: &[TransitionCard], sigs: &[CardSignatures]) -> Result<Vec<CandidateRow>> {
    let mut rows = Vec::new();
    for s in sigs {
        let card = cards
            .iter()
            .find(|c| c.card_id == s.card_id)
            .ok_or_else(|| Error::Input(format!("no labels for card `{}`", s.card_id)))?;
        for c in &s.candidates {
            let g = &c.signature;
            rows.push(CandidateRow {
                card_id: card.card_id.clone(),
                candidate_id: c.candidate_id.clone(),
                family_id: card.family_id.clone(),
                variant: card.variant,
                residuals: [g.r_s, g.r_o, g.r_t, g.r_v],
                glue: g.g_glue,
                con: g.c_viol,
                lim: g.p_limit,
                cost: g.cost,
                psi: g.psi.clone(),
                relevant: c.candidate_id == card.evaluation.intended_candidate_id,
                move_type: c.move_type,
                required_move: card.evaluation.transition_type.required_move(),
            });
        }
    }
    Ok(rows)
}

/// Standardized block vector `[z_res, z_glue, z_con, z_lim, ψ]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Features {
    pub z_res: [f64; 4],
    pub z_glue: f64,
    pub z_con: f64,
    pub z_lim: f64,
    pub psi: Vec<f64>,
}

/// Per-feature mean and population standard deviation of training rows.
/// Constant features get unit spread.
#[derive(Clone, Debug, PartialEq)]
pub struct Standardizer {
    pub mean: [f64; 7],
    pub std: [f64; 7],
}

impl Standardizer {
    pub fn fit<'a, I>(rows: I) -> Self
    where
        I: IntoIterator<Item = &'a CandidateRow>,
    {
        let values: Vec<[f64; 7]> = rows.into_iter().map(|r| r.numeric()).collect();
        let n = values.len().max(1) as f64;
        let mut mean = [0.0; 7];
        let mut std = [1.0; 7];
        for k in 0..7 {
            mean[k] = values.iter().map(|v| v[k]).sum::<f64>() / n;
            let var = values.iter().map(|v| (v[k] - mean[k]).powi(2)).sum::<f64>() / n;
            if var.sqrt() > 1e-12 {
                std[k] = var.sqrt();
            }
        }
        Self { mean, std }
    }

    pub fn apply(&self, row: &CandidateRow) -> Features {
        let v = row.numeric();
        let z = |k: usize| (v[k] - self.mean[k]) / self.std[k];
        Features {
            z_res: [z(0), z(1), z(2), z(3)],
            z_glue: z(4),
            z_con: z(5),
            z_lim: z(6),
            psi: row.psi.clone(),
        }
    }
}

fn rbf(sq_dist: f64, sigma: f64) -> f64 {
    (-sq_dist / (2.0 * sigma * sigma)).exp()
}

/// Additive block kernel: an RBF per numeric block plus a normalized linear
/// kernel on graph features.
pub fn kernel(a: &Features, b: &Features, cfg: &KernelConfig) -> f64 {
    let res: f64 = a.z_res.iter().zip(&b.z_res).map(|(x, y)| (x - y).powi(2)).sum();
    let dot: f64 = a.psi.iter().zip(&b.psi).map(|(x, y)| x * y).sum();
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    cfg.alpha_res * rbf(res, cfg.sigma_res)
        + cfg.alpha_glue * rbf((a.z_glue - b.z_glue).powi(2), cfg.sigma_glue)
        + cfg.alpha_con * rbf((a.z_con - b.z_con).powi(2), cfg.sigma_con)
        + cfg.alpha_lim * rbf((a.z_lim - b.z_lim).powi(2), cfg.sigma_lim)
        + cfg.alpha_graph * dot / (norm(&a.psi) * norm(&b.psi) + cfg.epsilon)
}

pub fn gram(xs: &[Features], cfg: &KernelConfig) -> DMatrix<f64> {
    let n = xs.len();
    let mut k = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = kernel(&xs[i], &xs[j], cfg);
            k[(i, j)] = v;
            k[(j, i)] = v;
        }
    }
    k
}

/// Solves `(K + ridge·I) c = y` by Cholesky.
fn ridge_solve(mut k: DMatrix<f64>, y: Vec<f64>, ridge: f64) -> Result<Vec<f64>> {
    let n = k.nrows();
    for i in 0..n {
        k[(i, i)] += ridge;
    }
    let chol = k
        .cholesky()
        .ok_or_else(|| Error::Config("kernel system is singular; increase the ridge".into()))?;
    Ok(chol.solve(&DVector::from_vec(y)).iter().copied().collect())
}

/// Kernel ridge regressor on relevance labels.
#[derive(Clone, Debug)]
pub struct ScoringModel {
    pub cfg: KernelConfig,
    pub standardizer: Standardizer,
    pub train: Vec<Features>,
    pub coefficients: Vec<f64>,
}

impl ScoringModel {
    pub fn score(&self, row: &CandidateRow) -> f64 {
        let x = self.standardizer.apply(row);
        self.train
            .iter()
            .zip(&self.coefficients)
            .map(|(t, c)| c * kernel(t, &x, &self.cfg))
            .sum()
    }
}

/// Standardizes on `train` alone and fits `(K + ridge·I)⁻¹·labels`.
pub fn fit_scoring_model(train: &[&CandidateRow], cfg: &KernelConfig) -> Result<ScoringModel> {
    cfg.validate()?;
    if train.is_empty() {
        return Err(Error::Input("kernel scorer needs at least one training row".into()));
    }
    let standardizer = Standardizer::fit(train.iter().copied());
    let xs: Vec<Features> = train.iter().map(|r| standardizer.apply(r)).collect();
    let labels = train.iter().map(|r| f64::from(u8::from(r.relevant))).collect();
    let coefficients = ridge_solve(gram(&xs, cfg), labels, cfg.ridge)?;
    Ok(ScoringModel {
        cfg: *cfg,
        standardizer,
        train: xs,
        coefficients,
    })
}

/// Preference model over (intended, other) pairs within training cards. The
/// pair kernel is k(a,c) − k(a,d) − k(b,c) + k(b,d); the induced utility of a
/// single candidate ranks it.
#[derive(Clone, Debug)]
pub struct PairwiseModel {
    pub cfg: KernelConfig,
    pub standardizer: Standardizer,
    pub pairs: Vec<(Features, Features)>,
    pub coefficients: Vec<f64>,
}

impl PairwiseModel {
    pub fn utility(&self, row: &CandidateRow) -> f64 {
        let x = self.standardizer.apply(row);
        self.pairs
            .iter()
            .zip(&self.coefficients)
            .map(|((a, b), c)| c * (kernel(a, &x, &self.cfg) - kernel(b, &x, &self.cfg)))
            .sum()
    }
}

pub fn fit_pairwise_model(train: &[&CandidateRow], cfg: &KernelConfig) -> Result<PairwiseModel> {
    cfg.validate()?;
    let standardizer = Standardizer::fit(train.iter().copied());
    let mut pairs = Vec::new();
    for card in group_by_card(train).values() {
        for good in card.iter().filter(|r| r.relevant) {
            for bad in card.iter().filter(|r| !r.relevant) {
                pairs.push((standardizer.apply(good), standardizer.apply(bad)));
            }
        }
    }
    if pairs.is_empty() {
        return Err(Error::Input("pairwise scorer needs a card with an intended and an alternative".into()));
    }
    let n = pairs.len();
    let mut k = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let (a, b) = &pairs[i];
            let (c, d) = &pairs[j];
            let v = kernel(a, c, cfg) - kernel(a, d, cfg) - kernel(b, c, cfg) + kernel(b, d, cfg);
            k[(i, j)] = v;
            k[(j, i)] = v;
        }
    }
    let coefficients = ridge_solve(k, vec![1.0; n], cfg.ridge)?;
    Ok(PairwiseModel {
        cfg: *cfg,
        standardizer,
        pairs,
        coefficients,
    })
}

fn group_by_card<'a>(rows: &[&'a CandidateRow]) -> BTreeMap<&'a str, Vec<&'a CandidateRow>> {
    let mut m: BTreeMap<&str, Vec<&CandidateRow>> = BTreeMap::new();
    for r in rows {
        m.entry(r.card_id.as_str()).or_default().push(r);
    }
    m
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct KernelMetrics {
    pub n_cards: usize,
    pub top1: f64,
    pub mrr: f64,
    pub type_accuracy: f64,
    /// Fraction of cards whose top-scored row is the intended one.
    pub retrieval: f64,
    /// Fraction of (intended, other) pairs where the intended scores higher.
    pub preference: f64,
}

#[derive(Default)]
struct Tally {
    cards: usize,
    top1: usize,
    rr: f64,
    typed: usize,
    pairs: usize,
    preferred: usize,
}

impl Tally {
    /// Ranks one card's rows by descending score, ties by candidate id.
    fn add(&mut self, rows: &[&CandidateRow], scores: &[f64]) {
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_by(|&a, &b| {
            scores[b]
                .total_cmp(&scores[a])
                .then_with(|| rows[a].candidate_id.cmp(&rows[b].candidate_id))
        });
        let Some(pos) = order.iter().position(|&i| rows[i].relevant) else {
            return;
        };
        let top = rows[order[0]];
        self.cards += 1;
        self.top1 += usize::from(pos == 0);
        self.rr += 1.0 / (pos + 1) as f64;
        self.typed += usize::from(top.move_type == top.required_move);
        let good = order[pos];
        for (i, r) in rows.iter().enumerate() {
            if !r.relevant {
                self.pairs += 1;
                self.preferred += usize::from(scores[good] > scores[i]);
            }
        }
    }

    fn merge(&mut self, o: &Tally) {
        self.cards += o.cards;
        self.top1 += o.top1;
        self.rr += o.rr;
        self.typed += o.typed;
        self.pairs += o.pairs;
        self.preferred += o.preferred;
    }

    fn metrics(&self) -> KernelMetrics {
        if self.cards == 0 {
            return KernelMetrics::default();
        }
        let n = self.cards as f64;
        KernelMetrics {
            n_cards: self.cards,
            top1: self.top1 as f64 / n,
            mrr: self.rr / n,
            type_accuracy: self.typed as f64 / n,
            retrieval: self.top1 as f64 / n,
            preference: if self.pairs == 0 { 1.0 } else { self.preferred as f64 / self.pairs as f64 },
        }
    }
}

/// Which scorer a protocol trains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    KernelRanking,
    PairwiseRanking,
}

impl Task {
    pub fn as_str(self) -> &'static str {
        match self {
            Task::KernelRanking => "kernel_ranking",
            Task::PairwiseRanking => "pairwise_ranking",
        }
    }
}

/// Trains on `train`, scores `test` and tallies per card.
fn run_fold(train: &[&CandidateRow], test: &[&CandidateRow], cfg: &KernelConfig, task: Task) -> Result<Tally> {
    let score: Box<dyn Fn(&CandidateRow) -> f64> = match task {
        Task::KernelRanking => {
            let m = fit_scoring_model(train, cfg)?;
            Box::new(move |r| m.score(r))
        }
        Task::PairwiseRanking => {
            let m = fit_pairwise_model(train, cfg)?;
            Box::new(move |r| m.utility(r))
        }
    };
    let mut t = Tally::default();
    for rows in group_by_card(test).values() {
        let scores: Vec<f64> = rows.iter().map(|r| score(r)).collect();
        t.add(rows, &scores);
    }
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FoldMetrics {
    pub held_out: String,
    pub metrics: KernelMetrics,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LofoReport {
    pub folds: Vec<FoldMetrics>,
    pub aggregate: KernelMetrics,
}

fn families(rows: &[CandidateRow]) -> Vec<&str> {
    let mut f: Vec<&str> = rows.iter().map(|r| r.family_id.as_str()).collect();
    f.sort_unstable();
    f.dedup();
    f
}

fn held_out_eval<K, F>(rows: &[CandidateRow], cfg: &KernelConfig, task: Task, keys: &[K], is_test: F) -> Result<LofoReport>
where
    K: ToString,
    F: Fn(&K, &CandidateRow) -> bool,
{
    let mut folds = Vec::new();
    let mut total = Tally::default();
    for key in keys {
        let (test, train): (Vec<&CandidateRow>, Vec<&CandidateRow>) = rows.iter().partition(|r| is_test(key, r));
        if test.is_empty() || train.is_empty() {
            continue;
        }
        let t = run_fold(&train, &test, cfg, task)?;
        total.merge(&t);
        folds.push(FoldMetrics {
            held_out: key.to_string(),
            metrics: t.metrics(),
        });
    }
    Ok(LofoReport {
        folds,
        aggregate: total.metrics(),
    })
}

/// Holds out each family in turn; standardization and fitting see only the
/// remaining families.
pub fn leave_family_out_eval(rows: &[CandidateRow], cfg: &KernelConfig) -> Result<LofoReport> {
    leave_family_out_task(rows, cfg, Task::KernelRanking)
}

fn leave_family_out_task(rows: &[CandidateRow], cfg: &KernelConfig, task: Task) -> Result<LofoReport> {
    let fams = families(rows);
    if fams.len() < 2 {
        return Err(Error::Input("leave-family-out needs at least two families".into()));
    }
    held_out_eval(rows, cfg, task, &fams, |f, r| r.family_id == *f)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AblationRow {
    pub ablation: String,
    pub metrics: KernelMetrics,
}

/// Leave-family-out metrics for the full kernel and with each of the
/// gluing, constraint, limit and graph blocks zeroed in turn.
pub fn kernel_ablation_suite(rows: &[CandidateRow], cfg: &KernelConfig) -> Result<Vec<AblationRow>> {
    let mut out = vec![AblationRow {
        ablation: "full".into(),
        metrics: leave_family_out_eval(rows, cfg)?.aggregate,
    }];
    for block in [KernelBlock::Gluing, KernelBlock::Constraints, KernelBlock::Limits, KernelBlock::Graph] {
        out.push(AblationRow {
            ablation: format!("no_{}", block.as_str()),
            metrics: leave_family_out_eval(rows, &cfg.without(block))?.aggregate,
        });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Protocol {
    LeaveFamilyOut,
    LeaveVariantOutMixed,
    WithinFamilyHeldout,
}

impl Protocol {
    pub const ALL: [Protocol; 3] = [
        Protocol::LeaveFamilyOut,
        Protocol::LeaveVariantOutMixed,
        Protocol::WithinFamilyHeldout,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Protocol::LeaveFamilyOut => "leave_family_out",
            Protocol::LeaveVariantOutMixed => "leave_variant_out_mixed",
            Protocol::WithinFamilyHeldout => "within_family_heldout",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteRow {
    pub protocol: Protocol,
    pub task: Task,
    pub metrics: KernelMetrics,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VariantSuite {
    pub rows: Vec<SuiteRow>,
    pub warnings: Vec<String>,
}

impl VariantSuite {
    pub fn get(&self, protocol: Protocol, task: Task) -> Option<&KernelMetrics> {
        self.rows
            .iter()
            .find(|r| r.protocol == protocol && r.task == task)
            .map(|r| &r.metrics)
    }
}

fn variants_of(rows: &[CandidateRow], family: Option<&str>) -> Vec<usize> {
    let mut v: Vec<usize> = rows
        .iter()
        .filter(|r| family.is_none_or(|f| r.family_id == f))
        .map(|r| r.variant)
        .collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Leave-family-out, mixed leave-variant-out and within-family held-out
/// variants, each for the pointwise and the pairwise scorer.
pub fn variant_suite_eval(rows: &[CandidateRow], cfg: &KernelConfig) -> Result<VariantSuite> {
    let mut warnings = Vec::new();
    let mut out = Vec::new();
    let fams = families(rows);
    for task in [Task::KernelRanking, Task::PairwiseRanking] {
        // leave-family-out
        if fams.len() >= 2 {
            out.push(SuiteRow {
                protocol: Protocol::LeaveFamilyOut,
                task,
                metrics: leave_family_out_task(rows, cfg, task)?.aggregate,
            });
        } else if task == Task::KernelRanking {
            warnings.push("leave_family_out skipped: fewer than two families".into());
        }

        // mixed leave-variant-out
        let variants = variants_of(rows, None);
        if variants.len() >= 2 {
            let r = held_out_eval(rows, cfg, task, &variants, |v, r| r.variant == *v)?;
            out.push(SuiteRow {
                protocol: Protocol::LeaveVariantOutMixed,
                task,
                metrics: r.aggregate,
            });
        } else if task == Task::KernelRanking {
            warnings.push("leave_variant_out_mixed skipped: fewer than two variants".into());
        }

        // within-family held-out variants
        let mut total = Tally::default();
        for fam in &fams {
            let fam_rows: Vec<CandidateRow> = rows.iter().filter(|r| r.family_id == *fam).cloned().collect();
            let vs = variants_of(&fam_rows, None);
            if vs.len() < 2 {
                if task == Task::KernelRanking {
                    warnings.push(format!("within_family_heldout skipped family `{fam}`: single variant"));
                }
                continue;
            }
            for v in &vs {
                let (test, train): (Vec<&CandidateRow>, Vec<&CandidateRow>) =
                    fam_rows.iter().partition(|r| r.variant == *v);
                total.merge(&run_fold(&train, &test, cfg, task)?);
            }
        }
        if total.cards > 0 {
            out.push(SuiteRow {
                protocol: Protocol::WithinFamilyHeldout,
                task,
                metrics: total.metrics(),
            });
        }
    }
    out.sort_by_key(|r| (Protocol::ALL.iter().position(|p| *p == r.protocol), r.task != Task::KernelRanking));
    Ok(VariantSuite { rows: out, warnings })
}

/// Expected top-1 of a uniformly random pick: mean of 1/m over cards.
pub fn random_baseline(rows: &[CandidateRow]) -> f64 {
    let refs: Vec<&CandidateRow> = rows.iter().collect();
    let cards = group_by_card(&refs);
    if cards.is_empty() {
        return 0.0;
    }
    cards.values().map(|c| 1.0 / c.len() as f64).sum::<f64>() / cards.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(card: &str, id: &str, family: &str, glue: f64, relevant: bool) -> CandidateRow {
        CandidateRow {
            card_id: card.into(),
            candidate_id: id.into(),
            family_id: family.into(),
            variant: 0,
            residuals: [0.1, 0.2, 0.3, 0.4],
            glue,
            con: 0.0,
            lim: 0.0,
            cost: 0.0,
            psi: vec![1.0, 0.0, 2.0],
            relevant,
            move_type: MoveType::Extension,
            required_move: MoveType::Extension,
        }
    }

    #[test]
    fn glue_difference_is_hand_checkable() {
        let cfg = KernelConfig::default();
        let s = Standardizer {
            mean: [0.0; 7],
            std: [1.0; 7],
        };
        let a = s.apply(&row("c", "a", "f", 0.0, false));
        let b = s.apply(&row("c", "b", "f", 1.5, false));
        let psi_self = 5.0 / (5.0 + 1e-9);
        let want = 3.0 + (-1.5f64 * 1.5 / 2.0).exp() + psi_self;
        assert!((kernel(&a, &b, &cfg) - want).abs() < 1e-12);
    }

    #[test]
    fn single_row_coefficient_closed_form() {
        let cfg = KernelConfig::default();
        let r = row("c", "a", "f", 0.3, true);
        let m = fit_scoring_model(&[&r], &cfg).unwrap();
        let k0 = kernel(&m.train[0], &m.train[0], &cfg);
        assert!((m.coefficients[0] - 1.0 / (k0 + cfg.ridge)).abs() < 1e-12);
    }

    #[test]
    fn random_baseline_is_mean_inverse_menu_size() {
        let rows = vec![
            row("a", "x", "f", 0.0, true),
            row("a", "y", "f", 0.0, false),
            row("b", "x", "f", 0.0, true),
            row("b", "y", "f", 0.0, false),
            row("b", "z", "f", 0.0, false),
            row("b", "w", "f", 0.0, false),
        ];
        assert!((random_baseline(&rows) - (0.5 + 0.25) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_config() {
        for cfg in [
            KernelConfig { sigma_glue: 0.0, ..KernelConfig::default() },
            KernelConfig { epsilon: 0.0, ..KernelConfig::default() },
            KernelConfig { alpha_graph: -1.0, ..KernelConfig::default() },
            KernelConfig { ridge: 0.0, ..KernelConfig::default() },
        ] {
            assert!(matches!(cfg.validate(), Err(Error::Config(_))));
        }
    }
}
