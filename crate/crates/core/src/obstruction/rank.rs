//! Per-card signatures, ranking and benchmark metrics.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::terms::{constraint_violation, gluing_residual, limit_penalty};
use super::{obstruction_score, ObstructionSignature, ObstructionWeights};
use crate::card::{graph_features, CandidateView, CardView, MoveType, Role, TransitionCard, TransitionType};
use crate::error::{Error, Result};
use crate::model::{fit, normalization_scale, FittedChart, OptimizerOptions, ResolvedModel, SATURATION};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RankOptions {
    pub optimizer: OptimizerOptions,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateSignature {
    pub candidate_id: String,
    pub move_type: MoveType,
    pub signature: ObstructionSignature,
    /// Global-chart parameters; empty when the candidate was unfittable.
    pub theta_global: Vec<f64>,
}

/// Everything ranking needs from a card; reweighting only rescored these.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CardSignatures {
    pub card_id: String,
    pub scale: f64,
    pub candidates: Vec<CandidateSignature>,
}

fn fit_or_none(model: &ResolvedModel, data: &[crate::card::ObservationRecord], scale: f64, opts: &RankOptions) -> Result<Option<FittedChart>> {
    match fit(model, data, scale, &opts.optimizer) {
        Ok(c) => Ok(Some(c)),
        Err(Error::Unfittable(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn candidate_signature(view: &CardView, cand: &CandidateView, scale: f64, opts: &RankOptions) -> Result<CandidateSignature> {
    let model = ResolvedModel::resolve(cand.model)?;
    let d = view.datasets;
    let psi = graph_features(cand.graph);
    let global_records = d.global_records();

    let global = fit_or_none(&model, &global_records, scale, opts)?;
    let source = fit_or_none(&model, &d.source.records, scale, opts)?;
    let target = fit_or_none(&model, &d.target.records, scale, opts)?;

    let Some(global) = global else {
        return Ok(CandidateSignature {
            candidate_id: cand.id.to_string(),
            move_type: cand.move_type,
            signature: ObstructionSignature {
                r_s: SATURATION,
                r_o: SATURATION,
                r_t: SATURATION,
                r_v: if d.validation.is_empty() { 0.0 } else { SATURATION },
                g_glue: SATURATION,
                c_viol: SATURATION,
                p_limit: SATURATION,
                cost: cand.cost,
                psi,
            },
            theta_global: Vec::new(),
        });
    };
    let g_glue = match (&source, &target) {
        (Some(s), Some(t)) => gluing_residual(view, s, t, scale),
        _ => SATURATION,
    };
    let signature = ObstructionSignature {
        r_s: global.nrmse(&d.source.records, scale),
        r_o: global.nrmse(&d.overlap.records, scale),
        r_t: global.nrmse(&d.target.records, scale),
        r_v: global.nrmse(&d.validation.records, scale),
        g_glue,
        c_viol: constraint_violation(view, &global, scale),
        p_limit: limit_penalty(view, &global, scale)?,
        cost: cand.cost,
        psi,
    };
    Ok(CandidateSignature {
        candidate_id: cand.id.to_string(),
        move_type: cand.move_type,
        signature,
        theta_global: global.theta_hat,
    })
}

/// Fits every candidate and computes its signature.
pub fn score_card(view: &CardView, opts: &RankOptions) -> Result<CardSignatures> {
    let scale = normalization_scale(view.datasets);
    let candidates = view
        .candidates
        .iter()
        .map(|c| candidate_signature(view, c, scale, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(CardSignatures {
        card_id: view.card_id.to_string(),
        scale,
        candidates,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankingRow {
    pub candidate_id: String,
    pub move_type: MoveType,
    pub obs: f64,
    pub signature: ObstructionSignature,
    /// Filled in only once the ranking is labelled.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub role: Option<Role>,
}

/// Candidates in ascending score order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ranking {
    pub card_id: String,
    pub rows: Vec<RankingRow>,
    pub selected_id: String,
}

impl Ranking {
    pub fn position(&self, candidate_id: &str) -> Option<usize> {
        self.rows.iter().position(|r| r.candidate_id == candidate_id)
    }

    pub fn row(&self, candidate_id: &str) -> Option<&RankingRow> {
        self.rows.iter().find(|r| r.candidate_id == candidate_id)
    }
}

/// Sorts by `score` ascending, then cost ascending, then candidate id.
pub fn rank_by<F>(sigs: &CardSignatures, score: F) -> Ranking
where
    F: Fn(&ObstructionSignature) -> f64,
{
    let mut rows: Vec<RankingRow> = sigs
        .candidates
        .iter()
        .map(|c| RankingRow {
            candidate_id: c.candidate_id.clone(),
            move_type: c.move_type,
            obs: score(&c.signature),
            signature: c.signature.clone(),
            role: None,
        })
        .collect();
    rows.sort_by(|a, b| {
        a.obs
            .total_cmp(&b.obs)
            .then(a.signature.cost.total_cmp(&b.signature.cost))
            .then_with(|| a.candidate_id.cmp(&b.candidate_id))
    });
    let selected_id = rows.first().map(|r| r.candidate_id.clone()).unwrap_or_default();
    Ranking {
        card_id: sigs.card_id.clone(),
        rows,
        selected_id,
    }
}

/// Fits, scores and ranks a label-stripped card.
pub fn rank_card(view: &CardView, w: &ObstructionWeights, opts: &RankOptions) -> Result<Ranking> {
    let sigs = score_card(view, opts)?;
    Ok(rank_by(&sigs, |s| obstruction_score(s, w)))
}

/// A ranking joined with the card's evaluation labels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankingResult {
    pub card_id: String,
    pub family_id: String,
    pub transition_type: TransitionType,
    pub rows: Vec<RankingRow>,
    pub selected_id: String,
    pub intended_id: String,
    /// 1-based.
    pub intended_rank: usize,
    /// Obs(best non-intended) − Obs(intended); absent with one candidate.
    pub margin: Option<f64>,
}

impl RankingResult {
    pub fn label(ranking: &Ranking, card: &TransitionCard) -> Result<Self> {
        if ranking.card_id != card.card_id {
            return Err(Error::Input(format!(
                "ranking for `{}` paired with card `{}`",
                ranking.card_id, card.card_id
            )));
        }
        let roles: HashMap<&str, Role> = card.candidates.iter().map(|c| (c.id.as_str(), c.role)).collect();
        let mut rows = ranking.rows.clone();
        for r in &mut rows {
            r.role = Some(*roles.get(r.candidate_id.as_str()).ok_or_else(|| {
                Error::Input(format!("candidate `{}` not on card `{}`", r.candidate_id, card.card_id))
            })?);
        }
        let intended_id = card.evaluation.intended_candidate_id.clone();
        let pos = ranking
            .position(&intended_id)
            .ok_or_else(|| Error::Input(format!("intended `{intended_id}` missing from ranking")))?;
        let intended_obs = rows[pos].obs;
        let margin = rows
            .iter()
            .filter(|r| r.candidate_id != intended_id)
            .map(|r| r.obs)
            .min_by(f64::total_cmp)
            .map(|best| best - intended_obs);
        Ok(Self {
            card_id: card.card_id.clone(),
            family_id: card.family_id.clone(),
            transition_type: card.evaluation.transition_type,
            rows,
            selected_id: ranking.selected_id.clone(),
            intended_id,
            intended_rank: pos + 1,
            margin,
        })
    }

    pub fn selected(&self) -> &RankingRow {
        &self.rows[0]
    }

    pub fn top1(&self) -> bool {
        self.selected_id == self.intended_id
    }

    pub fn type_correct(&self) -> bool {
        self.selected().move_type == self.transition_type.required_move()
    }

    pub fn row(&self, candidate_id: &str) -> Option<&RankingRow> {
        self.rows.iter().find(|r| r.candidate_id == candidate_id)
    }

    /// Lowest-obstruction non-intended row.
    pub fn best_incorrect(&self) -> Option<&RankingRow> {
        self.rows.iter().find(|r| r.candidate_id != self.intended_id)
    }
}

/// Joins rankings to their cards by id. The two sets must match exactly.
pub fn label_rankings(rankings: &[Ranking], cards: &[TransitionCard]) -> Result<Vec<RankingResult>> {
    if rankings.len() != cards.len() {
        return Err(Error::Input(format!("{} rankings for {} cards", rankings.len(), cards.len())));
    }
    let by_id: HashMap<&str, &TransitionCard> = cards.iter().map(|c| (c.card_id.as_str(), c)).collect();
    rankings
        .iter()
        .map(|r| {
            let card = by_id
                .get(r.card_id.as_str())
                .ok_or_else(|| Error::Input(format!("no labels for card `{}`", r.card_id)))?;
            RankingResult::label(r, card)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub n_cards: usize,
    pub top1: f64,
    pub mrr: f64,
    pub type_accuracy: f64,
}

impl Metrics {
    pub fn from_outcomes<I>(outcomes: I) -> Self
    where
        I: IntoIterator<Item = (bool, usize, bool)>,
    {
        let (mut n, mut top1, mut rr, mut ty) = (0usize, 0usize, 0.0, 0usize);
        for (hit, rank, type_ok) in outcomes {
            n += 1;
            top1 += usize::from(hit);
            rr += 1.0 / rank as f64;
            ty += usize::from(type_ok);
        }
        if n == 0 {
            return Self::default();
        }
        let nf = n as f64;
        Self {
            n_cards: n,
            top1: top1 as f64 / nf,
            mrr: rr / nf,
            type_accuracy: ty as f64 / nf,
        }
    }

    /// Mean of several metric records, weighting each equally.
    pub fn mean(items: &[Metrics]) -> Self {
        if items.is_empty() {
            return Self::default();
        }
        let n = items.len() as f64;
        Self {
            n_cards: items.iter().map(|m| m.n_cards).sum::<usize>() / items.len(),
            top1: items.iter().map(|m| m.top1).sum::<f64>() / n,
            mrr: items.iter().map(|m| m.mrr).sum::<f64>() / n,
            type_accuracy: items.iter().map(|m| m.type_accuracy).sum::<f64>() / n,
        }
    }
}

pub fn benchmark_metrics(results: &[RankingResult]) -> Metrics {
    Metrics::from_outcomes(results.iter().map(|r| (r.top1(), r.intended_rank, r.type_correct())))
}

/// Scores every card on up to `jobs` threads (`0` = all cores).
pub fn score_benchmark(cards: &[TransitionCard], opts: &RankOptions, jobs: usize) -> Result<Vec<CardSignatures>> {
    crate::parallel::par_map(cards, jobs, |c| score_card(&c.view(), opts))
        .into_iter()
        .collect()
}

/// Ranks precomputed signatures under `score` and joins them to their cards.
/// `sigs` and `cards` are paired by position.
pub fn evaluate_with<F>(cards: &[TransitionCard], sigs: &[CardSignatures], score: F) -> Result<Vec<RankingResult>>
where
    F: Fn(&ObstructionSignature) -> f64,
{
    if cards.len() != sigs.len() {
        return Err(Error::Input(format!("{} signature sets for {} cards", sigs.len(), cards.len())));
    }
    cards
        .iter()
        .zip(sigs)
        .map(|(c, s)| RankingResult::label(&rank_by(s, &score), c))
        .collect()
}
